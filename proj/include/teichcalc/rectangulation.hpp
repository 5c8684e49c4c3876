#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "origami.hpp"

namespace teich {

// Rectangulation of grid type: the n unit squares of an origami, carried
// along the geodesic flow (widths e^t, heights e^{-t}) with optional
// per-rectangle weights. Gluings are the full-edge translations given by the
// h/v permutations, which is the only gluing pattern the straightening
// algorithm supports; Construction-style rectangulations with sub-segment
// gluings are exported separately (see construction.hpp).
struct Rectangulation {
    Origami o;
    double t = 0.0;
    std::vector<double> weights; // conformal weight per rectangle

    static Rectangulation from_origami(const Origami& o) {
        Rectangulation R;
        R.o = o;
        R.weights.assign(o.n, 1.0);
        return R;
    }

    double width() const { return std::exp(t); }   // X_k, equal for all k
    double height() const { return std::exp(-t); } // Y_k

    // Exact under the flow: e^t * e^{-t} = 1 per square.
    Scalar area() const { return Scalar(o.n); }
};

inline Rectangulation geodesic_flow(const Rectangulation& R, double t) {
    Rectangulation out = R;
    out.t += t;
    return out;
}

inline Rectangulation geodesic_flow(const Origami& o, double t) {
    return geodesic_flow(Rectangulation::from_origami(o), t);
}

// ---------------------------------------------------------------------------
// Surface points and chord curves.

namespace geom {
inline constexpr double kTol = 1e-9;
inline bool near(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }
} // namespace geom

// Canonical form of a point of the surface given in rectangle coordinates.
// Corner points collapse to their vertex orbit; edge points use the
// left/bottom representative.
struct SurfacePoint {
    bool is_vertex = false;
    int vertex = -1; // orbit id when is_vertex
    int rect = -1;
    double x = 0, y = 0;

    friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
        if (a.is_vertex != b.is_vertex) return false;
        if (a.is_vertex) return a.vertex == b.vertex;
        return a.rect == b.rect && geom::near(a.x, b.x) && geom::near(a.y, b.y);
    }
};

inline SurfacePoint canonical_point(const Rectangulation& R, int rect, double x, double y) {
    const double W = R.width(), H = R.height();
    if (rect < 0 || rect >= R.o.n || x < -geom::kTol || x > W + geom::kTol ||
        y < -geom::kTol || y > H + geom::kTol)
        throw InputError("canonical point: coordinates outside rectangle");
    const bool on_right = geom::near(x, W), on_left = geom::near(x, 0.0);
    const bool on_top = geom::near(y, H), on_bottom = geom::near(y, 0.0);
    if ((on_left || on_right) && (on_top || on_bottom)) {
        SurfacePoint p;
        p.is_vertex = true;
        p.vertex = corner_vertex(R.o, rect, on_right ? 1 : 0, on_top ? 1 : 0);
        return p;
    }
    SurfacePoint p;
    p.rect = rect;
    p.x = x;
    p.y = y;
    if (on_right) {
        p.rect = R.o.h[p.rect];
        p.x = 0.0;
    }
    if (on_top) {
        p.rect = R.o.v[p.rect];
        p.y = 0.0;
    }
    return p;
}

// One straight chord [p, q] inside rectangle `rect`, endpoints on the boundary.
struct Chord {
    int rect = 0;
    double px = 0, py = 0, qx = 0, qy = 0;

    double h_extent() const { return std::abs(qx - px); } // integral of dV
    double v_extent() const { return std::abs(qy - py); } // integral of dH
    double length() const { return std::hypot(qx - px, qy - py); }
    bool horizontal() const { return geom::near(qy, py); }
    Chord reversed() const { return Chord{rect, qx, qy, px, py}; }
};

// Closed curve given as a cyclic sequence of chords; condition (i) requires
// consecutive endpoints to be glued.
struct ChordCurve {
    std::vector<Chord> chords;
    bool empty() const { return chords.empty(); }
    std::size_t size() const { return chords.size(); }
};

inline bool on_boundary(const Rectangulation& R, double x, double y) {
    return geom::near(x, 0.0) || geom::near(x, R.width()) || geom::near(y, 0.0) ||
           geom::near(y, R.height());
}

inline bool check_condition_i(const Rectangulation& R, const ChordCurve& c) {
    if (c.empty()) return true;
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Chord& a = c.chords[i];
        const Chord& b = c.chords[(i + 1) % m];
        if (!on_boundary(R, a.px, a.py) || !on_boundary(R, a.qx, a.qy)) return false;
        if (!(canonical_point(R, a.rect, a.qx, a.qy) ==
              canonical_point(R, b.rect, b.px, b.py)))
            return false;
    }
    return true;
}

// Vertical sign of the chord at its endpoints: +1 ascending, -1 descending,
// 0 horizontal.
inline int v_sign(const Chord& c) {
    if (c.horizontal()) return 0;
    return c.qy > c.py ? 1 : -1;
}

// Transversality of the concatenation at the junction after chord i.
// Junctions at singular vertices pass through several leaves and count as
// transverse.
inline bool junction_transverse(const Rectangulation& R, const Chord& a, const Chord& b) {
    if (a.horizontal() || b.horizontal()) return true;
    SurfacePoint j = canonical_point(R, a.rect, a.qx, a.qy);
    if (j.is_vertex) {
        int m = 0;
        for (int s = 0; s < R.o.n; ++s)
            if (R.o.vertex_orbit[s] == j.vertex) ++m;
        if (m > 1) return true;
    }
    return v_sign(a) == v_sign(b);
}

inline bool check_condition_ii(const Rectangulation& R, const ChordCurve& c) {
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i)
        if (!junction_transverse(R, c.chords[i], c.chords[(i + 1) % m])) return false;
    return true;
}

// Both endpoints of the chord in the same horizontal edge of its rectangle.
inline bool in_same_horizontal_edge(const Rectangulation& R, const Chord& c) {
    const double H = R.height();
    return (geom::near(c.py, 0.0) && geom::near(c.qy, 0.0)) ||
           (geom::near(c.py, H) && geom::near(c.qy, H));
}

inline bool is_corner(const Rectangulation& R, double x, double y) {
    return (geom::near(x, 0.0) || geom::near(x, R.width())) &&
           (geom::near(y, 0.0) || geom::near(y, R.height()));
}

inline bool check_condition_iii(const Rectangulation& R, const ChordCurve& c) {
    for (const Chord& ch : c.chords)
        if (in_same_horizontal_edge(R, ch) &&
            (!is_corner(R, ch.px, ch.py) || !is_corner(R, ch.qx, ch.qy)))
            return false;
    return true;
}

// Minimal flat distance between boundary pairs mapping to distinct corner
// points; when the rectangulation has a single corner point the minimum is
// taken over pairs of distinct corner preimages instead (interpretation
// recorded in the docs). For grid rectangulations both give min(W, H).
inline double corner_gap(const Rectangulation& R) {
    return std::min(R.width(), R.height());
}

inline bool check_condition_iv(const Rectangulation& R, const ChordCurve& c) {
    const std::size_t m = c.size();
    const double l = corner_gap(R);
    for (std::size_t i = 0; i < m; ++i) {
        if (c.chords[i].length() >= l - geom::kTol) continue;
        const Chord& prev = c.chords[(i + m - 1) % m];
        const Chord& next = c.chords[(i + 1) % m];
        if (!prev.horizontal() && !next.horizontal()) return false;
    }
    return true;
}

struct ConditionReport {
    bool i = false, ii = false, iii = false, iv = false;
    bool all() const { return i && ii && iii && iv; }
};

inline ConditionReport check_conditions(const Rectangulation& R, const ChordCurve& c) {
    return {check_condition_i(R, c), check_condition_ii(R, c), check_condition_iii(R, c),
            check_condition_iv(R, c)};
}

// Integral of dV along the curve (total horizontal variation).
inline double total_dV(const ChordCurve& c) {
    double s = 0;
    for (const Chord& ch : c.chords) s += ch.h_extent();
    return s;
}

// Integral of rho dH along the curve (weighted total vertical variation).
inline double total_rho_dH(const Rectangulation& R, const ChordCurve& c) {
    double s = 0;
    for (const Chord& ch : c.chords) s += R.weights[ch.rect] * ch.v_extent();
    return s;
}

// ---------------------------------------------------------------------------
// Winding numbers: signed crossings with the vertical and horizontal edge
// systems. On the torus this determines the homotopy class of the closed
// curve, which makes it a complete straightening witness there; on larger
// origamis it is a homology-level witness only.
struct Winding {
    long right = 0; // crossings of vertical edges, rightward positive
    long up = 0;    // crossings of horizontal edges, upward positive
    friend bool operator==(const Winding&, const Winding&) = default;
};

inline Winding winding(const Rectangulation& R, const ChordCurve& c) {
    Winding w;
    const double W = R.width(), H = R.height();
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Chord& a = c.chords[i];
        const Chord& b = c.chords[(i + 1) % m];
        const bool aR = geom::near(a.qx, W), aL = geom::near(a.qx, 0.0);
        const bool aT = geom::near(a.qy, H), aB = geom::near(a.qy, 0.0);
        const bool bR = geom::near(b.px, W), bL = geom::near(b.px, 0.0);
        const bool bT = geom::near(b.py, H), bB = geom::near(b.py, 0.0);
        if (a.rect == b.rect && geom::near(a.qx, b.px) && geom::near(a.qy, b.py))
            continue; // bounce or subdivision point: no crossing
        int dh = 0, dv = 0;
        if (aR && bL) dh = 1;
        else if (aL && bR) dh = -1;
        if (aT && bB) dv = 1;
        else if (aB && bT) dv = -1;
        if (dh == 0 && dv == 0)
            throw InputError("winding: junction uses an unsupported corner gluing");
        // Validate the combinatorial gluing.
        int s = a.rect;
        if (dh == 1) s = R.o.h[s];
        if (dh == -1) s = R.o.hinv[s];
        if (dv == 1) s = R.o.v[s];
        if (dv == -1) s = R.o.vinv[s];
        SurfacePoint pa = canonical_point(R, a.rect, a.qx, a.qy);
        if (s != b.rect && !pa.is_vertex)
            throw InputError("winding: junction gluing inconsistent");
        w.right += dh;
        w.up += dv;
    }
    return w;
}

// Geometric intersection number of two torus classes given by windings.
inline long winding_intersection(const Winding& a, const Winding& b) {
    return std::labs(a.right * b.up - a.up * b.right);
}

// ---------------------------------------------------------------------------
// Upper bound for i(a(mu), beta): count of atoms whose chord meets each short
// straight arc (Sum_j mu[F~_{r^{-1}(beta_j)}]).

namespace geom {
inline double orient(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

inline bool segments_intersect(double ax, double ay, double bx, double by, double cx,
                               double cy, double dx, double dy) {
    auto sgn = [](double v) { return v > kTol ? 1 : (v < -kTol ? -1 : 0); };
    int o1 = sgn(orient(ax, ay, bx, by, cx, cy));
    int o2 = sgn(orient(ax, ay, bx, by, dx, dy));
    int o3 = sgn(orient(cx, cy, dx, dy, ax, ay));
    int o4 = sgn(orient(cx, cy, dx, dy, bx, by));
    if (o1 != o2 && o3 != o4 && o1 && o2 && o3 && o4) return true;
    auto on_seg = [&](double px, double py, double qx, double qy, double rx, double ry) {
        return sgn(orient(px, py, qx, qy, rx, ry)) == 0 &&
               rx >= std::min(px, qx) - kTol && rx <= std::max(px, qx) + kTol &&
               ry >= std::min(py, qy) - kTol && ry <= std::max(py, qy) + kTol;
    };
    return on_seg(ax, ay, bx, by, cx, cy) || on_seg(ax, ay, bx, by, dx, dy) ||
           on_seg(cx, cy, dx, dy, ax, ay) || on_seg(cx, cy, dx, dy, bx, by);
}
} // namespace geom

inline long chord_intersection_bound(const Rectangulation& R, const ChordCurve& c,
                                     const std::vector<Chord>& arcs) {
    const double W = R.width(), H = R.height();
    long bound = 0;
    for (const Chord& arc : arcs) {
        if (arc.rect < 0 || arc.rect >= R.o.n || arc.px < -geom::kTol ||
            arc.px > W + geom::kTol || arc.qx < -geom::kTol || arc.qx > W + geom::kTol ||
            arc.py < -geom::kTol || arc.py > H + geom::kTol || arc.qy < -geom::kTol ||
            arc.qy > H + geom::kTol)
            throw InputError("chord intersection bound: arc is not short");
        for (const Chord& atom : c.chords) {
            if (atom.rect != arc.rect) continue;
            if (geom::segments_intersect(atom.px, atom.py, atom.qx, atom.qy, arc.px,
                                         arc.py, arc.qx, arc.qy))
                ++bound;
        }
    }
    return bound;
}

} // namespace teich
