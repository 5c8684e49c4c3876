#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "iet.hpp"
#include "origami.hpp"

namespace teich {

// Output of the weighted-rectangulation construction: a list of weighted
// rectangles together with the certified area budget
//   A(rho) <= theta_area + eps_constant * eps + delta_constant * delta.
struct WeightedRectangulation {
    struct WRect {
        double w = 0, h = 0, weight = 0;
        std::string note;
    };
    std::vector<WRect> rects;
    double theta_area = 0;      // sum theta_j^2 a_j
    double eps = 0, delta = 0;  // the parameters used
    double eps_constant = 0;    // reported O(eps) constant
    double delta_constant = 0;  // reported O(delta) constant
    double critical_length = 0; // total length of the critical graph
};

namespace detail {

// Total length of the critical graph (union of saddle connections) in a
// primitive direction (p, q), p > 0 or (p, q) = (0, 1): trace the separatrix
// from every singular square-corner germ until it hits a singular vertex.
inline double critical_graph_length(const Origami& o, int p, int q) {
    auto singular = [&](int s) {
        int rep = o.vertex_orbit[s], m = 0;
        for (int t = 0; t < o.n; ++t)
            if (o.vertex_orbit[t] == rep) ++m;
        return m > 1;
    };
    if (p == 0) {
        // Vertical separatrices: from a singular bottom-left corner of s the
        // leaf reaches the bottom-left corner of v(s) after length 1.
        double total = 0;
        for (int s = 0; s < o.n; ++s) {
            if (!singular(s)) continue;
            int t = o.v[s];
            double len = 1;
            while (!singular(t)) {
                t = o.v[t];
                len += 1;
            }
            total += len;
        }
        return total;
    }
    // One unit of flow in direction (p, q)/p from the bottom-left corner of s
    // lands on the bottom-left corner of another square (the separatrix
    // climbs q/p per square and closes on the lattice after p squares).
    auto hop = [&](int s) {
        int j = 0;
        for (int step = 0; step < p; ++step) {
            int k = (j + q) / p;
            for (int i = 0; i < k; ++i) s = o.v[s];
            s = o.h[s];
            j = (j + q) % p;
        }
        return s;
    };
    const double unit = std::sqrt((double)p * p + (double)q * q);
    double total = 0;
    for (int s = 0; s < o.n; ++s) {
        if (!singular(s)) continue;
        int t = hop(s);
        double len = unit;
        while (!singular(t)) {
            t = hop(t);
            len += unit;
        }
        total += len;
    }
    return total;
}

} // namespace detail

// Periodic direction: one rectangle per cylinder (cut along a leaf) with
// weight theta_j, plus an eps-collar of width eps^2 and weight 1/eps along
// the critical graph.
inline WeightedRectangulation weighted_rectangulation_periodic(
    const Origami& o, int p, int q, const std::vector<double>& theta, double eps) {
    if (eps <= 0 || eps >= 1)
        throw InputError("weighted rectangulation: eps must be in (0,1)");
    auto cyls = cylinder_decomposition(o, p, q);
    if (theta.size() != cyls.size())
        throw InputError("weighted rectangulation: one weight per cylinder required");
    WeightedRectangulation out;
    out.eps = eps;
    double theta_max = 0;
    for (std::size_t j = 0; j < cyls.size(); ++j) {
        if (theta[j] < 0)
            throw InputError("weighted rectangulation: negative weight");
        theta_max = std::max(theta_max, theta[j]);
        out.rects.push_back({cyls[j].circumference, cyls[j].height, theta[j],
                             cyls[j].core_id});
        out.theta_area += theta[j] * theta[j] * cyls[j].area.value();
    }
    // Collar: rectangles of width eps^2, weight 1/eps, along each saddle
    // connection; their squared-weight area is eps * L, and the cross term
    // with the cylinder weights is at most 2 * theta_max * eps * L.
    int pn = p, qn = q;
    if (pn < 0 || (pn == 0 && qn < 0)) {
        pn = -pn;
        qn = -qn;
    }
    const Origami* base = &o;
    Origami flipped;
    if (qn < 0) {
        flipped = build_origami(o.h, o.vinv);
        base = &flipped;
        qn = -qn;
    }
    const double L = detail::critical_graph_length(*base, pn, qn);
    out.critical_length = L;
    if (L > 0)
        out.rects.push_back({eps * eps, L, 1.0 / eps, "collar"});
    out.eps_constant = L * (1.0 + 2.0 * theta_max);
    out.delta_constant = 0.0;
    return out;
}

// Minimal direction presented by its first-return data with a single declared
// ergodic class (Lebesgue): every return rectangle carries the same weight,
// the subdivision is trivial and the delta term vanishes.
inline WeightedRectangulation weighted_rectangulation_minimal(
    const Origami& o, const Scalar& dx, const Scalar& dy, double theta,
    int ergodic_classes = 1) {
    if (ergodic_classes != 1)
        throw InputError(
            "weighted rectangulation: only a single declared ergodic class is supported");
    if (theta < 0) throw InputError("weighted rectangulation: negative weight");
    FirstReturn fr = first_return(o, dx, dy);
    WeightedRectangulation out;
    for (const auto& r : fr.dec.rects) {
        out.rects.push_back({r.base.value(), r.height.value(), theta,
                             "return sq" + std::to_string(r.source_square) + "." +
                                 std::to_string(r.piece)});
        out.theta_area += theta * theta * (r.base * r.height).value();
    }
    out.delta_constant = 0.0;
    out.eps_constant = 0.0;
    return out;
}

} // namespace teich
