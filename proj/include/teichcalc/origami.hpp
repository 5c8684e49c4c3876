#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace teich {

using Perm = std::vector<int>; // 0-based one-line notation

inline bool is_permutation(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= (int)p.size() || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

inline Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (int i = 0; i < (int)p.size(); ++i) q[p[i]] = i;
    return q;
}

// Square-tiled surface: n unit squares, h(s) the square to the right of s,
// v(s) the square above s.
struct Origami {
    int n = 0;
    Perm h, v;
    Perm hinv, vinv;
    // Cone angles 2*pi*m, one entry per vertex orbit (m = 1 is a regular point).
    std::vector<int> vertex_orbit_sizes;
    Perm vertex_orbit; // bottom-left corner of square s -> orbit representative

    bool torus() const {
        return std::all_of(vertex_orbit_sizes.begin(), vertex_orbit_sizes.end(),
                           [](int m) { return m == 1; });
    }
    std::vector<int> singularity_census() const {
        std::vector<int> sing;
        for (int m : vertex_orbit_sizes)
            if (m > 1) sing.push_back(m);
        std::sort(sing.begin(), sing.end());
        return sing;
    }
};

inline Origami build_origami(Perm h, Perm v) {
    if (h.size() != v.size() || h.empty())
        throw InputError("origami: permutations must be nonempty and of equal length");
    if (!is_permutation(h) || !is_permutation(v))
        throw InputError("origami: h and v must be permutations");
    Origami o;
    o.n = (int)h.size();
    o.h = std::move(h);
    o.v = std::move(v);
    o.hinv = inverse(o.h);
    o.vinv = inverse(o.v);

    // Connectivity: <h, v> acts transitively.
    std::vector<char> seen(o.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int t : {o.h[s], o.v[s], o.hinv[s], o.vinv[s]}) {
            if (!seen[t]) {
                seen[t] = 1;
                ++count;
                stack.push_back(t);
            }
        }
    }
    if (count != o.n) throw InputError("origami: disconnected surface");

    // Full counterclockwise turn around the bottom-left vertex of square s.
    auto sigma = [&](int s) { return o.v[o.h[o.vinv[o.hinv[s]]]]; };
    o.vertex_orbit.assign(o.n, -1);
    for (int s = 0; s < o.n; ++s) {
        if (o.vertex_orbit[s] != -1) continue;
        int m = 0, t = s;
        do {
            o.vertex_orbit[t] = s;
            t = sigma(t);
            ++m;
        } while (t != s);
        o.vertex_orbit_sizes.push_back(m);
    }
    return o;
}

// Vertex orbit id of a corner of square s; dx, dy in {0, 1} pick the corner.
inline int corner_vertex(const Origami& o, int s, int dx, int dy) {
    int t = s;
    if (dx) t = o.h[t];
    if (dy) t = o.v[t];
    return o.vertex_orbit[t];
}

// Maximal flat cylinder in a primitive rational direction.
struct Cylinder {
    std::string core_id;
    double circumference = 0; // flat length of the core
    double height = 0;        // transverse width
    Scalar area{0};           // exact: circumference * height
    double weight = 1.0;      // transverse measure carried by the core
    std::vector<int> squares; // squares met by the cylinder (sorted, unique)
    int strips = 0;           // parallel closed-leaf strips merged
    int cycle_len = 0;        // cells per closed leaf
};

namespace detail {

// Decomposition for direction (p, q) with p > 0, q >= 0, gcd(p, q) = 1.
// Cells are (square, j), j in [0, p): the strip of the left edge between
// heights j/p and (j+1)/p. A cell advances one square to the right per step.
inline std::vector<Cylinder> cylinders_first_quadrant(const Origami& o, int p, int q) {
    const int cells = o.n * p;
    auto id = [&](int s, int j) { return s * p + j; };
    auto step = [&](int s, int j) {
        int k = (j + q) / p;
        int t = s;
        for (int i = 0; i < k; ++i) t = o.v[t];
        return std::pair<int, int>(o.h[t], (j + q) % p);
    };

    // Separatrices from each vertex cut the left edges at heights (kq mod p)/p.
    std::set<std::pair<int, int>> cuts; // (square, j): boundary below cell (s, j)
    for (int s0 = 0; s0 < o.n; ++s0) {
        int s = s0, j = 0;
        for (int k = 1; k < p; ++k) {
            auto [s2, j2] = step(s, j);
            s = s2;
            j = j2;
            cuts.insert({s, j});
        }
    }

    // Union of vertically adjacent cells not separated by a cut.
    std::vector<int> parent(cells);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int s = 0; s < o.n; ++s)
        for (int j = 0; j + 1 < p; ++j)
            if (!cuts.count({s, j + 1}))
                parent[find(id(s, j))] = find(id(s, j + 1));
    // Cells along one closed leaf belong to the same cylinder.
    for (int s = 0; s < o.n; ++s)
        for (int j = 0; j < p; ++j) {
            auto [s2, j2] = step(s, j);
            parent[find(id(s, j))] = find(id(s2, j2));
        }

    // Cycles of the return map; all cycles in one class have equal length.
    std::vector<int> cyclen(cells, 0);
    std::vector<char> done(cells, 0);
    for (int c = 0; c < cells; ++c) {
        if (done[c]) continue;
        std::vector<int> orbit;
        int s = c / p, j = c % p;
        do {
            orbit.push_back(id(s, j));
            done[id(s, j)] = 1;
            auto [s2, j2] = step(s, j);
            s = s2;
            j = j2;
        } while (id(s, j) != c);
        for (int x : orbit) cyclen[x] = (int)orbit.size();
    }

    std::map<int, std::vector<int>> classes;
    for (int c = 0; c < cells; ++c) classes[find(c)].push_back(c);

    const double norm = std::sqrt(double(p) * p + double(q) * q);
    std::vector<Cylinder> out;
    for (auto& [root, members] : classes) {
        Cylinder cyl;
        cyl.cycle_len = cyclen[members.front()];
        cyl.strips = (int)members.size() / cyl.cycle_len;
        cyl.circumference = cyl.cycle_len * norm / p;
        cyl.height = cyl.strips / norm;
        cyl.area = Scalar(Rational(BigInt(cyl.cycle_len) * cyl.strips, BigInt(p)));
        std::set<int> sq;
        for (int c : members) sq.insert(c / p);
        cyl.squares.assign(sq.begin(), sq.end());
        out.push_back(std::move(cyl));
    }
    std::sort(out.begin(), out.end(), [](const Cylinder& a, const Cylinder& b) {
        return a.squares < b.squares;
    });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].core_id = "cyl(" + std::to_string(p) + "," + std::to_string(q) + ")-" +
                         std::to_string(i);
    return out;
}

} // namespace detail

inline std::vector<Cylinder> cylinder_decomposition(const Origami& o, int p, int q) {
    if (p == 0 && q == 0) throw InputError("cylinder decomposition: zero direction");
    if (std::gcd(std::abs(p), std::abs(q)) != 1)
        throw InputError("cylinder decomposition: direction must be primitive");
    if (p < 0 || (p == 0 && q < 0)) {
        p = -p;
        q = -q;
    }
    if (p == 0) {
        // Vertical cylinders: orbits of v.
        std::vector<Cylinder> out;
        std::vector<char> seen(o.n, 0);
        for (int s = 0; s < o.n; ++s) {
            if (seen[s]) continue;
            Cylinder cyl;
            int t = s;
            do {
                cyl.squares.push_back(t);
                seen[t] = 1;
                t = o.v[t];
            } while (t != s);
            std::sort(cyl.squares.begin(), cyl.squares.end());
            cyl.cycle_len = (int)cyl.squares.size();
            cyl.strips = 1;
            cyl.circumference = cyl.cycle_len;
            cyl.height = 1.0;
            cyl.area = Scalar(cyl.cycle_len);
            out.push_back(std::move(cyl));
        }
        std::sort(out.begin(), out.end(), [](const Cylinder& a, const Cylinder& b) {
            return a.squares < b.squares;
        });
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i].core_id = "cyl(0,1)-" + std::to_string(i);
        return out;
    }
    if (q < 0) {
        // Reflect vertically: direction (p, -q) on (h, v) matches (p, q) on (h, v^{-1}).
        Origami flip = build_origami(o.h, o.vinv);
        return detail::cylinders_first_quadrant(flip, p, -q);
    }
    return detail::cylinders_first_quadrant(o, p, q);
}

// Crossing number of the cores of a vertical and a horizontal cylinder: one
// crossing per shared unit square.
inline int core_crossings(const Cylinder& vertical, const Cylinder& horizontal) {
    std::vector<int> common;
    std::set_intersection(vertical.squares.begin(), vertical.squares.end(),
                          horizontal.squares.begin(), horizontal.squares.end(),
                          std::back_inserter(common));
    return (int)common.size();
}

} // namespace teich
