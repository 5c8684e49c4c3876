#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "origami.hpp"

namespace teich {

// Interval exchange transformation with labelled intervals: exact rational
// lengths indexed by label, plus the top and bottom orders of the labels.
struct IET {
    std::vector<std::string> labels;
    std::vector<Rational> lengths; // by label index, all positive
    std::vector<int> top, bottom;  // permutations of {0, ..., d-1}

    int d() const { return (int)labels.size(); }
    Rational total_length() const {
        Rational s = 0;
        for (const auto& l : lengths) s += l;
        return s;
    }
};

inline IET build_iet(std::vector<std::string> labels, std::vector<Rational> lengths,
                     std::vector<int> top, std::vector<int> bottom) {
    const std::size_t d = labels.size();
    if (d == 0) throw InputError("iet: empty");
    if (lengths.size() != d || top.size() != d || bottom.size() != d)
        throw InputError("iet: size mismatch");
    for (const auto& l : lengths)
        if (l <= 0) throw InputError("iet: lengths must be positive");
    auto is_perm = [&](const std::vector<int>& p) {
        std::vector<char> seen(d, 0);
        for (int x : p) {
            if (x < 0 || x >= (int)d || seen[x]) return false;
            seen[x] = 1;
        }
        return true;
    };
    if (!is_perm(top) || !is_perm(bottom))
        throw InputError("iet: top/bottom must order all labels");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("iet: duplicate label");
    IET iet;
    iet.labels = std::move(labels);
    iet.lengths = std::move(lengths);
    iet.top = std::move(top);
    iet.bottom = std::move(bottom);
    return iet;
}

// Serialized form: lengths in top order (identity), bottom order = perm.
inline IET iet_from_perm(std::vector<Rational> lengths, std::vector<int> perm) {
    const std::size_t d = lengths.size();
    std::vector<std::string> labels(d);
    std::vector<int> top(d);
    for (std::size_t j = 0; j < d; ++j) {
        labels[j] = "i" + std::to_string(j);
        top[j] = (int)j;
    }
    return build_iet(std::move(labels), std::move(lengths), std::move(top),
                     std::move(perm));
}

// Saddle-connection witness: the right endpoints of the last top and bottom
// intervals coincide with equal lengths, so induction cannot continue.
struct ConnectionCertificate {
    std::string top_label, bottom_label;
    Rational length;
};

struct RauzyStep {
    bool connection = false;
    ConnectionCertificate cert; // valid when connection
    char type = 0;              // 't' top winner, 'b' bottom winner
    std::string winner, loser;
    IET next; // valid when !connection
};

inline RauzyStep rauzy_step(const IET& iet) {
    if (iet.d() < 2) throw InputError("rauzy: need at least two intervals");
    const int at = iet.top.back(), ab = iet.bottom.back();
    if (at == ab) throw InputError("rauzy: irreducible data required");
    RauzyStep st;
    if (iet.lengths[at] == iet.lengths[ab]) {
        st.connection = true;
        st.cert = {iet.labels[at], iet.labels[ab], iet.lengths[at]};
        return st;
    }
    st.next = iet;
    if (iet.lengths[at] > iet.lengths[ab]) {
        st.type = 't';
        st.winner = iet.labels[at];
        st.loser = iet.labels[ab];
        st.next.lengths[at] -= iet.lengths[ab];
        // Move the bottom loser to just after the winner in the bottom order.
        auto& b = st.next.bottom;
        b.pop_back();
        auto pos = std::find(b.begin(), b.end(), at);
        b.insert(pos + 1, ab);
    } else {
        st.type = 'b';
        st.winner = iet.labels[ab];
        st.loser = iet.labels[at];
        st.next.lengths[ab] -= iet.lengths[at];
        auto& t = st.next.top;
        t.pop_back();
        auto pos = std::find(t.begin(), t.end(), ab);
        t.insert(pos + 1, at);
    }
    return st;
}

struct RauzyOrbit {
    std::vector<char> types; // winner types per step taken
    std::optional<ConnectionCertificate> connection;
    IET final_iet;
    long steps = 0;
};

inline RauzyOrbit rauzy_orbit(IET iet, long max_steps) {
    RauzyOrbit orbit;
    orbit.final_iet = iet;
    for (long k = 0; k < max_steps; ++k) {
        RauzyStep st = rauzy_step(orbit.final_iet);
        if (st.connection) {
            orbit.connection = st.cert;
            return orbit;
        }
        orbit.types.push_back(st.type);
        orbit.final_iet = std::move(st.next);
        ++orbit.steps;
    }
    return orbit;
}

// ---------------------------------------------------------------------------
// First-return map of the directional flow on the union of all bottom edges
// of a square-tiled surface.

struct ReturnRectangle {
    int source_square = 0;
    int piece = 0; // 0: left of the break, 1: right of the break
    Scalar base{0};
    Scalar height{1}; // vertical extent of one return
    int target_square = 0;
    Scalar target_offset{0}; // image interval starts here in the target edge
};

struct ReturnDecomposition {
    std::vector<ReturnRectangle> rects;
    Scalar total_area{0};
};

struct FirstReturn {
    IET iet;
    ReturnDecomposition dec;
};

// Direction (dx, dy) with dy > 0; the flow leaves the bottom edge of square s
// at offset x and lands at offset frac(x + a), a = dx/dy, on the bottom edge
// of v(h^m(s)) with m = floor(x + a).
inline FirstReturn first_return(const Origami& o, const Scalar& dx, const Scalar& dy) {
    if (!(dy > Scalar(0)))
        throw InputError("first return: transversal is not transverse to the flow");
    // Exact rational slope: quantize inexact input at the pinned resolution.
    Scalar slope = dx / dy;
    Rational alpha = slope.exact() ? slope.rat() : Scalar::quantized(slope.value()).rat();
    BigInt K = numerator(alpha) >= 0 ? numerator(alpha) / denominator(alpha)
                                     : -((-numerator(alpha) + denominator(alpha) - 1) /
                                         denominator(alpha));
    Rational beta = alpha - Rational(K); // in [0, 1)

    auto hpow = [&](int s, BigInt k) {
        if (k >= 0)
            for (BigInt i = 0; i < k; ++i) s = o.h[s];
        else
            for (BigInt i = 0; i < -k; ++i) s = o.hinv[s];
        return s;
    };

    FirstReturn fr;
    std::vector<std::string> labels;
    std::vector<Rational> lengths;
    std::vector<int> top;
    // (target square, starts at 0) -> label index, for the bottom order.
    std::vector<std::pair<int, int>> landing(0);
    for (int s = 0; s < o.n; ++s) {
        if (beta == 0) {
            int t = o.v[hpow(s, K)];
            labels.push_back("sq" + std::to_string(s));
            lengths.push_back(1);
            top.push_back((int)top.size());
            landing.push_back({t, 0});
            fr.dec.rects.push_back({s, 0, Scalar(1), Scalar(1), t, Scalar(0)});
        } else {
            int t0 = o.v[hpow(s, K)];
            int t1 = o.v[hpow(s, K + 1)];
            labels.push_back("sq" + std::to_string(s) + "a");
            lengths.push_back(1 - beta);
            top.push_back((int)top.size());
            landing.push_back({t0, 1}); // image is [beta, 1) in t0
            fr.dec.rects.push_back({s, 0, Scalar(1 - beta), Scalar(1), t0, Scalar(beta)});
            labels.push_back("sq" + std::to_string(s) + "b");
            lengths.push_back(beta);
            top.push_back((int)top.size());
            landing.push_back({t1, 0}); // image is [0, beta) in t1
            fr.dec.rects.push_back({s, 1, Scalar(beta), Scalar(1), t1, Scalar(0)});
        }
    }
    std::vector<int> bottom(top.size());
    for (std::size_t j = 0; j < bottom.size(); ++j) bottom[j] = (int)j;
    std::stable_sort(bottom.begin(), bottom.end(), [&](int a, int b) {
        return landing[a] < landing[b];
    });
    fr.iet = build_iet(std::move(labels), std::move(lengths), std::move(top),
                       std::move(bottom));
    for (const auto& r : fr.dec.rects) fr.dec.total_area += r.base * r.height;
    return fr;
}

// ---------------------------------------------------------------------------
// Classification of a direction on a square-tiled surface.

enum class DirectionClass { periodic, minimal_certified, inconclusive };

// Rational slopes are periodic (cylinder decompositions). For irrational
// slopes, run Rauzy induction on the first-return map: a connection stops the
// induction (inconclusive); an orbit in which every label wins repeatedly is
// reported as minimal (heuristic truncation of Keane's criterion).
inline DirectionClass classify_direction(const Origami& o, const Scalar& dx,
                                         const Scalar& dy, long budget = 2000) {
    if (dy == Scalar(0)) return DirectionClass::periodic;
    Scalar slope = dx / dy;
    if (slope.exact()) return DirectionClass::periodic;
    // Inexact slope: treat the quantized rational as standing for an
    // irrational direction and probe the induction.
    FirstReturn fr = first_return(o, dx, dy);
    if (fr.iet.d() < 2) return DirectionClass::periodic;
    IET cur = fr.iet;
    std::vector<long> wins(cur.d(), 0);
    long complete_rounds = 0;
    std::vector<char> won(cur.d(), 0);
    for (long k = 0; k < budget; ++k) {
        RauzyStep st = rauzy_step(cur);
        // A connection in the quantized data ends the induction; what was
        // certified up to that point still counts.
        if (st.connection) break;
        for (int j = 0; j < cur.d(); ++j)
            if (cur.labels[j] == st.winner) {
                ++wins[j];
                won[j] = 1;
            }
        if (std::all_of(won.begin(), won.end(), [](char c) { return c != 0; })) {
            ++complete_rounds;
            std::fill(won.begin(), won.end(), 0);
        }
        cur = std::move(st.next);
    }
    return complete_rounds >= 2 ? DirectionClass::minimal_certified
                                : DirectionClass::inconclusive;
}

} // namespace teich
