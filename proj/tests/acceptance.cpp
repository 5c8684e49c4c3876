// Acceptance harness: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <teichcalc/teichcalc.hpp>

using namespace teich;

namespace {

int g_failures = 0;

void run_criterion(int idx, const std::string& title,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!ok) ++g_failures;
    std::printf("[%s] %2d %-38s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", idx,
                title.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

// --- shared fixtures --------------------------------------------------------

Origami four_square() { return build_origami({1, 2, 3, 0}, {1, 0, 3, 2}); }

TorusQD unit_torus_qd(std::complex<double> tau, double p, double q) {
    TorusPoint x(tau);
    TorusLine v =
        MeasuredFoliation::torus_line(Scalar(p), Scalar(q), Scalar(1)).torus_line_rep();
    TorusLine h = torus_hm_oracle(x, v);
    TorusQD qd(x, v, h);
    const double s = 1.0 / std::sqrt(qd.area.value());
    v.weight = Scalar(v.weight.value() * s);
    h.weight = Scalar(h.weight.value() * s);
    return TorusQD(x, v, h);
}

BasisPtr zero_gram_basis(int d, const std::string& prefix) {
    std::vector<Component> comps;
    std::vector<std::vector<Scalar>> gram(d, std::vector<Scalar>(d, Scalar(0)));
    for (int j = 0; j < d; ++j)
        comps.push_back(Component{prefix + std::to_string(j),
                                  Component::Kind::Annular, ""});
    return ComponentBasis::make(std::move(comps), std::move(gram));
}

// Probe foliation with prescribed crossings against the d record components.
MeasuredFoliation crossing_probe(int d, const std::vector<double>& ix,
                                 const std::string& prefix) {
    std::vector<Component> comps;
    for (int j = 0; j < d; ++j)
        comps.push_back(Component{prefix + std::to_string(j),
                                  Component::Kind::Annular, ""});
    comps.push_back(Component{"probe", Component::Kind::Annular, ""});
    std::vector<std::vector<Scalar>> gram(d + 1, std::vector<Scalar>(d + 1, Scalar(0)));
    for (int j = 0; j < d; ++j) {
        gram[j][d] = Scalar(ix[j]);
        gram[d][j] = Scalar(ix[j]);
    }
    auto basis = ComponentBasis::make(std::move(comps), std::move(gram));
    std::vector<Scalar> coeffs(d + 1, Scalar(0));
    coeffs[d] = Scalar(1);
    return MeasuredFoliation::component_sum(std::move(basis), std::move(coeffs));
}

QDRecord random_record(std::mt19937& rng, int d, const std::string& prefix) {
    std::uniform_real_distribution<double> pos(0.1, 5.0);
    std::vector<Scalar> lam, iota;
    Scalar total(0);
    for (int j = 0; j < d; ++j) {
        lam.push_back(Scalar(pos(rng)));
        iota.push_back(Scalar(pos(rng)));
        total += lam.back() * iota.back();
    }
    return make_qd_record(zero_gram_basis(d, prefix), std::move(lam), std::move(iota),
                          total);
}

double ratio_at(const RatioProgram& p, const std::vector<double>& x) {
    double num = 0, den = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        num += p.a[j] * x[j];
        den += p.b[j] * x[j] * x[j];
    }
    return den > 0 ? num * num / den : 0.0;
}

// Simplex grid search followed by multiplicative pattern refinement.
double grid_search_max(const RatioProgram& p) {
    const int d = (int)p.a.size();
    const int m = 12; // coarse grid divisions
    std::vector<int> comp(d, 0);
    std::vector<double> best_x(d, 1.0);
    double best = ratio_at(p, best_x);
    std::function<void(int, int)> enumerate = [&](int j, int rest) {
        if (j == d - 1) {
            comp[j] = rest;
            std::vector<double> x(d);
            for (int k = 0; k < d; ++k) x[k] = comp[k] / (double)m;
            const double v = ratio_at(p, x);
            if (v > best) {
                best = v;
                best_x = x;
            }
            return;
        }
        for (int c = 0; c <= rest; ++c) {
            comp[j] = c;
            enumerate(j + 1, rest - c);
        }
    };
    enumerate(0, m);
    for (double& v : best_x)
        if (v == 0.0) v = 1e-6; // allow multiplicative moves off the boundary
    for (double delta = 0.5; delta > 1e-10; delta *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int j = 0; j < d; ++j) {
                for (double f : {1.0 + delta, 1.0 / (1.0 + delta)}) {
                    std::vector<double> x = best_x;
                    x[j] *= f;
                    const double v = ratio_at(p, x);
                    if (v > best) {
                        best = v;
                        best_x = x;
                        improved = true;
                    }
                }
            }
        }
    }
    return best;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

// --- criterion bodies -------------------------------------------------------

bool c1_torus_exact(std::string& detail) {
    TorusQD q = unit_torus_qd({0.0, 1.0}, 1, 0);
    QDRecord rec = torus_record(q);
    auto F = MeasuredFoliation::torus_line(Scalar(1), Scalar(1), Scalar(1));
    const double e2 = [&] {
        const double e = eq_eval(rec, F);
        return e * e;
    }();
    double gap5 = 0;
    for (int t = 0; t <= 5; ++t) {
        TorusPoint xt = torus_ray(q, t);
        const double gap = std::exp(-2.0 * t) * torus_ext_length(xt, F) - e2;
        if (t == 5) gap5 = gap;
        if (std::abs(gap - std::exp(-4.0 * t)) > 1e-12) {
            detail = "gap mismatch at t=" + std::to_string(t);
            return false;
        }
    }
    if (gap5 >= 2.1e-9) {
        detail = "gap at t=5 is " + fmt(gap5);
        return false;
    }
    detail = "gap(5)=" + fmt(gap5);
    return true;
}

bool c2_numeric_bracket(std::string& detail) {
    Origami o = four_square();
    // Record of the vertical ray: two vertical cylinders, lambda = heights,
    // iota = circumferences.
    auto basis = zero_gram_basis(2, "v");
    QDRecord rec = make_qd_record(basis, {Scalar(1), Scalar(1)}, {Scalar(2), Scalar(2)},
                                  Scalar(4));
    // Horizontal core class crosses each vertical core twice.
    auto F = crossing_probe(2, {2.0, 2.0}, "v");
    const double e2 = [&] {
        const double e = eq_eval(rec, F);
        return e * e;
    }();
    const double t = 3.0;
    Rectangulation R = geodesic_flow(o, t);
    ExtLenEstimate est = discrete_ext_length(R, CurveClassSpec{true, 0}, 32, 2000,
                                             1e-8, 20);
    const double lo = est.lower.finite_value() * std::exp(-2.0 * t);
    const double hi = est.upper.finite_value() * std::exp(-2.0 * t);
    detail = "E^2=" + fmt(e2) + " bracket [" + fmt(lo) + "," + fmt(hi) + "]";
    const double eps = 1e-9 * std::max(1.0, e2);
    if (!(lo <= e2 + eps && e2 <= hi + eps)) return false;
    return (hi - lo) <= 0.05 * e2 + eps;
}

bool c3_ratio_programs(std::string& detail) {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> coef(0.1, 4.0), pt(0.0, 1.0);
    std::uniform_int_distribution<int> dim(1, 5);
    // Closed form dominates random feasible points.
    long checked = 0;
    while (checked < 10000) {
        const int d = dim(rng);
        RatioProgram p;
        for (int j = 0; j < d; ++j) {
            p.a.push_back(coef(rng));
            p.b.push_back(coef(rng));
        }
        const double vstar = optimise_quadratic_ratio(p).value.finite_value();
        for (int k = 0; k < 100; ++k, ++checked) {
            std::vector<double> x(d);
            for (double& v : x) v = pt(rng);
            if (ratio_at(p, x) > vstar + 1e-9 * std::max(1.0, vstar)) {
                detail = "random point beats the closed form";
                return false;
            }
        }
    }
    // Closed form agrees with grid search + refinement.
    double worst = 0;
    for (int it = 0; it < 100; ++it) {
        const int d = dim(rng);
        RatioProgram p;
        for (int j = 0; j < d; ++j) {
            p.a.push_back(coef(rng));
            p.b.push_back(coef(rng));
        }
        const double vstar = optimise_quadratic_ratio(p).value.finite_value();
        const double searched = grid_search_max(p);
        worst = std::max(worst, std::abs(vstar - searched) / std::max(1.0, vstar));
    }
    detail = "max grid-search deviation " + fmt(worst);
    return worst <= 1e-6;
}

bool c4_flip_duality(std::string& detail) {
    std::mt19937 rng(103);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_real_distribution<double> pos(0.1, 5.0);
    double worst = 0;
    for (int it = 0; it < 1000; ++it) {
        const int d = dim(rng);
        QDRecord rec = random_record(rng, d, "g");
        std::vector<double> ix(d);
        for (double& v : ix) v = pos(rng);
        auto F = crossing_probe(d, ix, "g");
        const double e = eq_eval(rec, F);
        const double f = flip_sup(rec, F).value;
        worst = std::max(worst, std::abs(e * e - f) / std::max(1.0, e * e));
    }
    detail = "max relative deviation " + fmt(worst);
    return worst <= 1e-12;
}

bool c5_finite_time_bound(std::string& detail) {
    std::mt19937 rng(107);
    std::uniform_real_distribution<double> re(-1.5, 1.5), im(0.4, 3.0), tt(0.0, 3.0);
    std::uniform_int_distribution<int> dir(-5, 5);
    std::uniform_real_distribution<double> wt(0.3, 2.0);
    for (int it = 0; it < 100; ++it) {
        int p = dir(rng), qd = dir(rng);
        if (p == 0 && qd == 0) p = 1;
        TorusQD q = unit_torus_qd({re(rng), im(rng)}, p, qd);
        QDRecord rec = torus_record(q);
        int fp = dir(rng), fq = dir(rng);
        if (fp == 0 && fq == 0) fq = 1;
        auto F = MeasuredFoliation::torus_line(Scalar(fp), Scalar(fq), Scalar(wt(rng)));
        const double t = tt(rng);
        const double lhs = std::exp(-2.0 * t) *
                           torus_ext_length(torus_ray(q, t), F);
        const double e = eq_eval(rec, F);
        if (lhs < e * e - 1e-9 * std::max(1.0, e * e)) {
            detail = "torus bound violated";
            return false;
        }
    }
    // Square-tiled: optimal cylinder witness stays below the numeric upper
    // bracket of the transverse core class at every sampled time.
    Origami o = four_square();
    auto vcyl = cylinder_decomposition(o, 0, 1);
    auto hcyl = cylinder_decomposition(o, 1, 0);
    for (double t : {0.0, 0.5, 1.0}) {
        Rectangulation R = geodesic_flow(o, t);
        // Horizontal core class: witness over the vertical cylinders.
        std::vector<double> areas, cross;
        for (const auto& c : vcyl) {
            areas.push_back(c.area.value());
            cross.push_back((double)core_crossings(c, hcyl[0]));
        }
        const double wh = lower_bound_witness_optimal(areas, cross) * std::exp(2.0 * t);
        ExtLenEstimate eh = discrete_ext_length(R, CurveClassSpec{true, 0}, 8, 300,
                                                1e-8, 20);
        if (wh > eh.upper.finite_value() + 1e-9) {
            detail = "horizontal witness exceeds the upper bracket";
            return false;
        }
        // Vertical core class: witness over the horizontal cylinder.
        for (int ci = 0; ci < (int)vcyl.size(); ++ci) {
            std::vector<double> ha{hcyl[0].area.value()};
            std::vector<double> hc{(double)core_crossings(vcyl[ci], hcyl[0])};
            const double wv =
                lower_bound_witness_optimal(ha, hc) * std::exp(-2.0 * t);
            ExtLenEstimate ev = discrete_ext_length(R, CurveClassSpec{false, ci}, 8,
                                                    300, 1e-8, 20);
            if (wv > ev.upper.finite_value() + 1e-9) {
                detail = "vertical witness exceeds the upper bracket";
                return false;
            }
        }
    }
    return true;
}

bool c6_modular_solver(std::string& detail) {
    auto oracle = [](const std::vector<double>& lam) {
        return std::vector<double>{lam[0] + lam[1], lam[0] + 2.0 * lam[1]};
    };
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::mt19937 rng(109);
    std::uniform_real_distribution<double> lg(-2.0, 2.0);
    std::vector<std::vector<double>> sols;
    for (int s = 0; s < 16; ++s) {
        std::vector<double> init{std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng))};
        ModularSolve ms = modular_solve(oracle, {1.0, 1.0}, init, 1e-12, 10000);
        if (!ms.converged || ms.iterations > 10000) {
            detail = "start " + std::to_string(s) + " failed to converge";
            return false;
        }
        if (std::abs(ms.lambda[0] - 1.0 / phi) > 1e-8 ||
            std::abs(ms.lambda[1] - 1.0) > 1e-8) {
            detail = "start " + std::to_string(s) + " off the golden fixed point";
            return false;
        }
        sols.push_back(ms.lambda);
    }
    double spread = 0;
    for (const auto& a : sols)
        for (const auto& b : sols)
            for (int j = 0; j < 2; ++j)
                spread = std::max(spread, std::abs(a[j] - b[j]));
    detail = "projective spread " + fmt(spread);
    return spread < 1e-8;
}

bool c7_detour_metric(std::string& detail) {
    std::mt19937 rng(113);
    std::uniform_int_distribution<int> dim(2, 4);
    std::uniform_real_distribution<double> pos(0.1, 5.0);
    // Zero distance iff modular equivalence, on pairs that include
    // deliberately equivalent rescalings.
    for (int it = 0; it < 500; ++it) {
        const int d = dim(rng);
        QDRecord a = random_record(rng, d, "g");
        QDRecord b;
        if (it % 2 == 0) {
            // Same ratio vector, different areas and a global scale.
            const double c = pos(rng);
            std::vector<Scalar> lam, iota;
            Scalar total(0);
            for (int j = 0; j < d; ++j) {
                iota.push_back(Scalar(pos(rng)));
                lam.push_back(Scalar(c * a.coeffs[j].value() / a.areas[j].value() *
                                     iota.back().value()));
                total += lam.back() * iota.back();
            }
            b = make_qd_record(a.basis, std::move(lam), std::move(iota), total);
        } else {
            b = random_record(rng, d, "g");
        }
        const bool equiv = modular_equivalent(a, b, 1e-9);
        const ExtReal dm = detour_metric(a, b);
        const ExtReal dm_rev = detour_metric(b, a);
        if (dm.is_inf() || dm.finite_value() != dm_rev.finite_value()) {
            detail = "symmetry violated";
            return false;
        }
        if (equiv != (dm.finite_value() <= 1e-9)) {
            detail = "delta = 0 does not match modular equivalence";
            return false;
        }
    }
    // Triangle inequality on same-part triples.
    for (int it = 0; it < 500; ++it) {
        const int d = dim(rng);
        QDRecord a = random_record(rng, d, "g");
        QDRecord b = random_record(rng, d, "g");
        QDRecord c = random_record(rng, d, "g");
        const double ab = detour_metric(a, b).finite_value();
        const double bc = detour_metric(b, c).finite_value();
        const double ac = detour_metric(a, c).finite_value();
        if (ac > ab + bc + 1e-12) {
            detail = "triangle inequality violated by " + fmt(ac - ab - bc);
            return false;
        }
    }
    // Worked value.
    auto basis = zero_gram_basis(2, "g");
    QDRecord q = make_qd_record(basis, {Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)},
                                Scalar(2));
    QDRecord qp = make_qd_record(basis, {Scalar(1), Scalar(2)}, {Scalar(1), Scalar(1)},
                                 Scalar(3));
    const double dm = detour_metric(q, qp).finite_value();
    detail = "worked value " + fmt(dm);
    return std::abs(dm - 0.5 * std::log(2.0)) <= 1e-12;
}

bool c8_optimal_path(std::string& detail) {
    TorusQD q = unit_torus_qd({0.0, 1.0}, 1, 0);
    QDRecord rec = torus_record(q);
    TorusPoint b = q.base;
    double worst = 0;
    for (int t = 1; t <= 5; ++t) {
        const double psi = torus_horofunction(rec, torus_ray(q, t), b, 200);
        worst = std::max(worst, std::abs(psi + t));
    }
    if (worst > 1e-6) {
        detail = "ray horofunction off by " + fmt(worst);
        return false;
    }
    // Uniqueness of the point at distance r with horofunction drop r: every
    // off-ray grid point violates one of the two equalities by a margin.
    const double r = 1.0;
    const TorusPoint on_ray = torus_ray(q, r);
    double min_margin = 1e9;
    for (double a = -0.9; a <= 0.95; a += 0.3) {
        for (double lb = -1.0; lb <= 3.01; lb += 0.4) {
            TorusPoint x(std::complex<double>(a, std::exp(lb)));
            if (std::abs(x.tau - on_ray.tau) < 1e-6) continue;
            const double margin =
                std::max(std::abs(torus_distance(b, x) - r),
                         std::abs(torus_horofunction(rec, x, b, 200) + r));
            min_margin = std::min(min_margin, margin);
        }
    }
    detail = "psi dev " + fmt(worst) + ", grid margin " + fmt(min_margin);
    return min_margin > 1e-6;
}

bool c9_straighten_exhaustive(std::string& detail) {
    Rectangulation R = Rectangulation::from_origami(build_origami({0}, {0}));
    // Boundary surface points with their rectangle preimages.
    struct Pt {
        std::vector<std::pair<double, double>> pre;
    };
    const Pt A{{{0.5, 0.0}, {0.5, 1.0}}};                          // bottom-edge mid
    const Pt B{{{0.0, 0.5}, {1.0, 0.5}}};                          // left-edge mid
    const Pt V{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}};  // the vertex
    long total = 0, nonempty = 0;
    auto run_family = [&](const std::vector<Pt>& alphabet, int m) -> bool {
        const int P = (int)alphabet.size();
        std::vector<int> seq(m, 0);
        for (;;) {
            // Preimage choices: per slot one incoming-end and one outgoing-start.
            std::vector<int> radix(2 * m);
            for (int i = 0; i < m; ++i)
                radix[2 * i] = radix[2 * i + 1] =
                    (int)alphabet[seq[i]].pre.size();
            std::vector<int> digit(2 * m, 0);
            for (;;) {
                ChordCurve c;
                bool degenerate = false;
                for (int i = 0; i < m; ++i) {
                    auto [px, py] = alphabet[seq[i]].pre[digit[2 * i + 1]];
                    const int nx = (i + 1) % m;
                    auto [qx, qy] = alphabet[seq[nx]].pre[digit[2 * nx]];
                    if (geom::near(px, qx) && geom::near(py, qy)) {
                        degenerate = true;
                        break;
                    }
                    c.chords.push_back(Chord{0, px, py, qx, qy});
                }
                if (!degenerate) {
                    ++total;
                    Winding before = winding(R, c);
                    StraightenResult res = straighten(R, c);
                    if (!res.report.all()) {
                        detail = "conditions fail on curve " + std::to_string(total);
                        return false;
                    }
                    if (res.curve.size() > c.size()) {
                        detail = "chord count grew";
                        return false;
                    }
                    if (!(winding(R, res.curve) == before)) {
                        detail = "winding changed on curve " + std::to_string(total);
                        return false;
                    }
                    if (!res.curve.empty()) ++nonempty;
                }
                int k = 0;
                while (k < 2 * m && ++digit[k] == radix[k]) digit[k++] = 0;
                if (k == 2 * m) break;
            }
            int k = 0;
            while (k < m && ++seq[k] == P) seq[k++] = 0;
            if (k == m) break;
        }
        return true;
    };
    for (int m = 1; m <= 6; ++m)
        if (!run_family({A, B}, m)) return false;
    for (int m = 1; m <= 3; ++m)
        if (!run_family({A, B, V}, m)) return false;
    detail = std::to_string(total) + " curves (" + std::to_string(nonempty) +
             " essential)";
    return true;
}

bool c10_iet_first_return(std::string& detail) {
    std::mt19937 rng(127);
    auto random_origami = [&](int n) {
        for (;;) {
            Perm h(n), v(n);
            std::iota(h.begin(), h.end(), 0);
            std::iota(v.begin(), v.end(), 0);
            std::shuffle(h.begin(), h.end(), rng);
            std::shuffle(v.begin(), v.end(), rng);
            try {
                return build_origami(h, v);
            } catch (const InputError&) {
            }
        }
    };
    std::uniform_int_distribution<int> nd(1, 8);
    std::uniform_real_distribution<double> slope(-4.0, 4.0);
    for (int it = 0; it < 100; ++it) {
        Origami o = random_origami(nd(rng));
        FirstReturn fr = first_return(o, Scalar(slope(rng)), Scalar(1));
        if (std::abs(fr.dec.total_area.value() - (double)o.n) > 1e-9) {
            detail = "return decomposition loses area";
            return false;
        }
    }
    // Golden rotation via consecutive Fibonacci lengths: the winner-type runs
    // are the partial quotients (all ones), so induction alternates for at
    // least 50 steps.
    BigInt f1 = 1, f2 = 1;
    for (int k = 2; k <= 52; ++k) {
        BigInt f3 = f1 + f2;
        f1 = f2;
        f2 = f3;
    } // f1 = F_51, f2 = F_52
    IET golden = build_iet({"A", "B"}, {Rational(f1), Rational(f2)}, {0, 1}, {1, 0});
    RauzyOrbit orbit = rauzy_orbit(golden, 50);
    if (orbit.steps != 50) {
        detail = "orbit stopped after " + std::to_string(orbit.steps) + " steps";
        return false;
    }
    // Continued-fraction oracle: subtractive Euclid on the pair.
    Rational lA(f1), lB(f2);
    for (int i = 0; i < 50; ++i) {
        char expect;
        if (lB > lA) {
            lB -= lA;
            expect = 't';
        } else {
            lA -= lB;
            expect = 'b';
        }
        if (orbit.types[(std::size_t)i] != expect) {
            detail = "type mismatch at step " + std::to_string(i);
            return false;
        }
    }
    detail = "100 area checks, 50 oracle-matched steps";
    return true;
}

} // namespace

int main() {
    run_criterion(1, "torus limit identity, exact gap", c1_torus_exact);
    run_criterion(2, "two-cylinder numeric bracket (k=32)", c2_numeric_bracket);
    run_criterion(3, "quadratic ratio programs", c3_ratio_programs);
    run_criterion(4, "flip duality on random records", c4_flip_duality);
    run_criterion(5, "finite-time lower bound", c5_finite_time_bound);
    run_criterion(6, "modular fixed-point solver", c6_modular_solver);
    run_criterion(7, "detour metric axioms and worked value", c7_detour_metric);
    run_criterion(8, "optimal-path and uniqueness", c8_optimal_path);
    run_criterion(9, "exhaustive torus straightening", c9_straighten_exhaustive);
    run_criterion(10, "first-return maps and Rauzy oracle", c10_iet_first_return);
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
