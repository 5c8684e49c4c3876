#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extended_real.hpp"
#include "optimise.hpp"
#include "torus.hpp"

namespace teich {

// Limit record of a Teichmueller ray: the indecomposable components G_j of
// the vertical foliation with their coefficients lambda_j and the areas
// iota_j = i(G_j, H(q)) they carry.
struct QDRecord {
    BasisPtr basis;
    std::vector<Scalar> coeffs; // lambda_j, nonnegative
    std::vector<Scalar> areas;  // iota_j, positive on the support
    Scalar total_area{0};       // sum lambda_j iota_j
    std::vector<std::optional<TorusLine>> torus_reps; // optional geometric reps

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (coeffs[j] != Scalar(0)) s.push_back(j);
        return s;
    }
};

inline QDRecord make_qd_record(BasisPtr basis, std::vector<Scalar> coeffs,
                               std::vector<Scalar> areas, Scalar total_area,
                               double tol = 1e-9) {
    if (!basis || coeffs.size() != basis->size() || areas.size() != basis->size())
        throw InputError("qd record: size mismatch");
    QDRecord rec;
    rec.basis = std::move(basis);
    rec.coeffs = std::move(coeffs);
    rec.areas = std::move(areas);
    rec.total_area = total_area;
    rec.torus_reps.assign(rec.coeffs.size(), std::nullopt);
    Scalar sum(0);
    bool any = false;
    for (std::size_t j = 0; j < rec.coeffs.size(); ++j) {
        if (rec.coeffs[j] < Scalar(0))
            throw InputError("qd record: negative coefficient");
        if (rec.coeffs[j] != Scalar(0)) {
            any = true;
            if (!(rec.areas[j] > Scalar(0)))
                throw InputError("qd record: supported component needs positive area");
            sum += rec.coeffs[j] * rec.areas[j];
        }
    }
    if (!any) throw InputError("qd record: empty support");
    if (!rec.basis->mutually_non_intersecting(rec.support()))
        throw InputError("qd record: support components must not intersect");
    if (std::abs(sum.value() - rec.total_area.value()) >
        tol * std::max(1.0, std::abs(rec.total_area.value())))
        throw InputError("qd record: total area inconsistent with coefficients");
    return rec;
}

// Record of a flat torus differential: one annular component.
inline QDRecord torus_record(const TorusQD& q) {
    auto basis = ComponentBasis::make(
        {Component{"v", Component::Kind::Annular, "torus-line"}}, {{Scalar(0)}});
    auto unit = MeasuredFoliation::torus_line(q.vertical.dx, q.vertical.dy, Scalar(1))
                    .torus_line_rep();
    Scalar det = q.vertical.dx * q.horizontal.dy - q.vertical.dy * q.horizontal.dx;
    Scalar iota = q.horizontal.weight * det.abs();
    QDRecord rec = make_qd_record(basis, {q.vertical.weight}, {iota},
                                  q.vertical.weight * iota);
    rec.torus_reps[0] = unit;
    return rec;
}

namespace detail {

// i(G_j, F) for every component of the record. F may live over a richer
// basis; components are matched by id, and torus-line probes use the
// geometric representatives when present.
inline std::vector<double> record_crossings(const QDRecord& rec,
                                            const MeasuredFoliation& F) {
    std::vector<double> out(rec.coeffs.size(), 0.0);
    if (F.is_torus_line()) {
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (!rec.torus_reps[j])
                throw RepresentationError(
                    "record crossings: torus probe against a record without "
                    "geometric representatives");
            auto G = MeasuredFoliation::torus_line(rec.torus_reps[j]->dx,
                                                   rec.torus_reps[j]->dy,
                                                   rec.torus_reps[j]->weight);
            out[j] = intersection(G, F).value();
        }
        return out;
    }
    const auto& f = F.component_sum_rep();
    for (std::size_t j = 0; j < out.size(); ++j) {
        auto idx = f.basis->index_of(rec.basis->component(j).id);
        if (!idx)
            throw RepresentationError(
                "record crossings: record component missing from probe basis");
        Scalar s(0);
        for (std::size_t k = 0; k < f.coeffs.size(); ++k)
            s += f.coeffs[k] * f.basis->gram(*idx, k);
        out[j] = s.value();
    }
    return out;
}

} // namespace detail

// Limiting normalized extremal length along the ray of the record:
// E_q(F) = sqrt( sum_j lambda_j i(G_j, F)^2 / iota_j ).
inline double eq_eval(const QDRecord& rec, const MeasuredFoliation& F) {
    const auto ix = detail::record_crossings(rec, F);
    double s = 0;
    for (std::size_t j = 0; j < ix.size(); ++j) {
        if (rec.coeffs[j] == Scalar(0)) continue;
        s += rec.coeffs[j].value() * ix[j] * ix[j] / rec.areas[j].value();
    }
    return std::sqrt(s);
}

// Dual functional: for F = sum c_j G_j supported inside the record,
// E*_q[F] = sum c_j^2 iota_j / lambda_j; +infinity when F is not dominated.
inline ExtReal dual_eval(const QDRecord& rec, const MeasuredFoliation& F) {
    if (!F.is_component_sum()) return ExtReal::infinity();
    const auto& f = F.component_sum_rep();
    double s = 0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        if (f.coeffs[k] == Scalar(0)) continue;
        auto j = rec.basis->index_of(f.basis->component(k).id);
        if (!j || rec.coeffs[*j] == Scalar(0)) return ExtReal::infinity();
        const double c = f.coeffs[k].value();
        s += c * c * rec.areas[*j].value() / rec.coeffs[*j].value();
    }
    return ExtReal::finite(s);
}

// E_q(F)^2 as a supremum over dominated probes:
// sup_{F'} i(F, F')^2 / E*_q[F'], attained at F' with d_j = lambda_j i_j / iota_j.
struct FlipResult {
    double value = 0;               // the supremum, equal to eq_eval(rec, F)^2
    std::vector<double> optimal_d;  // coefficients of the attaining F'
};

inline FlipResult flip_sup(const QDRecord& rec, const MeasuredFoliation& F) {
    const auto ix = detail::record_crossings(rec, F);
    RatioProgram prog;
    FlipResult res;
    res.optimal_d.assign(ix.size(), 0.0);
    for (std::size_t j = 0; j < ix.size(); ++j) {
        if (rec.coeffs[j] == Scalar(0)) continue;
        const double lam = rec.coeffs[j].value(), io = rec.areas[j].value();
        prog.a.push_back(ix[j]);
        prog.b.push_back(io / lam);
        res.optimal_d[j] = lam * ix[j] / io;
    }
    res.value = optimise_quadratic_ratio(prog).value.finite_value();
    return res;
}

// Horofunction value at x relative to the basepoint b, over a finite probe
// family: (1/2) log sup_F E_q(F)^2 / Ext_x(F) - (1/2) log sup_F E_q^2 / Ext_b.
inline double horofunction_eval(const QDRecord& rec, const ProbeFamily& probes,
                                const std::function<double(const MeasuredFoliation&)>& ext_x,
                                const std::function<double(const MeasuredFoliation&)>& ext_b) {
    probes.validate();
    double sx = 0, sb = 0;
    for (const auto& F : probes.members) {
        const double e = eq_eval(rec, F);
        const double ex = ext_x(F), eb = ext_b(F);
        if (ex <= 0 || eb <= 0)
            throw InputError("horofunction: nonpositive extremal length");
        sx = std::max(sx, e * e / ex);
        sb = std::max(sb, e * e / eb);
    }
    if (sx <= 0 || sb <= 0)
        throw InputError("horofunction: probe family misses the record support");
    return 0.5 * std::log(sx) - 0.5 * std::log(sb);
}

inline double torus_horofunction(const QDRecord& rec, const TorusPoint& x,
                                 const TorusPoint& b, int probe_cap) {
    ProbeFamily probes = torus_primitive_probes(probe_cap);
    return horofunction_eval(
        rec, probes, [&](const MeasuredFoliation& F) { return torus_ext_length(x, F); },
        [&](const MeasuredFoliation& F) { return torus_ext_length(b, F); });
}

// ---------------------------------------------------------------------------
// Canonical boundary coordinates and the modular equivalence.

// Ratio vector r_j = lambda_j / iota_j on the support, scaled so max = 1.
struct BoundaryPoint {
    BasisPtr basis;
    std::vector<double> ratios; // zero off the support
};

inline BoundaryPoint canonical_boundary_point(const QDRecord& rec) {
    BoundaryPoint bp;
    bp.basis = rec.basis;
    bp.ratios.assign(rec.coeffs.size(), 0.0);
    double mx = 0;
    for (std::size_t j = 0; j < rec.coeffs.size(); ++j) {
        if (rec.coeffs[j] == Scalar(0)) continue;
        bp.ratios[j] = rec.coeffs[j].value() / rec.areas[j].value();
        mx = std::max(mx, bp.ratios[j]);
    }
    for (double& r : bp.ratios) r /= mx;
    return bp;
}

inline bool modular_equivalent(const QDRecord& a, const QDRecord& b,
                               double tol = 1e-9) {
    if (a.basis->size() != b.basis->size()) return false;
    BoundaryPoint pa = canonical_boundary_point(a);
    BoundaryPoint pb = canonical_boundary_point(b);
    for (std::size_t j = 0; j < pa.ratios.size(); ++j) {
        if (a.basis->component(j).id != b.basis->component(j).id) return false;
        if (std::abs(pa.ratios[j] - pb.ratios[j]) > tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Modular fixed point: find lambda with lambda_j proportional to
// r_j * iota_j(lambda), where the area oracle reports iota(lambda).

struct ModularSolve {
    std::vector<double> lambda;
    double residual = 0;
    long iterations = 0;
    bool converged = false;
};

inline ModularSolve
modular_solve(const std::function<std::vector<double>(const std::vector<double>&)>& area_oracle,
              const std::vector<double>& ratios, std::vector<double> lambda0,
              double tol = 1e-10, long budget = 100000) {
    if (ratios.size() != lambda0.size() || ratios.empty())
        throw InputError("modular solve: size mismatch");
    for (double r : ratios)
        if (r <= 0) throw InputError("modular solve: ratios must be positive");
    auto normalize = [](std::vector<double>& v) {
        double mx = 0;
        for (double x : v) mx = std::max(mx, std::abs(x));
        if (mx <= 0) throw InputError("modular solve: degenerate iterate");
        for (double& x : v) x /= mx;
    };
    std::vector<double> lam = std::move(lambda0);
    normalize(lam);
    ModularSolve out;
    std::vector<double> residuals;
    double prev_res = std::numeric_limits<double>::infinity();
    for (long it = 1; it <= budget; ++it) {
        out.iterations = it;
        std::vector<double> iota = area_oracle(lam);
        if (iota.size() != lam.size())
            throw InputError("modular solve: oracle size mismatch");
        std::vector<double> next(lam.size());
        for (std::size_t j = 0; j < lam.size(); ++j) {
            if (iota[j] <= 0)
                throw InputError("modular solve: oracle reported nonpositive area");
            next[j] = ratios[j] * iota[j];
        }
        normalize(next);
        double res = 0;
        for (std::size_t j = 0; j < lam.size(); ++j)
            res = std::max(res, std::abs(next[j] - lam[j]));
        if (res > prev_res) // oscillation: damp the step
            for (std::size_t j = 0; j < lam.size(); ++j)
                next[j] = 0.5 * (next[j] + lam[j]);
        residuals.push_back(res);
        prev_res = res;
        lam = std::move(next);
        if (res < tol) {
            out.converged = true;
            break;
        }
    }
    out.lambda = lam;
    out.residual = prev_res;
    if (!out.converged)
        throw NonconvergenceError("modular solve: budget exhausted", residuals);
    return out;
}

// ---------------------------------------------------------------------------
// Detour quantities between limit records.

struct SupRatio {
    ExtReal value;
    int argmax = -1; // lowest attaining index (finite case)
};

// sup over dominated F of E_q'(F)^2 / E_q(F)^2 = max_j (lambda_j iota'_j) /
// (lambda'_j iota_j) over the common support, or +infinity when the support
// of q is not contained in the support of q'.
inline SupRatio sup_ratio(const QDRecord& q, const QDRecord& qp, double tol = 0.0) {
    SupRatio out;
    if (q.basis->size() != qp.basis->size()) {
        out.value = ExtReal::infinity();
        return out;
    }
    double best = -1;
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
        if (q.basis->component(j).id != qp.basis->component(j).id) {
            out.value = ExtReal::infinity();
            return out;
        }
        if (q.coeffs[j] == Scalar(0)) continue; // excluded probes with i = 0
        if (qp.coeffs[j] == Scalar(0)) {
            out.value = ExtReal::infinity();
            out.argmax = -1;
            return out;
        }
        const double v = q.coeffs[j].value() * qp.areas[j].value() /
                         (qp.coeffs[j].value() * q.areas[j].value());
        if (v > best + tol) {
            best = v;
            out.argmax = (int)j;
        }
    }
    if (best < 0) {
        out.value = ExtReal::infinity();
        return out;
    }
    out.value = ExtReal::finite(best);
    return out;
}

// Detour cost H(E_q -> E_q') = (1/2) log sup_ratio(q, q'); the probe-based
// three-term form is torus_detour_cost_probed below.
inline ExtReal detour_cost(const QDRecord& q, const QDRecord& qp) {
    SupRatio sr = sup_ratio(q, qp);
    if (sr.value.is_inf()) return ExtReal::infinity();
    return ExtReal::finite(0.5 * std::log(sr.value.finite_value()));
}

// (1/2) log sup_F E_q'^2/Ext_b + (1/2) log sup_{F << q'} E_q^2/E_q'^2
//   - (1/2) log sup_F E_q^2/Ext_b, evaluated over a finite probe family.
inline ExtReal detour_cost_probed(const QDRecord& q, const QDRecord& qp,
                                  const ProbeFamily& probes,
                                  const std::function<double(const MeasuredFoliation&)>& ext_b) {
    probes.validate();
    double sp = 0, sq = 0;
    for (const auto& F : probes.members) {
        const double eb = ext_b(F);
        if (eb <= 0) throw InputError("detour cost: nonpositive extremal length");
        const double ep = eq_eval(qp, F), e = eq_eval(q, F);
        sp = std::max(sp, ep * ep / eb);
        sq = std::max(sq, e * e / eb);
    }
    SupRatio sr = sup_ratio(q, qp);
    if (sr.value.is_inf()) return ExtReal::infinity();
    if (sp <= 0 || sq <= 0)
        throw InputError("detour cost: probe family misses the records");
    return ExtReal::finite(0.5 * std::log(sp) + 0.5 * std::log(sr.value.finite_value()) -
                           0.5 * std::log(sq));
}

// Symmetrized detour metric; +infinity unless both records share their support.
inline ExtReal detour_metric(const QDRecord& a, const QDRecord& b) {
    ExtReal ab = detour_cost(a, b);
    ExtReal ba = detour_cost(b, a);
    if (ab.is_inf() || ba.is_inf()) return ExtReal::infinity();
    return ExtReal::finite(ab.finite_value() + ba.finite_value());
}

// Two boundary points lie in the same part exactly when their detour metric
// is finite, i.e. the records have equal support over matching bases.
inline bool same_part(const QDRecord& a, const QDRecord& b) {
    return !detour_metric(a, b).is_inf();
}

// ---------------------------------------------------------------------------
// Busemann-point verification along a declared ray: the horofunction value at
// R(q;t) must be -t (up to tolerance) for every sampled time.

struct SequenceData {
    std::vector<double> t;
    std::vector<double> psi;
};

struct BusemannCheck {
    bool ok = false;
    double max_dev = 0;
};

inline BusemannCheck busemann_limit_check(const SequenceData& seq, double tol = 1e-9) {
    if (seq.t.size() != seq.psi.size() || seq.t.empty())
        throw InputError("busemann check: size mismatch");
    BusemannCheck out;
    for (std::size_t i = 0; i < seq.t.size(); ++i)
        out.max_dev = std::max(out.max_dev, std::abs(seq.psi[i] + seq.t[i]));
    out.ok = out.max_dev <= tol;
    return out;
}

} // namespace teich
