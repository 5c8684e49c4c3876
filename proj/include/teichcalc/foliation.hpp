#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace teich {

// Descriptor of one indecomposable component in a declared basis.
struct Component {
    enum class Kind { Annular, MinimalErgodic };
    std::string id;
    Kind kind = Kind::Annular;
    std::string tag; // optional geometric tag
};

// Declared basis of components with their pairwise intersection numbers.
// Indecomposability and the intersection data are certified by the producer.
class ComponentBasis {
public:
    static std::shared_ptr<const ComponentBasis>
    make(std::vector<Component> components, std::vector<std::vector<Scalar>> gram) {
        auto b = std::shared_ptr<ComponentBasis>(new ComponentBasis);
        b->components_ = std::move(components);
        b->gram_ = std::move(gram);
        const std::size_t n = b->components_.size();
        if (b->gram_.size() != n)
            throw InputError("component basis: gram size mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            if (b->gram_[j].size() != n)
                throw InputError("component basis: gram row size mismatch");
            if (b->gram_[j][j] != Scalar(0))
                throw InputError("component basis: gram diagonal must be zero");
            for (std::size_t k = 0; k < n; ++k) {
                if (b->gram_[j][k] < Scalar(0))
                    throw InputError("component basis: negative intersection number");
                if (b->gram_[j][k] != b->gram_[k][j])
                    throw InputError("component basis: gram must be symmetric");
            }
            for (std::size_t k = j + 1; k < n; ++k)
                if (b->components_[j].id == b->components_[k].id)
                    throw InputError("component basis: duplicate component id");
        }
        return b;
    }

    std::size_t size() const { return components_.size(); }
    const Component& component(std::size_t j) const { return components_[j]; }
    const Scalar& gram(std::size_t j, std::size_t k) const { return gram_[j][k]; }

    std::optional<std::size_t> index_of(const std::string& id) const {
        for (std::size_t j = 0; j < components_.size(); ++j)
            if (components_[j].id == id) return j;
        return std::nullopt;
    }

    // True when every pair in `support` has zero intersection.
    bool mutually_non_intersecting(const std::vector<std::size_t>& support) const {
        for (std::size_t a = 0; a < support.size(); ++a)
            for (std::size_t b = a + 1; b < support.size(); ++b)
                if (gram_[support[a]][support[b]] != Scalar(0)) return false;
        return true;
    }
    bool mutually_non_intersecting() const {
        std::vector<std::size_t> all(size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        return mutually_non_intersecting(all);
    }

private:
    ComponentBasis() = default;
    std::vector<Component> components_;
    std::vector<std::vector<Scalar>> gram_;
};

using BasisPtr = std::shared_ptr<const ComponentBasis>;

// Line foliation on a flat torus: direction up to sign, positive weight.
// Sign normalized so the first nonzero direction entry is positive.
struct TorusLine {
    Scalar dx, dy;
    Scalar weight;
};

// Formal nonnegative combination of basis components, or a torus line
// foliation. Immutable after construction.
class MeasuredFoliation {
public:
    struct ComponentSum {
        BasisPtr basis;
        std::vector<Scalar> coeffs;
    };

    static MeasuredFoliation component_sum(BasisPtr basis, std::vector<Scalar> coeffs,
                                           bool allow_zero = false) {
        if (!basis || coeffs.size() != basis->size())
            throw InputError("component sum: coefficient count mismatch");
        bool any = false;
        for (const auto& c : coeffs) {
            if (c < Scalar(0)) throw InputError("component sum: negative coefficient");
            if (c != Scalar(0)) any = true;
        }
        if (!any && !allow_zero)
            throw InputError("component sum: zero foliation must be constructed explicitly");
        MeasuredFoliation f;
        f.rep_ = ComponentSum{std::move(basis), std::move(coeffs)};
        return f;
    }

    static MeasuredFoliation torus_line(Scalar dx, Scalar dy, Scalar weight) {
        if (!(weight > Scalar(0))) throw InputError("torus line: weight must be positive");
        if (dx == Scalar(0) && dy == Scalar(0))
            throw InputError("torus line: zero direction");
        if (dx < Scalar(0) || (dx == Scalar(0) && dy < Scalar(0))) {
            dx = -dx;
            dy = -dy;
        }
        MeasuredFoliation f;
        f.rep_ = TorusLine{std::move(dx), std::move(dy), std::move(weight)};
        return f;
    }

    static MeasuredFoliation zero(BasisPtr basis) {
        std::vector<Scalar> z(basis->size(), Scalar(0));
        return component_sum(std::move(basis), std::move(z), /*allow_zero=*/true);
    }

    bool is_component_sum() const { return std::holds_alternative<ComponentSum>(rep_); }
    bool is_torus_line() const { return std::holds_alternative<TorusLine>(rep_); }
    const ComponentSum& component_sum_rep() const {
        if (!is_component_sum()) throw RepresentationError("not a component sum");
        return std::get<ComponentSum>(rep_);
    }
    const TorusLine& torus_line_rep() const {
        if (!is_torus_line()) throw RepresentationError("not a torus line");
        return std::get<TorusLine>(rep_);
    }

    bool is_zero() const {
        if (is_torus_line()) return false;
        for (const auto& c : component_sum_rep().coeffs)
            if (c != Scalar(0)) return false;
        return true;
    }

private:
    MeasuredFoliation() = default;
    std::variant<ComponentSum, TorusLine> rep_;
};

// Bilinear symmetric intersection pairing.
inline Scalar intersection(const MeasuredFoliation& F, const MeasuredFoliation& G) {
    if (F.is_torus_line() && G.is_torus_line()) {
        const auto& a = F.torus_line_rep();
        const auto& b = G.torus_line_rep();
        Scalar det = a.dx * b.dy - a.dy * b.dx;
        return a.weight * b.weight * det.abs();
    }
    if (F.is_component_sum() && G.is_component_sum()) {
        const auto& a = F.component_sum_rep();
        const auto& b = G.component_sum_rep();
        if (a.basis != b.basis)
            throw RepresentationError("intersection: mismatched bases");
        Scalar total(0);
        for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
            if (a.coeffs[j] == Scalar(0)) continue;
            for (std::size_t k = 0; k < b.coeffs.size(); ++k) {
                if (b.coeffs[k] == Scalar(0)) continue;
                total += a.coeffs[j] * b.coeffs[k] * a.basis->gram(j, k);
            }
        }
        return total;
    }
    throw RepresentationError("intersection: mixed representations");
}

// Result of testing F << G (F expressible over the positive components of G).
struct Domination {
    bool yes = false;
    std::vector<Scalar> lambda; // per basis component, relative to G's coefficients
    std::string reason;
};

inline Domination dominated_by(const MeasuredFoliation& F, const MeasuredFoliation& G) {
    if (!G.is_component_sum())
        throw InputError("dominated_by: G must be a component sum");
    const auto& g = G.component_sum_rep();
    std::vector<std::size_t> supp;
    for (std::size_t j = 0; j < g.coeffs.size(); ++j)
        if (g.coeffs[j] != Scalar(0)) supp.push_back(j);
    if (!g.basis->mutually_non_intersecting(supp))
        throw InputError("dominated_by: G's support is not mutually non-intersecting");
    if (!F.is_component_sum())
        return {false, {}, "F is not a component sum"};
    const auto& f = F.component_sum_rep();
    if (f.basis != g.basis)
        return {false, {}, "F is over a different basis"};
    Domination d;
    d.lambda.assign(g.coeffs.size(), Scalar(0));
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
        if (f.coeffs[j] == Scalar(0)) continue;
        if (g.coeffs[j] == Scalar(0))
            return {false, {}, "F has a component outside the support of G"};
        d.lambda[j] = f.coeffs[j] / g.coeffs[j];
    }
    d.yes = true;
    return d;
}

inline MeasuredFoliation scale(const MeasuredFoliation& F, const Scalar& c) {
    if (!(c > Scalar(0))) throw InputError("scale: factor must be positive");
    if (F.is_torus_line()) {
        const auto& t = F.torus_line_rep();
        return MeasuredFoliation::torus_line(t.dx, t.dy, t.weight * c);
    }
    auto cs = F.component_sum_rep();
    for (auto& x : cs.coeffs) x *= c;
    return MeasuredFoliation::component_sum(cs.basis, std::move(cs.coeffs),
                                            /*allow_zero=*/F.is_zero());
}

inline MeasuredFoliation add(const MeasuredFoliation& F, const MeasuredFoliation& G) {
    if (F.is_component_sum() && G.is_component_sum()) {
        const auto& a = F.component_sum_rep();
        const auto& b = G.component_sum_rep();
        if (a.basis != b.basis)
            throw RepresentationError("add: mismatched bases");
        std::vector<Scalar> c(a.coeffs.size());
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeffs[j] + b.coeffs[j];
        return MeasuredFoliation::component_sum(a.basis, std::move(c));
    }
    if (F.is_torus_line() && G.is_torus_line()) {
        const auto& a = F.torus_line_rep();
        const auto& b = G.torus_line_rep();
        Scalar det = a.dx * b.dy - a.dy * b.dx;
        if (det != Scalar(0))
            throw RepresentationError("add: nonparallel torus lines do not sum to a line");
        // Parallel: express b's weight in a's direction scale.
        Scalar ratio = (a.dx != Scalar(0)) ? b.dx / a.dx : b.dy / a.dy;
        return MeasuredFoliation::torus_line(a.dx, a.dy, a.weight + b.weight * ratio);
    }
    throw RepresentationError("add: mixed representations");
}

// Finite stand-in for the set of curve classes indexing suprema.
struct ProbeFamily {
    std::string label;
    std::vector<MeasuredFoliation> members;

    void validate() const {
        if (members.empty()) throw InputError("probe family: empty");
        for (const auto& m : members)
            if (m.is_zero()) throw InputError("probe family: zero member");
    }
};

// All primitive integer directions (p,q), |p|,|q| <= N, unit weight, one
// representative per unoriented class.
inline ProbeFamily torus_primitive_probes(int N) {
    if (N < 1) throw InputError("torus probes: N must be >= 1");
    ProbeFamily fam;
    fam.label = "torus-primitive-N" + std::to_string(N);
    auto gcd = [](int a, int b) { return std::gcd(a, b); };
    for (int p = 0; p <= N; ++p) {
        for (int q = -N; q <= N; ++q) {
            if (p == 0 && q != 1) continue;
            if (p > 0 && gcd(p, std::abs(q)) != 1) continue;
            fam.members.push_back(
                MeasuredFoliation::torus_line(Scalar(p), Scalar(q), Scalar(1)));
        }
    }
    return fam;
}

} // namespace teich
