#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "boundary.hpp"
#include "construction.hpp"
#include "iet.hpp"
#include "rectangulation.hpp"

namespace teich {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars: exact rationals as "p/q" strings, inexact values as numbers.

inline Json scalar_to_json(const Scalar& s) {
    if (s.exact()) {
        const Rational& r = s.rat();
        if (denominator(r) == 1) {
            // Small integers as plain numbers for readability.
            if (numerator(r) >= -(BigInt(1) << 53) && numerator(r) <= (BigInt(1) << 53))
                return Json((std::int64_t)numerator(r).convert_to<long long>());
        }
        return Json(numerator(r).str() + "/" + denominator(r).str());
    }
    return Json(s.value());
}

inline Scalar scalar_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Scalar(Rational(BigInt(s)));
        return Scalar(Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1))));
    }
    if (j.is_number_integer()) return Scalar(Rational(j.get<std::int64_t>()));
    if (j.is_number_float()) return Scalar(j.get<double>());
    throw InputError("json: expected a scalar");
}

inline Json rational_to_json(const Rational& r) { return scalar_to_json(Scalar(r)); }
inline Rational rational_from_json(const Json& j) {
    Scalar s = scalar_from_json(j);
    return s.exact() ? s.rat() : Scalar::quantized(s.value()).rat();
}

// Extended reals: finite numbers, or the object {"inf": true}.
inline Json extreal_to_json(const ExtReal& e) {
    if (e.is_inf()) return Json{{"inf", true}};
    return Json(e.finite_value());
}

inline ExtReal extreal_from_json(const Json& j) {
    if (j.is_object()) {
        if (j.value("inf", false)) return ExtReal::infinity();
        throw InputError("json: malformed extended real");
    }
    return ExtReal::finite(j.get<double>());
}

// ---------------------------------------------------------------------------
// origami.v1: square permutations in 0-based one-line notation.

inline Json origami_to_json(const Origami& o) {
    return Json{{"schema", "origami.v1"}, {"n", o.n}, {"h", o.h}, {"v", o.v}};
}

inline Origami origami_from_json(const Json& j) {
    if (j.value("schema", "") != "origami.v1")
        throw InputError("json: expected origami.v1");
    auto h = j.at("h").get<std::vector<int>>();
    auto v = j.at("v").get<std::vector<int>>();
    if ((int)h.size() != j.at("n").get<int>())
        throw InputError("json: origami size mismatch");
    return build_origami(std::move(h), std::move(v));
}

// ---------------------------------------------------------------------------
// foliation.v1: a torus line or a component sum over an inline basis.

inline Json basis_to_json(const ComponentBasis& b) {
    Json comps = Json::array();
    Json gram = Json::array();
    for (std::size_t j = 0; j < b.size(); ++j) {
        const Component& c = b.component(j);
        comps.push_back({{"id", c.id},
                         {"kind", c.kind == Component::Kind::Annular ? "annular"
                                                                     : "minimal"},
                         {"tag", c.tag}});
        Json row = Json::array();
        for (std::size_t k = 0; k < b.size(); ++k)
            row.push_back(scalar_to_json(b.gram(j, k)));
        gram.push_back(row);
    }
    return Json{{"components", comps}, {"gram", gram}};
}

inline BasisPtr basis_from_json(const Json& j) {
    std::vector<Component> comps;
    for (const auto& c : j.at("components")) {
        Component comp;
        comp.id = c.at("id").get<std::string>();
        comp.kind = c.value("kind", "annular") == "minimal"
                        ? Component::Kind::MinimalErgodic
                        : Component::Kind::Annular;
        comp.tag = c.value("tag", "");
        comps.push_back(std::move(comp));
    }
    std::vector<std::vector<Scalar>> gram;
    for (const auto& row : j.at("gram")) {
        std::vector<Scalar> r;
        for (const auto& x : row) r.push_back(scalar_from_json(x));
        gram.push_back(std::move(r));
    }
    return ComponentBasis::make(std::move(comps), std::move(gram));
}

inline Json foliation_to_json(const MeasuredFoliation& F) {
    if (F.is_torus_line()) {
        const auto& t = F.torus_line_rep();
        return Json{{"schema", "foliation.v1"},
                    {"type", "torus_line"},
                    {"dx", scalar_to_json(t.dx)},
                    {"dy", scalar_to_json(t.dy)},
                    {"weight", scalar_to_json(t.weight)}};
    }
    const auto& cs = F.component_sum_rep();
    Json coeffs = Json::array();
    for (const auto& c : cs.coeffs) coeffs.push_back(scalar_to_json(c));
    return Json{{"schema", "foliation.v1"},
                {"type", "component_sum"},
                {"basis", basis_to_json(*cs.basis)},
                {"coeffs", coeffs}};
}

inline MeasuredFoliation foliation_from_json(const Json& j) {
    if (j.value("schema", "") != "foliation.v1")
        throw InputError("json: expected foliation.v1");
    const std::string type = j.at("type").get<std::string>();
    if (type == "torus_line")
        return MeasuredFoliation::torus_line(scalar_from_json(j.at("dx")),
                                             scalar_from_json(j.at("dy")),
                                             scalar_from_json(j.at("weight")));
    if (type == "component_sum") {
        BasisPtr basis = basis_from_json(j.at("basis"));
        std::vector<Scalar> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(scalar_from_json(c));
        return MeasuredFoliation::component_sum(std::move(basis), std::move(coeffs));
    }
    throw InputError("json: unknown foliation type");
}

// ---------------------------------------------------------------------------
// qdrecord.v1.

inline Json qdrecord_to_json(const QDRecord& rec) {
    Json coeffs = Json::array(), areas = Json::array();
    for (const auto& c : rec.coeffs) coeffs.push_back(scalar_to_json(c));
    for (const auto& a : rec.areas) areas.push_back(scalar_to_json(a));
    return Json{{"schema", "qdrecord.v1"},
                {"basis_ref", basis_to_json(*rec.basis)},
                {"coeffs", coeffs},
                {"areas", areas},
                {"total_area", scalar_to_json(rec.total_area)}};
}

inline QDRecord qdrecord_from_json(const Json& j) {
    if (j.value("schema", "") != "qdrecord.v1")
        throw InputError("json: expected qdrecord.v1");
    BasisPtr basis = basis_from_json(j.at("basis_ref"));
    std::vector<Scalar> coeffs, areas;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(scalar_from_json(c));
    for (const auto& a : j.at("areas")) areas.push_back(scalar_from_json(a));
    return make_qd_record(std::move(basis), std::move(coeffs), std::move(areas),
                          scalar_from_json(j.at("total_area")));
}

// ---------------------------------------------------------------------------
// iet.v1: lengths in top order, bottom order as a permutation.

inline Json iet_to_json(const IET& iet) {
    Json lengths = Json::array();
    for (int j : iet.top) lengths.push_back(rational_to_json(iet.lengths[j]));
    Json perm = Json::array();
    // bottom positions of the labels in top order
    for (int lbl : iet.bottom) {
        auto it = std::find(iet.top.begin(), iet.top.end(), lbl);
        perm.push_back((int)(it - iet.top.begin()));
    }
    return Json{{"schema", "iet.v1"}, {"lengths", lengths}, {"perm", perm}};
}

inline IET iet_from_json(const Json& j) {
    if (j.value("schema", "") != "iet.v1") throw InputError("json: expected iet.v1");
    std::vector<Rational> lengths;
    for (const auto& l : j.at("lengths")) lengths.push_back(rational_from_json(l));
    auto perm = j.at("perm").get<std::vector<int>>();
    return iet_from_perm(std::move(lengths), std::move(perm));
}

// ---------------------------------------------------------------------------
// curve.v1: chord curves on a rectangulation.

inline Json curve_to_json(const ChordCurve& c) {
    Json chords = Json::array();
    for (const Chord& ch : c.chords)
        chords.push_back({{"rect", ch.rect},
                          {"p", {ch.px, ch.py}},
                          {"q", {ch.qx, ch.qy}}});
    return Json{{"schema", "curve.v1"}, {"chords", chords}};
}

inline ChordCurve curve_from_json(const Json& j) {
    if (j.value("schema", "") != "curve.v1") throw InputError("json: expected curve.v1");
    ChordCurve c;
    for (const auto& ch : j.at("chords")) {
        Chord chord;
        chord.rect = ch.at("rect").get<int>();
        chord.px = ch.at("p").at(0).get<double>();
        chord.py = ch.at("p").at(1).get<double>();
        chord.qx = ch.at("q").at(0).get<double>();
        chord.qy = ch.at("q").at(1).get<double>();
        c.chords.push_back(chord);
    }
    return c;
}

// ---------------------------------------------------------------------------
// rectangulation.v1: exported weighted rectangles.

inline Json weighted_rectangulation_to_json(const WeightedRectangulation& wr) {
    Json rects = Json::array();
    for (const auto& r : wr.rects)
        rects.push_back(
            {{"w", r.w}, {"h", r.h}, {"weight", r.weight}, {"note", r.note}});
    return Json{{"schema", "rectangulation.v1"},
                {"rects", rects},
                {"theta_area", wr.theta_area},
                {"eps", wr.eps},
                {"delta", wr.delta},
                {"eps_constant", wr.eps_constant},
                {"delta_constant", wr.delta_constant},
                {"critical_length", wr.critical_length}};
}

// ---------------------------------------------------------------------------
// FNV-1a 64-bit content digests for run manifests.

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(const std::string& data) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace teich
