// teichcalc: command-line calculator for flat-surface extremal length
// asymptotics, limit records, and the detour calculus between them.
//
// Exit codes: 0 success, 2 malformed input, 3 nonconvergence.

#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include <teichcalc/teichcalc.hpp>

namespace {

using teich::Json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw teich::InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json load_json(const std::string& path, Json& manifest_inputs) {
    const std::string raw = read_file(path);
    manifest_inputs[path] = teich::fnv1a64_hex(raw);
    try {
        return Json::parse(raw);
    } catch (const std::exception& e) {
        throw teich::InputError("malformed json in " + path + ": " + e.what());
    }
}

struct Output {
    bool csv = false;
    long seed = 0;
    std::string command;
    Json inputs = Json::object();

    void flatten(const Json& j, const std::string& prefix,
                 std::vector<std::pair<std::string, std::string>>& cells) const {
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it)
                flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                        cells);
        } else if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i)
                flatten(j[i], prefix + "[" + std::to_string(i) + "]", cells);
        } else {
            cells.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
        }
    }

    void emit(Json result) const {
        Json manifest{{"command", command},
                      {"inputs", inputs},
                      {"seed", seed},
                      {"tool", "teichcalc"},
                      {"format", csv ? "csv" : "json"}};
        manifest["digest"] = teich::fnv1a64_hex(result.dump());
        if (csv) {
            std::vector<std::pair<std::string, std::string>> cells;
            flatten(result, "", cells);
            std::string header, row;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                header += (i ? "," : "") + cells[i].first;
                row += (i ? "," : "") + cells[i].second;
            }
            std::cout << header << "\n" << row << "\n";
            std::cerr << "manifest: " << manifest.dump() << "\n";
        } else {
            result["manifest"] = manifest;
            std::cout << result.dump(2) << "\n";
        }
    }
};

// Unit-area torus differential with vertical direction (p, q) at modulus tau.
teich::TorusQD torus_qd_direction(std::complex<double> tau, double p, double q) {
    teich::TorusPoint x(tau);
    auto V = teich::MeasuredFoliation::torus_line(teich::Scalar(p), teich::Scalar(q),
                                                  teich::Scalar(1));
    teich::TorusLine H = teich::torus_hm_oracle(x, V.torus_line_rep());
    teich::TorusQD qd(x, V.torus_line_rep(), H);
    const double s = 1.0 / std::sqrt(qd.area.value());
    teich::TorusLine vs = qd.vertical, hs = qd.horizontal;
    vs.weight = vs.weight * teich::Scalar(s);
    hs.weight = hs.weight * teich::Scalar(s);
    return teich::TorusQD(x, vs, hs);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal length asymptotics and boundary calculus"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    Output out;
    int probes = 20;
    int grid = 16;
    double tol = 1e-9;
    app.add_flag("--csv", out.csv, "CSV output (header + one row, LF endings)");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "JSON output (default)");
    app.add_option("--probes", probes, "probe family cap");
    app.add_option("--grid", grid, "grid refinement k");
    app.add_option("--tol", tol, "tolerance");
    app.add_option("--seed", out.seed, "seed recorded in the run manifest");

    // --- verify-thm1 ------------------------------------------------------
    auto* thm1 = app.add_subcommand(
        "verify-thm1", "check e^{-2t} Ext_{R(q;t)}(F) against the limit form");
    std::vector<double> tau_opt{0.0, 1.0};
    std::vector<double> dir_opt{0.0, 1.0};
    double tmax = 6.0;
    int samples = 4;
    thm1->add_option("--tau", tau_opt, "modulus re,im")->expected(2);
    thm1->add_option("--dir", dir_opt, "vertical direction p,q")->expected(2);
    thm1->add_option("--tmax", tmax, "largest ray time");
    thm1->add_option("--samples", samples, "ray times sampled");

    // --- extlen -----------------------------------------------------------
    auto* extlen = app.add_subcommand(
        "extlen", "two-sided extremal length of a cylinder core on an origami");
    std::string origami_path;
    bool vertical_class = false;
    int cyl_index = 0;
    double flow_t = 0.0;
    long budget = 10000;
    extlen->add_option("--origami", origami_path, "origami.v1 json file")->required();
    extlen->add_flag("--vertical", vertical_class, "vertical core (default horizontal)");
    extlen->add_option("--cyl", cyl_index, "cylinder index");
    extlen->add_option("--t", flow_t, "geodesic flow time");
    extlen->add_option("--budget", budget, "reweighting budget");

    // --- distance ---------------------------------------------------------
    auto* dist = app.add_subcommand("distance", "Teichmueller distance of two tori");
    std::vector<double> tau1{0.0, 1.0}, tau2{0.0, 2.0};
    dist->add_option("--tau1", tau1, "first modulus re,im")->expected(2);
    dist->add_option("--tau2", tau2, "second modulus re,im")->expected(2);

    // --- eq-eval ----------------------------------------------------------
    auto* eqe = app.add_subcommand("eq-eval", "limit functional E_q(F) of a record");
    std::string record_path, foliation_path;
    eqe->add_option("--record", record_path, "qdrecord.v1 json file")->required();
    eqe->add_option("--foliation", foliation_path, "foliation.v1 json file")->required();

    // --- detour -----------------------------------------------------------
    auto* det = app.add_subcommand("detour", "detour cost and metric of two records");
    std::string rec1_path, rec2_path;
    det->add_option("--record1", rec1_path, "qdrecord.v1 json file")->required();
    det->add_option("--record2", rec2_path, "qdrecord.v1 json file")->required();

    // --- modular-solve ----------------------------------------------------
    auto* msolve = app.add_subcommand(
        "modular-solve", "fixed point lambda_j ~ r_j iota_j(lambda) of a linear oracle");
    std::vector<double> matrix{1, 1, 1, 2};
    std::vector<double> ratios{1, 1};
    std::vector<double> init{1, 1};
    long msteps = 100000;
    msolve->add_option("--matrix", matrix, "row-major area oracle matrix")
        ->expected(-1);
    msolve->add_option("--ratios", ratios, "target ratios r_j")->expected(-1);
    msolve->add_option("--init", init, "initial lambda")->expected(-1);
    msolve->add_option("--budget", msteps, "iteration budget");

    // --- part-check -------------------------------------------------------
    auto* part = app.add_subcommand("part-check",
                                    "same detour-metric part / modular equivalence");
    part->add_option("--record1", rec1_path, "qdrecord.v1 json file")->required();
    part->add_option("--record2", rec2_path, "qdrecord.v1 json file")->required();

    // --- busemann-check ---------------------------------------------------
    auto* buse = app.add_subcommand(
        "busemann-check", "verify psi_q(R(q;t)) = -t along a torus ray");
    buse->add_option("--tau", tau_opt, "modulus re,im")->expected(2);
    buse->add_option("--dir", dir_opt, "vertical direction p,q")->expected(2);
    buse->add_option("--tmax", tmax, "largest ray time");
    buse->add_option("--samples", samples, "ray times sampled");

    // --- iet --------------------------------------------------------------
    auto* ietc = app.add_subcommand(
        "iet", "first-return interval exchange and Rauzy induction");
    std::string iet_path;
    std::vector<double> flow_dir{1.0, 1.0};
    long steps = 50;
    ietc->add_option("--origami", origami_path, "origami.v1 json file");
    ietc->add_option("--iet", iet_path, "iet.v1 json file");
    ietc->add_option("--dir", flow_dir, "flow direction dx,dy")->expected(2);
    ietc->add_option("--steps", steps, "Rauzy steps");

    // --- straighten -------------------------------------------------------
    auto* str = app.add_subcommand("straighten",
                                   "normalize a chord curve on an origami");
    std::string curve_path;
    str->add_option("--origami", origami_path, "origami.v1 json file")->required();
    str->add_option("--curve", curve_path, "curve.v1 json file")->required();
    str->add_option("--t", flow_t, "geodesic flow time");

    CLI11_PARSE(app, argc, argv);
    out.command = app.get_subcommands().front()->get_name();

    try {
        Json result;
        if (*thm1) {
            auto qd = torus_qd_direction({tau_opt[0], tau_opt[1]}, dir_opt[0], dir_opt[1]);
            teich::QDRecord rec = teich::torus_record(qd);
            teich::ProbeFamily fam = teich::torus_primitive_probes(probes);
            Json rows = Json::array();
            double final_gap = 0;
            for (int i = 1; i <= samples; ++i) {
                const double t = tmax * i / samples;
                teich::TorusPoint xt = teich::torus_ray(qd, t);
                double gap = 0;
                for (const auto& F : fam.members) {
                    const double lhs =
                        std::exp(-2 * t) * teich::torus_ext_length(xt, F);
                    const double e = teich::eq_eval(rec, F);
                    gap = std::max(gap, std::abs(lhs - e * e));
                }
                final_gap = gap;
                rows.push_back({{"t", t}, {"max_gap", gap}});
            }
            result = {{"samples", rows},
                      {"final_gap", final_gap},
                      {"pass", final_gap <= tol}};
        } else if (*extlen) {
            teich::Origami o =
                teich::origami_from_json(load_json(origami_path, out.inputs));
            teich::Rectangulation R = teich::geodesic_flow(o, flow_t);
            teich::CurveClassSpec cls{!vertical_class, cyl_index};
            auto est = teich::discrete_ext_length(R, cls, grid, budget, tol);
            result = {{"lower", teich::extreal_to_json(est.lower)},
                      {"upper", teich::extreal_to_json(est.upper)},
                      {"converged", est.converged},
                      {"k", est.k},
                      {"iterations", est.iterations}};
            if (!est.converged) {
                out.emit(std::move(result));
                std::cerr << "nonconvergence: extlen reweighting budget exhausted\n";
                return 3;
            }
        } else if (*dist) {
            teich::TorusPoint x({tau1[0], tau1[1]}), y({tau2[0], tau2[1]});
            const double d = teich::torus_distance(x, y);
            teich::ProbeFamily fam = teich::torus_primitive_probes(probes);
            std::vector<double> ex, ey;
            for (const auto& F : fam.members) {
                ex.push_back(teich::torus_ext_length(x, F));
                ey.push_back(teich::torus_ext_length(y, F));
            }
            result = {{"distance", d},
                      {"probe_lower_bound", teich::distance_lower_from_probes(ex, ey)}};
        } else if (*eqe) {
            teich::QDRecord rec =
                teich::qdrecord_from_json(load_json(record_path, out.inputs));
            teich::MeasuredFoliation F =
                teich::foliation_from_json(load_json(foliation_path, out.inputs));
            result = {{"eq", teich::eq_eval(rec, F)},
                      {"dual", teich::extreal_to_json(teich::dual_eval(rec, F))}};
        } else if (*det) {
            teich::QDRecord a =
                teich::qdrecord_from_json(load_json(rec1_path, out.inputs));
            teich::QDRecord b =
                teich::qdrecord_from_json(load_json(rec2_path, out.inputs));
            result = {{"cost_12", teich::extreal_to_json(teich::detour_cost(a, b))},
                      {"cost_21", teich::extreal_to_json(teich::detour_cost(b, a))},
                      {"metric", teich::extreal_to_json(teich::detour_metric(a, b))}};
        } else if (*msolve) {
            const std::size_t d = ratios.size();
            if (matrix.size() != d * d || init.size() != d)
                throw teich::InputError("modular-solve: dimension mismatch");
            auto oracle = [&](const std::vector<double>& lam) {
                std::vector<double> iota(d, 0.0);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        iota[i] += matrix[i * d + j] * lam[j];
                return iota;
            };
            auto sol = teich::modular_solve(oracle, ratios, init, tol, msteps);
            result = {{"lambda", sol.lambda},
                      {"residual", sol.residual},
                      {"iterations", sol.iterations},
                      {"converged", sol.converged}};
        } else if (*part) {
            teich::QDRecord a =
                teich::qdrecord_from_json(load_json(rec1_path, out.inputs));
            teich::QDRecord b =
                teich::qdrecord_from_json(load_json(rec2_path, out.inputs));
            result = {{"same_part", teich::same_part(a, b)},
                      {"modular_equivalent", teich::modular_equivalent(a, b, tol)}};
        } else if (*buse) {
            auto qd = torus_qd_direction({tau_opt[0], tau_opt[1]}, dir_opt[0], dir_opt[1]);
            teich::QDRecord rec = teich::torus_record(qd);
            teich::TorusPoint base = qd.base;
            teich::SequenceData seq;
            for (int i = 1; i <= samples; ++i) {
                const double t = tmax * i / samples;
                teich::TorusPoint xt = teich::torus_ray(qd, t);
                seq.t.push_back(t);
                seq.psi.push_back(teich::torus_horofunction(rec, xt, base, probes));
            }
            auto chk = teich::busemann_limit_check(seq, tol);
            result = {{"t", seq.t},
                      {"psi", seq.psi},
                      {"max_dev", chk.max_dev},
                      {"pass", chk.ok}};
        } else if (*ietc) {
            teich::IET iet;
            if (!iet_path.empty()) {
                iet = teich::iet_from_json(load_json(iet_path, out.inputs));
            } else if (!origami_path.empty()) {
                teich::Origami o =
                    teich::origami_from_json(load_json(origami_path, out.inputs));
                auto fr = teich::first_return(o, teich::Scalar(flow_dir[0]),
                                              teich::Scalar(flow_dir[1]));
                iet = fr.iet;
                result["return_area"] = fr.dec.total_area.value();
            } else {
                throw teich::InputError("iet: provide --origami or --iet");
            }
            auto orbit = teich::rauzy_orbit(iet, steps);
            std::string types(orbit.types.begin(), orbit.types.end());
            result["iet"] = teich::iet_to_json(iet);
            result["steps"] = orbit.steps;
            result["types"] = types;
            result["connection"] = orbit.connection.has_value();
            if (orbit.connection)
                result["connection_labels"] = {orbit.connection->top_label,
                                               orbit.connection->bottom_label};
        } else if (*str) {
            teich::Origami o =
                teich::origami_from_json(load_json(origami_path, out.inputs));
            teich::Rectangulation R = teich::geodesic_flow(o, flow_t);
            teich::ChordCurve c =
                teich::curve_from_json(load_json(curve_path, out.inputs));
            auto res = teich::straighten(R, c);
            result = {{"curve", teich::curve_to_json(res.curve)},
                      {"moves", res.moves},
                      {"atoms", (long)res.curve.size()},
                      {"conditions",
                       {{"i", res.report.i},
                        {"ii", res.report.ii},
                        {"iii", res.report.iii},
                        {"iv", res.report.iv}}},
                      {"dV", {{"before", res.dV_before}, {"after", res.dV_after}}},
                      {"rho_dH",
                       {{"before", res.rho_dH_before}, {"after", res.rho_dH_after}}}};
        }
        out.emit(std::move(result));
        return 0;
    } catch (const teich::NonconvergenceError& e) {
        std::cerr << "nonconvergence: " << e.what() << "\n";
        return 3;
    } catch (const teich::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
