#include "qcert/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "qcert/errors.hpp"

namespace qcert {

using nlohmann::json;

namespace {

json finite_or_tag(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

} // namespace

ProblemConfig load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("problem file '" + path + "': " + e.what());
    }
    if (!j.contains("model")) throw ParseError("problem file '" + path + "': missing \"model\"");

    ProblemConfig cfg;
    ParamMap params;
    if (j.contains("params")) {
        for (auto& [k, v] : j["params"].items()) {
            if (!v.is_number()) throw ParseError("problem file: parameter '" + k + "' must be a number");
            params[k] = v.get<double>();
        }
    }
    cfg.model = make_coefficient(j["model"].get<std::string>(), params);
    if (j.contains("psi")) cfg.psi_default = j["psi"].get<double>();
    if (j.contains("constants")) cfg.constants = bundle_from_json(j["constants"]);
    return cfg;
}

json to_json(const ConstantsBundle& b) {
    return json{{"gamma_a", b.gamma_a}, {"K_eta", b.K_eta},     {"B_eta", b.B_eta},
                {"lambda0", b.lambda0}, {"Lambda1", b.Lambda1}, {"Lambda2", b.Lambda2},
                {"C_f", b.C_f},         {"C_g", b.C_g},         {"C_g_hat", b.C_g_hat},
                {"provenance", b.provenance == Provenance::user_supplied ? "user-supplied" : "sampled-heuristic"}};
}

ConstantsBundle bundle_from_json(const json& j) {
    ConstantsBundle b;
    auto pick = [&](const char* key, double& out) {
        if (j.contains(key)) out = j.at(key).get<double>();
    };
    pick("gamma_a", b.gamma_a);
    pick("K_eta", b.K_eta);
    pick("B_eta", b.B_eta);
    pick("lambda0", b.lambda0);
    pick("Lambda1", b.Lambda1);
    pick("Lambda2", b.Lambda2);
    pick("C_f", b.C_f);
    pick("C_g", b.C_g);
    pick("C_g_hat", b.C_g_hat);
    b.provenance = Provenance::user_supplied;
    return b;
}

json to_json(const GlobalMeshQuality& q) {
    return json{{"t_min", q.t_min},   {"t_max", q.t_max}, {"s_min", q.s_min},
                {"c_min", q.c_min},   {"acute", q.acute}, {"worst_elements", q.worst_elements}};
}

json to_json(const CertificateReport& report) {
    json elements = json::array();
    for (const auto& ec : report.elements) {
        elements.push_back(json{{"id", ec.elem},
                                {"delta_u", ec.delta_u},
                                {"p_star", finite_or_tag(ec.p_star)},
                                {"margin", finite_or_tag(ec.margin)},
                                {"pass", ec.pass}});
    }
    json j{{"theorem", theorem_name(report.theorem)},
           {"bound_constant_mode", bound_mode_name(report.mode)},
           {"applicable", report.applicable},
           {"global_pass", report.global_pass},
           {"constants", to_json(report.constants)},
           {"elements", elements}};
    if (!report.reason.empty()) j["reason"] = report.reason;
    if (report.worst_elem >= 0)
        j["worst"] = json{{"id", report.worst_elem}, {"margin", finite_or_tag(report.worst_margin)}};
    else
        j["worst"] = nullptr;
    return j;
}

json to_json(const SolveResult& result) {
    json history = json::array();
    for (const auto& h : result.history)
        history.push_back(json{{"iter", h.iter}, {"residual", h.residual_norm}, {"step", h.step}});
    json j{{"converged", result.converged},
           {"iterations", result.iterations},
           {"residual_norm", result.residual_norm},
           {"history", history}};
    if (!result.failure.empty()) j["failure"] = result.failure;
    return j;
}

json to_json(const PairVerdict& v) {
    return json{{"is_subsolution", v.sub.holds},
                {"sub_worst_entry", v.sub.worst_entry},
                {"sub_worst_vertex", v.sub.worst_vertex},
                {"is_supersolution", v.super.holds},
                {"super_worst_entry", v.super.worst_entry},
                {"super_worst_vertex", v.super.worst_vertex},
                {"comparison_holds", v.comparison_holds},
                {"max_w", v.max_w}};
}

json to_json(const StieltjesVerdict& v) {
    json violations = json::array();
    for (const auto& o : v.offdiag_violations)
        violations.push_back(json{{"row", o.row}, {"col", o.col}, {"value", o.value}});
    return json{{"is_stieltjes", v.is_stieltjes},
                {"symmetric", v.symmetric},
                {"offdiag_nonpositive", v.offdiag_nonpositive},
                {"spd", v.spd},
                {"offdiag_violations", violations}};
}

json to_json(const ValidationReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back(json{{"bound", v.bound},
                                  {"claimed", v.claimed},
                                  {"observed", v.observed},
                                  {"x", {v.at.x.x, v.at.x.y}},
                                  {"eta", v.at.eta},
                                  {"s", v.at.s}});
    }
    return json{{"ok", report.ok()}, {"samples", report.samples}, {"violations", violations}};
}

json to_json(const ConstantsEstimate& est) {
    json extremes;
    for (const auto& [key, p] : est.extremes)
        extremes[key] = json{{"x", {p.x.x, p.x.y}}, {"eta", p.eta}, {"s", p.s}, {"value", p.value}};
    return json{{"bundle", to_json(est.bundle)}, {"samples", est.samples}, {"extremes", extremes}};
}

void write_json(const json& j, const std::string& path_or_dash) {
    if (path_or_dash.empty() || path_or_dash == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path_or_dash);
    if (!out) throw ParseError("cannot write report file '" + path_or_dash + "'");
    out << j.dump(2) << "\n";
}

} // namespace qcert
