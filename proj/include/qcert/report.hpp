#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qcert/certificate.hpp"
#include "qcert/newton.hpp"
#include "qcert/oracle.hpp"

namespace qcert {

/// Problem definition file: JSON naming a catalog model, its parameters,
/// an optional default Neumann datum and an optional user constants bundle.
struct ProblemConfig {
    CoefficientModel model;
    std::optional<ConstantsBundle> constants;
    double psi_default = 0.0;
};

ProblemConfig load_problem(const std::string& path);

nlohmann::json to_json(const ConstantsBundle& bundle);
ConstantsBundle bundle_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GlobalMeshQuality& q);
nlohmann::json to_json(const CertificateReport& report);
nlohmann::json to_json(const SolveResult& result);
nlohmann::json to_json(const PairVerdict& verdict);
nlohmann::json to_json(const StieltjesVerdict& verdict);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const ConstantsEstimate& est);

void write_json(const nlohmann::json& j, const std::string& path_or_dash);

} // namespace qcert
