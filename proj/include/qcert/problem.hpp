#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qcert/geometry.hpp"

namespace qcert {

enum class GMode { absent, bounded_derivative, relative_growth };
enum class Provenance { user_supplied, sampled_heuristic };

/// The diffusion coefficient A(x,eta,xi) = A0(x,eta) + A1(x,eta) f(|xi|) + A2(x) g(|xi|)
/// together with the lower-order term b(x,eta). All callbacks must be pure;
/// the model is immutable and safe to evaluate from multiple threads.
///
/// Catalog models come from make_coefficient; user-defined models are built by
/// filling the callbacks directly (they are not parsed from expression strings).
struct CoefficientModel {
    std::string name = "user-defined";

    std::function<double(Vec2, double)> A0;
    std::function<double(Vec2, double)> dA0_deta;
    std::function<double(Vec2, double)> A1;
    std::function<double(Vec2, double)> dA1_deta;
    std::function<double(Vec2)> A2;

    std::function<double(double)> f;  ///< nullable: no f-nonlinearity
    std::function<double(double)> df;
    std::function<double(double)> g;  ///< nullable: no g-nonlinearity
    std::function<double(double)> dg;
    GMode g_mode = GMode::absent;
    double C_g_hat = 0.0; ///< relative-growth coefficient installed by the catalog

    std::function<double(Vec2, double)> b;       ///< nullable: b == 0
    std::function<double(Vec2, double)> db_deta; ///< nullable with b

    bool semilinear = false; ///< A == 1 identically

    double A(Vec2 x, double eta, double s) const;
    double dA_deta(Vec2 x, double eta, double s) const;
    double b_val(Vec2 x, double eta) const { return b ? b(x, eta) : 0.0; }
    double db_val(Vec2 x, double eta) const { return db_deta ? db_deta(x, eta) : 0.0; }
};

/// Certified bounds on the problem data. Entries are bounds, not suprema:
/// larger K_eta/B_eta/Lambda or smaller gamma_a/lambda0 only weaken certificates.
struct ConstantsBundle {
    double gamma_a = 0.0; ///< ellipticity: zeta' (da/dxi) zeta >= gamma_a |zeta|^2
    double K_eta = 0.0;   ///< |dA/deta| <= K_eta
    double B_eta = 0.0;   ///< 0 <= db/deta <= B_eta
    double lambda0 = 0.0; ///< A0 >= lambda0
    double Lambda1 = 0.0; ///< 0 <= A1 <= Lambda1
    double Lambda2 = 0.0; ///< 0 <= A2 <= Lambda2
    double C_f = 0.0;     ///< s |f'(s)| <= C_f
    double C_g = 0.0;     ///< s |g'(s)| <= C_g (bounded-derivative route)
    double C_g_hat = 0.0; ///< s |g'(s)| <= C_g_hat g(s) (relative-growth route)
    Provenance provenance = Provenance::user_supplied;
};

/// a = A xi, its Jacobian in xi, and the eta-derivative of A.
struct FluxEval {
    Vec2 a;
    Mat2 da_dxi;    ///< symmetric; A*I at xi = 0
    double dA_deta; ///< dA0/deta + dA1/deta * f(|xi|)
};

FluxEval eval_flux(const CoefficientModel& model, Vec2 x, double eta, Vec2 xi);

/// Catalog ids: power_kernel (kappa,alpha), mean_curvature, glacier (K0),
/// arctan, tanh, log_growth (kappa>1, installs as g), p_laplacian (p, installs
/// as g with relative growth), constant (value).
///
/// Shared params: a0 (A0 offset, default 1), a0_tanh (A0 = a0 + a0_tanh*tanh(eta)),
/// a1 / a2 (coefficients of f / g), b_slope, b_shift, b_cubic, b_tanh for
/// b(eta) = b_slope*eta + b_shift + b_cubic*eta^3 + b_tanh*tanh(eta).
using ParamMap = std::map<std::string, double>;
CoefficientModel make_coefficient(const std::string& name, const ParamMap& params = {});

struct SamplingBox {
    Vec2 x_lo{0.0, 0.0}, x_hi{1.0, 1.0};
    double eta_lo = -1.0, eta_hi = 1.0;
    double s_lo = 1e-6, s_hi = 1e6; ///< log-uniform in s; s = 0 sampled explicitly
    int n = 100000;
    std::uint64_t seed = 20250809;
};

struct SamplePoint {
    Vec2 x;
    double eta = 0.0;
    double s = 0.0;
    double value = 0.0;
};

struct ConstantsEstimate {
    ConstantsBundle bundle;
    int samples = 0;
    std::map<std::string, SamplePoint> extremes; ///< per bundle entry, the attaining sample
};

/// Heuristic sampling estimate; provenance is sampled_heuristic.
/// A finite sample cannot certify a supremum. Throws ValidationError if a
/// structural sign condition is violated at a sample (with the witness point).
ConstantsEstimate estimate_constants(const CoefficientModel& model, const SamplingBox& box);

struct BoundViolation {
    std::string bound; ///< which bundle entry failed
    SamplePoint at;
    double claimed = 0.0;
    double observed = 0.0;
};

struct ValidationReport {
    std::vector<BoundViolation> violations;
    int samples = 0;
    bool ok() const { return violations.empty(); }
};

/// Monte-Carlo spot check of a user-supplied bundle; violations are report
/// content, not failures. Never upgrades provenance.
ValidationReport validate_constants(const CoefficientModel& model, const ConstantsBundle& bundle,
                                    const SamplingBox& box);

} // namespace qcert
