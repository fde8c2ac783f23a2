#include "qcert/problem.hpp"

#include <cmath>
#include <random>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

constexpr double kZeroGradient = 1e-300;

double get(const ParamMap& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

bool has(const ParamMap& p, const std::string& key) { return p.find(key) != p.end(); }

std::function<double(Vec2, double)> const_xe(double v) {
    return [v](Vec2, double) { return v; };
}

} // namespace

double CoefficientModel::A(Vec2 x, double eta, double s) const {
    double v = A0 ? A0(x, eta) : 0.0;
    if (f) v += (A1 ? A1(x, eta) : 0.0) * f(s);
    if (g) v += (A2 ? A2(x) : 0.0) * g(s);
    return v;
}

double CoefficientModel::dA_deta(Vec2 x, double eta, double s) const {
    double v = dA0_deta ? dA0_deta(x, eta) : 0.0;
    if (f && dA1_deta) v += dA1_deta(x, eta) * f(s);
    return v;
}

FluxEval eval_flux(const CoefficientModel& model, Vec2 x, double eta, Vec2 xi) {
    FluxEval out;
    const double s = norm(xi);
    const double A = model.A(x, eta, s);
    out.a = A * xi;
    out.dA_deta = model.dA_deta(x, eta, s);

    if (s < kZeroGradient) {
        // Removable limit: s f'(s) and s g'(s) vanish with s for admissible f, g.
        out.da_dxi = Mat2::identity(A);
        return out;
    }
    double radial = 0.0;
    if (model.df) radial += (model.A1 ? model.A1(x, eta) : 0.0) * model.df(s);
    if (model.dg) radial += (model.A2 ? model.A2(x) : 0.0) * model.dg(s);
    const double c = radial / s;
    out.da_dxi = Mat2{A + c * xi.x * xi.x, c * xi.x * xi.y, c * xi.x * xi.y, A + c * xi.y * xi.y};
    return out;
}

CoefficientModel make_coefficient(const std::string& name, const ParamMap& params) {
    CoefficientModel m;
    m.name = name;

    // A0(x,eta) = a0 + a0_tanh * tanh(eta)
    const double a0_tanh = get(params, "a0_tanh", 0.0);
    double a0_default = 1.0;
    if (name == "constant") a0_default = get(params, "value", 1.0);
    const double a0 = get(params, "a0", a0_default);
    if (a0_tanh == 0.0) {
        m.A0 = const_xe(a0);
        m.dA0_deta = const_xe(0.0);
    } else {
        if (a0_tanh < 0.0) throw ConfigError("make_coefficient: a0_tanh must be >= 0");
        m.A0 = [a0, a0_tanh](Vec2, double eta) { return a0 + a0_tanh * std::tanh(eta); };
        m.dA0_deta = [a0_tanh](Vec2, double eta) {
            const double c = std::cosh(eta);
            return a0_tanh / (c * c);
        };
    }

    bool as_g = false;
    std::function<double(double)> phi, dphi;
    if (name == "constant") {
        // A == value; the semilinear/Poisson kernel when value == 1.
    } else if (name == "power_kernel" || name == "mean_curvature") {
        const double kappa = name == "mean_curvature" ? 1.0 : get(params, "kappa", 1.0);
        const double alpha = name == "mean_curvature" ? 0.5 : get(params, "alpha", 1.0);
        if (kappa <= 0.0) throw ConfigError("make_coefficient: power_kernel needs kappa > 0");
        if (alpha < 0.0) throw ConfigError("make_coefficient: power_kernel needs alpha >= 0");
        phi = [kappa, alpha](double s) { return std::pow(kappa + s * s, -alpha); };
        dphi = [kappa, alpha](double s) { return -2.0 * alpha * s * std::pow(kappa + s * s, -alpha - 1.0); };
    } else if (name == "glacier") {
        const double K0 = get(params, "K0", 1.0);
        if (K0 <= 0.0) throw ConfigError("make_coefficient: glacier needs K0 > 0");
        phi = [K0](double s) { return 2.0 / (K0 + std::sqrt(K0 * K0 + 4.0 * s)); };
        dphi = [K0](double s) {
            const double root = std::sqrt(K0 * K0 + 4.0 * s);
            const double den = K0 + root;
            return -4.0 / (root * den * den);
        };
    } else if (name == "arctan") {
        phi = [](double s) { return std::atan(s); };
        dphi = [](double s) { return 1.0 / (1.0 + s * s); };
    } else if (name == "tanh") {
        phi = [](double s) { return std::tanh(s); };
        dphi = [](double s) {
            const double c = std::cosh(s);
            return 1.0 / (c * c);
        };
    } else if (name == "log_growth") {
        const double kappa = get(params, "kappa", 2.0);
        if (kappa <= 1.0) throw ConfigError("make_coefficient: log_growth needs kappa > 1");
        phi = [kappa](double s) { return std::log(kappa + s * s); };
        dphi = [kappa](double s) { return 2.0 * s / (kappa + s * s); };
        as_g = true;
        m.g_mode = GMode::bounded_derivative;
    } else if (name == "p_laplacian") {
        if (!has(params, "p")) throw ConfigError("make_coefficient: p_laplacian needs parameter p");
        const double p = params.at("p");
        if (p <= 1.0) throw ConfigError("make_coefficient: p_laplacian needs p > 1");
        phi = [p](double s) { return std::pow(s, p - 2.0); };
        dphi = [p](double s) { return (p - 2.0) * std::pow(s, p - 3.0); };
        as_g = true;
        m.g_mode = GMode::relative_growth;
        m.C_g_hat = std::abs(p - 2.0); // admissibility vs c_min is checked at certificate time
    } else {
        throw ConfigError("make_coefficient: unknown catalog id '" + name + "'");
    }

    if (phi) {
        if (as_g) {
            m.g = phi;
            m.dg = dphi;
            m.A2 = [a2 = get(params, "a2", 1.0)](Vec2) { return a2; };
            m.A1 = const_xe(get(params, "a1", 0.0));
        } else {
            m.f = phi;
            m.df = dphi;
            m.A1 = const_xe(get(params, "a1", 1.0));
            m.A2 = [a2 = get(params, "a2", 0.0)](Vec2) { return a2; };
        }
        m.dA1_deta = const_xe(0.0);
    } else {
        m.A1 = const_xe(0.0);
        m.dA1_deta = const_xe(0.0);
        m.A2 = [](Vec2) { return 0.0; };
    }

    const double b_slope = get(params, "b_slope", 0.0);
    const double b_shift = get(params, "b_shift", 0.0);
    const double b_cubic = get(params, "b_cubic", 0.0);
    const double b_tanh = get(params, "b_tanh", 0.0);
    if (b_slope < 0.0 || b_cubic < 0.0 || b_tanh < 0.0)
        throw ConfigError("make_coefficient: b must be nondecreasing (b_slope, b_cubic, b_tanh >= 0)");
    if (b_slope != 0.0 || b_shift != 0.0 || b_cubic != 0.0 || b_tanh != 0.0) {
        m.b = [=](Vec2, double eta) {
            return b_slope * eta + b_shift + b_cubic * eta * eta * eta + b_tanh * std::tanh(eta);
        };
        m.db_deta = [=](Vec2, double eta) {
            const double c = std::cosh(eta);
            return b_slope + 3.0 * b_cubic * eta * eta + b_tanh / (c * c);
        };
    }

    m.semilinear = (name == "constant") && a0 == 1.0 && a0_tanh == 0.0;
    return m;
}

namespace {

struct Sampler {
    const SamplingBox& box;
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> unit{0.0, 1.0};

    explicit Sampler(const SamplingBox& b) : box(b), rng(b.seed) {}

    SamplePoint draw(int index) {
        SamplePoint p;
        p.x = {box.x_lo.x + unit(rng) * (box.x_hi.x - box.x_lo.x),
               box.x_lo.y + unit(rng) * (box.x_hi.y - box.x_lo.y)};
        p.eta = box.eta_lo + unit(rng) * (box.eta_hi - box.eta_lo);
        if (index == 0) {
            p.s = 0.0; // both asymptotic regimes matter; pin the origin explicitly
        } else {
            const double lo = std::log(box.s_lo), hi = std::log(box.s_hi);
            p.s = std::exp(lo + unit(rng) * (hi - lo));
        }
        return p;
    }
};

void track_max(std::map<std::string, SamplePoint>& ext, const std::string& key, const SamplePoint& p,
               double value, double& current) {
    if (value > current || ext.find(key) == ext.end()) {
        current = std::max(current, value);
        SamplePoint q = p;
        q.value = value;
        auto [it, inserted] = ext.emplace(key, q);
        if (!inserted && value >= it->second.value) it->second = q;
    }
}

void track_min(std::map<std::string, SamplePoint>& ext, const std::string& key, const SamplePoint& p,
               double value, double& current) {
    if (value < current || ext.find(key) == ext.end()) {
        current = std::min(current, value);
        SamplePoint q = p;
        q.value = value;
        auto [it, inserted] = ext.emplace(key, q);
        if (!inserted && value <= it->second.value) it->second = q;
    }
}

} // namespace

ConstantsEstimate estimate_constants(const CoefficientModel& model, const SamplingBox& box) {
    if (box.n < 1) throw ConfigError("estimate_constants: sample count must be positive");
    Sampler sampler(box);

    ConstantsEstimate est;
    est.samples = box.n;
    double lambda0 = std::numeric_limits<double>::infinity();
    double gamma_a = std::numeric_limits<double>::infinity();
    double Lambda1 = 0.0, Lambda2 = 0.0, K_eta = 0.0, B_eta = 0.0, C_f = 0.0, C_g = 0.0, C_g_hat = 0.0;

    for (int i = 0; i < box.n; ++i) {
        const SamplePoint p = sampler.draw(i);

        const double a0 = model.A0 ? model.A0(p.x, p.eta) : 0.0;
        track_min(est.extremes, "lambda0", p, a0, lambda0);
        if (model.A1) {
            const double a1 = model.A1(p.x, p.eta);
            if (a1 < 0.0)
                throw ValidationError("estimate_constants: A1 < 0 at eta=" + std::to_string(p.eta));
            track_max(est.extremes, "Lambda1", p, a1, Lambda1);
        }
        if (model.A2) {
            const double a2 = model.A2(p.x);
            if (a2 < 0.0) throw ValidationError("estimate_constants: A2 < 0 at x=" + std::to_string(p.x.x));
            track_max(est.extremes, "Lambda2", p, a2, Lambda2);
        }
        track_max(est.extremes, "K_eta", p, std::abs(model.dA_deta(p.x, p.eta, p.s)), K_eta);
        if (model.b) {
            const double db = model.db_val(p.x, p.eta);
            if (db < 0.0)
                throw ValidationError("estimate_constants: db/deta < 0 at eta=" + std::to_string(p.eta) +
                                      " (witness value " + std::to_string(db) + ")");
            track_max(est.extremes, "B_eta", p, db, B_eta);
        }
        if (model.f) {
            if (model.f(p.s) < 0.0)
                throw ValidationError("estimate_constants: f < 0 at s=" + std::to_string(p.s));
            track_max(est.extremes, "C_f", p, p.s * std::abs(model.df(p.s)), C_f);
        }
        if (model.g && p.s > 0.0) {
            const double gv = model.g(p.s);
            if (gv < 0.0)
                throw ValidationError("estimate_constants: g < 0 at s=" + std::to_string(p.s));
            const double sg = p.s * std::abs(model.dg(p.s));
            if (model.g_mode == GMode::relative_growth) {
                if (gv > 0.0) track_max(est.extremes, "C_g_hat", p, sg / gv, C_g_hat);
            } else {
                track_max(est.extremes, "C_g", p, sg, C_g);
            }
        }

        // Random direction for the ellipticity scan; the eigenvalues of
        // da/dxi depend on |xi| only for the catalog forms, but user models
        // may break isotropy through x.
        const double phi = 2.0 * M_PI * (static_cast<double>(i) / box.n);
        const Vec2 xi{p.s * std::cos(phi), p.s * std::sin(phi)};
        const FluxEval fe = eval_flux(model, p.x, p.eta, xi);
        track_min(est.extremes, "gamma_a", p, fe.da_dxi.min_eigenvalue_sym(), gamma_a);
    }

    est.bundle.lambda0 = lambda0;
    est.bundle.gamma_a = gamma_a;
    est.bundle.Lambda1 = Lambda1;
    est.bundle.Lambda2 = Lambda2;
    est.bundle.K_eta = K_eta;
    est.bundle.B_eta = B_eta;
    est.bundle.C_f = C_f;
    est.bundle.C_g = C_g;
    est.bundle.C_g_hat = model.g_mode == GMode::relative_growth ? std::max(C_g_hat, model.C_g_hat) : 0.0;
    est.bundle.provenance = Provenance::sampled_heuristic;
    return est;
}

ValidationReport validate_constants(const CoefficientModel& model, const ConstantsBundle& bundle,
                                    const SamplingBox& box) {
    ValidationReport report;
    report.samples = box.n;
    Sampler sampler(box);

    auto record = [&](const std::string& name, const SamplePoint& p, double claimed, double observed) {
        BoundViolation v;
        v.bound = name;
        v.at = p;
        v.at.value = observed;
        v.claimed = claimed;
        v.observed = observed;
        report.violations.push_back(std::move(v));
    };

    for (int i = 0; i < box.n; ++i) {
        const SamplePoint p = sampler.draw(i);

        if (model.A0 && model.A0(p.x, p.eta) < bundle.lambda0)
            record("lambda0", p, bundle.lambda0, model.A0(p.x, p.eta));
        if (model.A1 && model.A1(p.x, p.eta) > bundle.Lambda1)
            record("Lambda1", p, bundle.Lambda1, model.A1(p.x, p.eta));
        if (model.A2 && model.A2(p.x) > bundle.Lambda2) record("Lambda2", p, bundle.Lambda2, model.A2(p.x));
        if (std::abs(model.dA_deta(p.x, p.eta, p.s)) > bundle.K_eta)
            record("K_eta", p, bundle.K_eta, std::abs(model.dA_deta(p.x, p.eta, p.s)));
        if (model.b) {
            const double db = model.db_val(p.x, p.eta);
            if (db < 0.0 || db > bundle.B_eta) record("B_eta", p, bundle.B_eta, db);
        }
        if (model.f && p.s * std::abs(model.df(p.s)) > bundle.C_f)
            record("C_f", p, bundle.C_f, p.s * std::abs(model.df(p.s)));
        if (model.g && p.s > 0.0) {
            const double sg = p.s * std::abs(model.dg(p.s));
            if (model.g_mode == GMode::relative_growth) {
                const double gv = model.g(p.s);
                if (gv > 0.0 && sg > bundle.C_g_hat * gv) record("C_g_hat", p, bundle.C_g_hat, sg / gv);
            } else if (sg > bundle.C_g) {
                record("C_g", p, bundle.C_g, sg);
            }
        }

        const double phi = 2.0 * M_PI * (static_cast<double>(i) / box.n);
        const Vec2 xi{p.s * std::cos(phi), p.s * std::sin(phi)};
        const double eig = eval_flux(model, p.x, p.eta, xi).da_dxi.min_eigenvalue_sym();
        if (eig < bundle.gamma_a) record("gamma_a", p, bundle.gamma_a, eig);
    }
    return report;
}

} // namespace qcert
