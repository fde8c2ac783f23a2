#include "qcert/certificate.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

void finalize(CertificateReport& report) {
    report.global_pass = report.applicable && !report.elements.empty();
    report.worst_elem = -1;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& ec : report.elements) {
        if (!ec.pass) report.global_pass = false;
        if (ec.margin < report.worst_margin) {
            report.worst_margin = ec.margin;
            report.worst_elem = ec.elem;
        }
    }
    if (!report.applicable) report.global_pass = false;
}

double min_cot(const ElementGeometry& g) {
    double m = std::numeric_limits<double>::infinity();
    for (double a : g.angle) m = std::min(m, std::cos(a) / std::sin(a));
    return m;
}

} // namespace

std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::comparison_1d: return "1D-Thm3.1";
        case Theorem::comparison_2d: return "2D-Thm4.8";
        case Theorem::comparison_2d_relative_g: return "2D-Cor4.9";
        case Theorem::semilinear_51: return "semilinear-Thm5.1";
        case Theorem::semilinear_52: return "semilinear-Thm5.2";
    }
    return "?";
}

std::string bound_mode_name(BoundMode m) { return m == BoundMode::paper ? "paper-7/6" : "corrected-4/3"; }

double delta_T(const TriMesh2D& mesh, const DiscreteField& field, int elem) {
    const auto& tri = mesh.triangles[elem];
    double lo = field.values[tri[0]], hi = lo;
    for (int l = 1; l < 3; ++l) {
        lo = std::min(lo, field.values[tri[l]]);
        hi = std::max(hi, field.values[tri[l]]);
    }
    return hi - lo;
}

double delta_T(const Mesh1D& mesh, const DiscreteField& field, int k) {
    (void)mesh;
    return std::abs(field.values[k + 1] - field.values[k]);
}

double p_star(const ElementGeometry& geom, const ConstantsBundle& bundle, GMode g_route, BoundMode mode,
              double c_min) {
    double diffusion = bundle.lambda0 * geom.c_T - bundle.Lambda1 * bundle.C_f;
    if (g_route == GMode::relative_growth) {
        if (bundle.C_g_hat > c_min)
            throw InapplicableError("relative-growth route needs C_g_hat <= c_min (C_g_hat = " +
                                    std::to_string(bundle.C_g_hat) + ", c_min = " + std::to_string(c_min) +
                                    ")");
    } else {
        diffusion -= bundle.Lambda2 * bundle.C_g;
    }
    const double ratio_term =
        mode == BoundMode::paper ? bundle.gamma_a / geom.r_T : bundle.gamma_a * geom.r_T;
    return std::min(diffusion, ratio_term);
}

CertificateReport certify_1d(const Mesh1D& mesh, const DiscreteField& field, const ConstantsBundle& bundle) {
    CertificateReport report;
    report.theorem = Theorem::comparison_1d;
    report.constants = bundle;

    if (bundle.K_eta == 0.0) {
        if (bundle.B_eta == 0.0) {
            // Condition vacuous: the normalized bound is +infinity.
            report.applicable = true;
            report.reason = "K_eta = 0 and B_eta = 0: condition vacuous, degenerate pass";
            for (int k = 0; k < mesh.n_elements(); ++k) {
                ElementCertificate ec;
                ec.elem = k;
                ec.delta_u = delta_T(mesh, field, k);
                ec.p_star = std::numeric_limits<double>::quiet_NaN();
                ec.margin = std::numeric_limits<double>::infinity();
                ec.pass = true;
                ec.area_or_h = mesh.h(k);
                report.elements.push_back(ec);
            }
            finalize(report);
            return report;
        }
        report.applicable = false;
        report.reason = "K_eta = 0 with B_eta > 0: normalized condition undefined";
        finalize(report);
        return report;
    }

    for (int k = 0; k < mesh.n_elements(); ++k) {
        ElementCertificate ec;
        ec.elem = k;
        ec.delta_u = delta_T(mesh, field, k);
        ec.p_star = std::numeric_limits<double>::quiet_NaN();
        ec.area_or_h = mesh.h(k);
        ec.margin = 2.0 * bundle.gamma_a / bundle.K_eta - ec.delta_u -
                    (bundle.B_eta / bundle.K_eta) * mesh.h(k) * mesh.h(k);
        ec.pass = ec.margin > 0.0;
        report.elements.push_back(ec);
    }
    finalize(report);
    return report;
}

CertificateReport certify_2d(const TriMesh2D& mesh, const DiscreteField& field, const ConstantsBundle& bundle,
                             GMode g_route, BoundMode mode) {
    CertificateReport report;
    report.theorem =
        g_route == GMode::relative_growth ? Theorem::comparison_2d_relative_g : Theorem::comparison_2d;
    report.mode = mode;
    report.constants = bundle;

    const GlobalMeshQuality quality = mesh_quality(mesh);
    if (!quality.acute) {
        report.applicable = false;
        report.reason = "mesh is not strictly acute (t_max = " + std::to_string(quality.t_max) + ")";
        finalize(report);
        return report;
    }

    // Global hypothesis before any per-element work.
    double hyp = bundle.lambda0 * quality.c_min - bundle.Lambda1 * bundle.C_f;
    if (g_route != GMode::relative_growth) hyp -= bundle.Lambda2 * bundle.C_g;
    if (!(hyp > 0.0)) {
        report.applicable = false;
        report.reason = "global hypothesis lambda0*c_min - Lambda1*C_f" +
                        std::string(g_route == GMode::relative_growth ? "" : " - Lambda2*C_g") +
                        " > 0 fails (value " + std::to_string(hyp) + ")";
        finalize(report);
        return report;
    }

    const double cw = cw_constant(mode);
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const ElementGeometry geom = element_geometry(mesh.triangle_coords(t));
        ElementCertificate ec;
        ec.elem = t;
        ec.delta_u = delta_T(mesh, field, t);
        ec.c_T = geom.c_T;
        ec.s_T = geom.s_T;
        ec.r_T = geom.r_T;
        ec.area_or_h = geom.area;
        try {
            ec.p_star = p_star(geom, bundle, g_route, mode, quality.c_min);
        } catch (const InapplicableError& e) {
            report.applicable = false;
            report.reason = e.what();
            finalize(report);
            return report;
        }
        ec.margin = ec.p_star - ec.delta_u * cw * bundle.K_eta * (1.0 + 1.0 / geom.r_T) -
                    2.0 * cw * bundle.B_eta * geom.area * geom.s_T;
        ec.pass = ec.margin > 0.0;
        report.elements.push_back(ec);
    }
    finalize(report);
    return report;
}

CertificateReport certify_semilinear(const AnyMesh& mesh, const ConstantsBundle& bundle, Theorem strictness,
                                     BoundMode mode) {
    if (strictness != Theorem::semilinear_51 && strictness != Theorem::semilinear_52)
        throw ConfigError("certify_semilinear: strictness must be semilinear_51 or semilinear_52");
    CertificateReport report;
    report.theorem = strictness;
    report.mode = mode;
    report.constants = bundle;
    const bool strict = strictness == Theorem::semilinear_51;
    const double B = bundle.B_eta;
    if (B < 0.0) throw ConfigError("certify_semilinear: B_eta must be >= 0");

    if (const auto* m1 = std::get_if<Mesh1D>(&mesh)) {
        const double threshold = strict ? 2.0 : 6.0;
        for (int k = 0; k < m1->n_elements(); ++k) {
            ElementCertificate ec;
            ec.elem = k;
            ec.p_star = std::numeric_limits<double>::quiet_NaN();
            ec.area_or_h = m1->h(k);
            ec.margin = threshold - B * m1->h(k) * m1->h(k);
            ec.pass = strict ? ec.margin > 0.0 : ec.margin >= 0.0;
            report.elements.push_back(ec);
        }
        finalize(report);
        return report;
    }

    const auto& m2 = std::get<TriMesh2D>(mesh);
    const GlobalMeshQuality quality = mesh_quality(m2);
    if (!quality.acute) {
        report.applicable = false;
        report.reason = "mesh is not strictly acute (t_max = " + std::to_string(quality.t_max) + ")";
        finalize(report);
        return report;
    }
    const double c51 = mode == BoundMode::paper ? 3.0 / 7.0 : 3.0 / 8.0;
    for (int t = 0; t < m2.n_elements(); ++t) {
        const ElementGeometry geom = element_geometry(m2.triangle_coords(t));
        ElementCertificate ec;
        ec.elem = t;
        ec.p_star = std::numeric_limits<double>::quiet_NaN();
        ec.c_T = geom.c_T;
        ec.s_T = geom.s_T;
        ec.r_T = geom.r_T;
        ec.area_or_h = geom.area;
        const double cot = min_cot(geom);
        ec.margin = (strict ? c51 : 6.0) * cot - B * geom.area;
        ec.pass = strict ? ec.margin > 0.0 : ec.margin >= 0.0;
        report.elements.push_back(ec);
    }
    finalize(report);
    return report;
}

StieltjesVerdict stieltjes_check(const Eigen::SparseMatrix<double>& matrix) {
    if (matrix.rows() != matrix.cols()) throw ConfigError("stieltjes_check: matrix must be square");
    StieltjesVerdict v;

    Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(matrix.transpose()) - matrix;
    double max_asym = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
            max_asym = std::max(max_asym, std::abs(it.value()));
    v.symmetric = max_asym <= 1e-12;

    v.offdiag_nonpositive = true;
    for (int k = 0; k < matrix.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it) {
            if (it.row() != it.col() && it.value() > 0.0) {
                v.offdiag_nonpositive = false;
                v.offdiag_violations.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()),
                                                it.value()});
            }
        }
    }

    if (v.symmetric) {
        Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
        llt.compute(matrix);
        v.spd = llt.info() == Eigen::Success;
    }
    v.is_stieltjes = v.symmetric && v.offdiag_nonpositive && v.spd;
    return v;
}

} // namespace qcert
