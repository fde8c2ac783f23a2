#pragma once

#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "qcert/field.hpp"
#include "qcert/mesh.hpp"
#include "qcert/problem.hpp"

namespace qcert {

enum class Theorem { comparison_1d, comparison_2d, comparison_2d_relative_g, semilinear_51, semilinear_52 };

/// The two selectable constant sets for the 2D conditions.
///
/// paper:     |w|-integral bound 7/6 * delta_T(w) * |T| and edge-ratio factor
///            gamma_a / r_T, verbatim from the source conditions.
/// corrected: |w|-integral bound 4/3 (the value the bounding chain actually
///            yields with the exact basis-function integral |T|/3), and
///            edge-ratio factor gamma_a * r_T (the direction Eq.-of-edges
///            r_T|e_i| <= |e_j| actually supports). Conservative and provably
///            valid; the default.
enum class BoundMode { paper, corrected };

inline double cw_constant(BoundMode m) { return m == BoundMode::paper ? 7.0 / 6.0 : 4.0 / 3.0; }

struct ElementCertificate {
    int elem = 0;
    double delta_u = 0.0;
    double p_star = 0.0; ///< NaN for theorems without a p*_T
    double margin = 0.0;
    bool pass = false;
    // echo of the constants used
    double c_T = 0.0, s_T = 0.0, r_T = 0.0;
    double area_or_h = 0.0; ///< |T| in 2D, h_k in 1D
};

struct CertificateReport {
    Theorem theorem = Theorem::comparison_1d;
    BoundMode mode = BoundMode::corrected;
    bool applicable = true;
    std::string reason; ///< why not applicable
    std::vector<ElementCertificate> elements;
    bool global_pass = false;
    int worst_elem = -1;
    double worst_margin = 0.0;
    ConstantsBundle constants;
};

/// Maximum difference of nodal values over one element.
double delta_T(const TriMesh2D& mesh, const DiscreteField& field, int elem);
double delta_T(const Mesh1D& mesh, const DiscreteField& field, int k);

/// p*_T = min{lambda0 c_T - Lambda1 C_f - Lambda2 C_g, <edge-ratio term>} for the
/// full-g route; the relative-g route drops Lambda2 C_g and requires
/// C_g_hat <= c_min (throws InapplicableError otherwise).
double p_star(const ElementGeometry& geom, const ConstantsBundle& bundle, GMode g_route, BoundMode mode,
              double c_min);

/// Interval condition: margin_k = 2 gamma_a / K_eta - |u(a_k)-u(a_{k-1})| - (B_eta/K_eta) h_k^2,
/// pass iff > 0. K_eta = 0 with B_eta = 0 is a degenerate pass; K_eta = 0 with
/// B_eta > 0 marks the report inapplicable.
CertificateReport certify_1d(const Mesh1D& mesh, const DiscreteField& field, const ConstantsBundle& bundle);

/// Triangle condition: margin_T = p*_T - delta_T(u) Cw K_eta (1 + 1/r_T) - 2 Cw B_eta |T| s_T,
/// pass iff > 0. Requires a strictly acute mesh and the global hypothesis
/// lambda0 c_min - Lambda1 C_f [- Lambda2 C_g] > 0.
CertificateReport certify_2d(const TriMesh2D& mesh, const DiscreteField& field, const ConstantsBundle& bundle,
                             GMode g_route, BoundMode mode = BoundMode::corrected);

/// Semilinear mesh conditions; no solution data enters.
///   Thm 5.1, 1D: margin = 2 - B_eta h_k^2 (strict)
///   Thm 5.1, 2D: margin = c51 * min_k cot(theta_k) - B_eta |T|, c51 = 3/7 (paper) or 3/8 (corrected)
///   Thm 5.2, 1D: margin = 6 - B_eta h_k^2 (non-strict)
///   Thm 5.2, 2D: margin = 6 * min_k cot(theta_k) - B_eta |T| (non-strict)
/// B_eta = 0 passes unconditionally.
CertificateReport certify_semilinear(const AnyMesh& mesh, const ConstantsBundle& bundle, Theorem strictness,
                                     BoundMode mode = BoundMode::corrected);

struct OffdiagViolation {
    int row = 0, col = 0;
    double value = 0.0;
};

struct StieltjesVerdict {
    bool symmetric = false;
    bool offdiag_nonpositive = false;
    bool spd = false;
    bool is_stieltjes = false;
    std::vector<OffdiagViolation> offdiag_violations;
};

/// Symmetry to 1e-12, entrywise nonpositive off-diagonal, and positive
/// definiteness via a symmetric factorization.
StieltjesVerdict stieltjes_check(const Eigen::SparseMatrix<double>& matrix);

std::string theorem_name(Theorem t);
std::string bound_mode_name(BoundMode m);

} // namespace qcert
