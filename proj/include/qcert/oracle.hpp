#pragma once

#include <Eigen/Sparse>
#include <array>

#include "qcert/assembly.hpp"
#include "qcert/certificate.hpp"

namespace qcert {

/// Element partition by the indicator test function: all-positive,
/// all-nonpositive, and sign-changing elements.
struct ElementPartition {
    std::vector<int> t_plus, t_minus, t_c;
};

/// v(a) = 1 where w(a) > 0, else 0; forced 0 on Dirichlet vertices.
DiscreteField indicator_test_function(const Mesh1D& mesh, const DiscreteField& w);
DiscreteField indicator_test_function(const TriMesh2D& mesh, const DiscreteField& w);

ElementPartition partition_elements(const Mesh1D& mesh, const DiscreteField& w);
ElementPartition partition_elements(const TriMesh2D& mesh, const DiscreteField& w);

struct SideVerdict {
    bool holds = false;
    double worst_entry = 0.0; ///< most violating residual entry
    int worst_vertex = -1;
};

struct PairVerdict {
    SideVerdict sub;          ///< u1 against <= tol
    SideVerdict super;        ///< u2 against >= -tol
    bool comparison_holds = false; ///< u1 <= u2 nodewise within tol
    double max_w = 0.0;       ///< max(u1 - u2) over vertices
};

/// u is a subsolution iff every residual entry against the nonnegative basis
/// functions (which generate the cone V+) is <= tol.
SideVerdict verify_subsolution(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u,
                               double tol, const AssemblyOptions& opts = {});
SideVerdict verify_subsolution(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u,
                               double tol, const AssemblyOptions& opts = {});
SideVerdict verify_supersolution(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u,
                                 double tol, const AssemblyOptions& opts = {});
SideVerdict verify_supersolution(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u,
                                 double tol, const AssemblyOptions& opts = {});

template <class Mesh>
PairVerdict verify_pair(const CoefficientModel& model, const Mesh& mesh, const DiscreteField& u1,
                        const DiscreteField& u2, double tol, const AssemblyOptions& opts = {}) {
    PairVerdict v;
    v.sub = verify_subsolution(model, mesh, u1, tol, opts);
    v.super = verify_supersolution(model, mesh, u2, tol, opts);
    v.max_w = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u1.values.size(); ++i) v.max_w = std::max(v.max_w, u1.values[i] - u2.values[i]);
    v.comparison_holds = v.max_w <= tol;
    return v;
}

/// int (a(x,u1,grad u1) - a(x,u2,grad u2)).grad v + (b(x,u1) - b(x,u2)) v dx
/// with v = indicator_test_function(u1 - u2), by quadrature. For a genuine
/// sub/supersolution pair this is <= 0.
double comparison_lhs(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u1,
                      const DiscreteField& u2, const AssemblyOptions& opts = {});
double comparison_lhs(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u1,
                      const DiscreteField& u2, const AssemblyOptions& opts = {});

enum class TcCase { one_positive, two_positive };

/// Per-element (lhs, rhs) for the three bounding estimates on a sign-changing
/// element: the diffusion term, the eta-variation term, and the lower-order
/// term. rhs values use the selected BoundMode.
struct LemmaRecord {
    int elem = -1;
    TcCase tc_case = TcCase::one_positive;
    std::array<int, 3> ordered; ///< global vertex ids with w(i) >= w(j) >= w(k)
    double p_T = 0.0;           ///< lambda0 cos(theta_j) - Lambda1 C_f [- Lambda2 C_g]
    double diffusion_lhs = 0.0, diffusion_rhs = 0.0;
    double eta_lhs = 0.0, eta_rhs = 0.0;
    double lower_lhs = 0.0, lower_rhs = 0.0;
};

/// Requires elem in T_c of u1 - u2; ties in the vertex ordering broken by
/// ascending global vertex index. The x-integrals use a degree-10 rule and
/// the convex-combination integral 5-point Gauss, independent of the
/// assembly defaults.
LemmaRecord lemma_bound_check(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u1,
                              const DiscreteField& u2, int elem, const ConstantsBundle& bundle,
                              GMode g_route = GMode::bounded_derivative,
                              BoundMode mode = BoundMode::corrected);

struct AbsIntegral {
    double exact = 0.0; ///< int_T |w|, by zero-line sub-triangulation (exact for P1)
    double bound = 0.0; ///< Cw * delta_T(w) * |T| in the selected mode
    bool sign_changing = false;
};

AbsIntegral abs_integral_bound(const std::array<Vec2, 3>& tri, const std::array<double, 3>& w,
                               BoundMode mode = BoundMode::corrected);
AbsIntegral abs_integral_bound(const TriMesh2D& mesh, const DiscreteField& w, int elem,
                               BoundMode mode = BoundMode::corrected);

struct InverseVerdict {
    bool nonnegative = false;
    double min_entry = 0.0;
    int arg_row = -1, arg_col = -1;
};

/// Dense inverse; verdict true iff all entries >= -1e-10.
/// Throws for singular matrices or dimensions above the dense limit.
InverseVerdict inverse_nonnegativity(const Eigen::SparseMatrix<double>& matrix, int dense_limit = 500);

} // namespace qcert
