#pragma once

#include <Eigen/Sparse>

#include "qcert/field.hpp"
#include "qcert/mesh.hpp"
#include "qcert/problem.hpp"

namespace qcert {

struct AssemblyOptions {
    int triangle_degree = 4; ///< symmetric 6-point rule
    int interval_points = 3; ///< Gauss points per interval
    int t_points = 3;        ///< Gauss points for the convex-combination integrals
    double psi_default = 0.0; ///< Neumann datum where the mesh supplies none
};

/// Indexing of the free (non-Dirichlet) vertices.
struct DofMap {
    std::vector<int> vertex_to_free; ///< -1 for Dirichlet vertices
    std::vector<int> free_to_vertex;
    int n_free = 0;
};

DofMap make_dof_map(const Mesh1D& mesh);
DofMap make_dof_map(const TriMesh2D& mesh);

/// Square sparse system over the free vertices.
struct SparseSystem {
    Eigen::SparseMatrix<double> matrix;
    Eigen::VectorXd rhs;
    DofMap dofs;
};

/// Entry j: int a(x,u,grad u).grad phi_j + b(x,u) phi_j dx - int_GN psi phi_j ds,
/// over free vertices j. The discrete solution is a root.
Eigen::VectorXd assemble_residual(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u,
                                  const AssemblyOptions& opts = {});
Eigen::VectorXd assemble_residual(const CoefficientModel& model, const TriMesh2D& mesh,
                                  const DiscreteField& u, const AssemblyOptions& opts = {});

/// Gateaux derivative of the residual:
/// (j,i) = int (da/dxi grad phi_i).grad phi_j + (dA/deta phi_i) grad u.grad phi_j
///       + (db/deta) phi_i phi_j dx.
Eigen::SparseMatrix<double> assemble_jacobian(const CoefficientModel& model, const Mesh1D& mesh,
                                              const DiscreteField& u, const AssemblyOptions& opts = {});
Eigen::SparseMatrix<double> assemble_jacobian(const CoefficientModel& model, const TriMesh2D& mesh,
                                              const DiscreteField& u, const AssemblyOptions& opts = {});

/// Stiffness S and mass M of the semilinear comparison system, with
/// m_ij weighted by int_0^1 db/deta(x, t u1 + (1-t) u2) dt. Requires A == 1.
struct SemilinearSystem {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::SparseMatrix<double> mass;
    DofMap dofs;
};

SemilinearSystem assemble_semilinear_system(const CoefficientModel& model, const Mesh1D& mesh,
                                            const DiscreteField& u1, const DiscreteField& u2,
                                            const AssemblyOptions& opts = {});
SemilinearSystem assemble_semilinear_system(const CoefficientModel& model, const TriMesh2D& mesh,
                                            const DiscreteField& u1, const DiscreteField& u2,
                                            const AssemblyOptions& opts = {});

} // namespace qcert
