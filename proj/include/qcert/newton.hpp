#pragma once

#include <string>
#include <vector>

#include "qcert/assembly.hpp"

namespace qcert {

struct NewtonConfig {
    double tol = 1e-12;          ///< l2 residual norm target
    int max_iter = 50;
    bool damping = true;         ///< backtracking line search, factor 1/2
    double min_step = 9.5367431640625e-7; ///< 2^-20
    AssemblyOptions assembly;
};

struct IterationRecord {
    int iter = 0;
    double residual_norm = 0.0;
    double step = 1.0; ///< accepted damping factor
};

struct SolveResult {
    DiscreteField field;
    int iterations = 0;
    double residual_norm = 0.0;
    bool converged = false;
    std::vector<IterationRecord> history;
    std::string failure; ///< nonempty on linear-solve failure or stall
};

/// Damped Newton on the discrete residual; Dirichlet rows are eliminated.
/// Accepts any residual decrease; non-convergence is reported, not thrown.
SolveResult solve_newton(const CoefficientModel& model, const Mesh1D& mesh, const NewtonConfig& config,
                         const DiscreteField& u0);
SolveResult solve_newton(const CoefficientModel& model, const TriMesh2D& mesh, const NewtonConfig& config,
                         const DiscreteField& u0);
SolveResult solve_newton(const CoefficientModel& model, const AnyMesh& mesh, const NewtonConfig& config,
                         const DiscreteField& u0);

} // namespace qcert
