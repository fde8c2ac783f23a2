#include "qcert/newton.hpp"

#include <Eigen/SparseLU>

namespace qcert {

namespace {

template <class Mesh>
SolveResult newton_impl(const CoefficientModel& model, const Mesh& mesh, const NewtonConfig& config,
                        const DiscreteField& u0) {
    SolveResult result;
    result.field = u0;
    result.field.enforce_dirichlet();

    const DofMap dofs = make_dof_map(mesh);
    auto gather = [&](const DiscreteField& f) {
        Eigen::VectorXd v(dofs.n_free);
        for (int i = 0; i < dofs.n_free; ++i) v[i] = f.values[dofs.free_to_vertex[i]];
        return v;
    };
    auto scatter = [&](const Eigen::VectorXd& v, DiscreteField& f) {
        for (int i = 0; i < dofs.n_free; ++i) f.values[dofs.free_to_vertex[i]] = v[i];
    };

    Eigen::VectorXd R = assemble_residual(model, mesh, result.field, config.assembly);
    double rnorm = R.norm();
    result.history.push_back({0, rnorm, 1.0});

    for (int it = 0; it < config.max_iter; ++it) {
        if (rnorm <= config.tol) {
            result.converged = true;
            break;
        }
        const Eigen::SparseMatrix<double> J = assemble_jacobian(model, mesh, result.field, config.assembly);
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success) {
            result.failure = "singular Jacobian at iteration " + std::to_string(it);
            break;
        }
        const Eigen::VectorXd delta = lu.solve(-R);

        const Eigen::VectorXd base = gather(result.field);
        double step = 1.0;
        DiscreteField trial = result.field;
        double trial_norm = rnorm;
        Eigen::VectorXd trial_R;
        bool accepted = false;
        while (step >= config.min_step) {
            scatter(base + step * delta, trial);
            trial_R = assemble_residual(model, mesh, trial, config.assembly);
            trial_norm = trial_R.norm();
            if (trial_norm < rnorm || !config.damping) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            result.failure = "line search stalled at iteration " + std::to_string(it);
            break;
        }
        result.field = trial;
        R = trial_R;
        rnorm = trial_norm;
        result.iterations = it + 1;
        result.history.push_back({it + 1, rnorm, step});
        if (rnorm <= config.tol) {
            result.converged = true;
            break;
        }
    }
    if (rnorm <= config.tol) result.converged = true;
    result.residual_norm = rnorm;
    return result;
}

} // namespace

SolveResult solve_newton(const CoefficientModel& model, const Mesh1D& mesh, const NewtonConfig& config,
                         const DiscreteField& u0) {
    return newton_impl(model, mesh, config, u0);
}

SolveResult solve_newton(const CoefficientModel& model, const TriMesh2D& mesh, const NewtonConfig& config,
                         const DiscreteField& u0) {
    return newton_impl(model, mesh, config, u0);
}

SolveResult solve_newton(const CoefficientModel& model, const AnyMesh& mesh, const NewtonConfig& config,
                         const DiscreteField& u0) {
    return std::visit([&](const auto& m) { return solve_newton(model, m, config, u0); }, mesh);
}

} // namespace qcert
