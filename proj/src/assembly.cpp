#include "qcert/assembly.hpp"

#include <vector>

#include "qcert/errors.hpp"
#include "qcert/quadrature.hpp"

namespace qcert {

namespace {

void check_field(const DiscreteField& u, int nv, const char* where) {
    if (static_cast<int>(u.values.size()) != nv)
        throw ConfigError(std::string(where) + ": field size does not match mesh vertex count");
}

} // namespace

DofMap make_dof_map(const Mesh1D& mesh) {
    DofMap map;
    map.vertex_to_free.assign(mesh.n_vertices(), -1);
    for (int i = 0; i < mesh.n_vertices(); ++i) {
        if (!mesh.vertex_on_dirichlet(i)) {
            map.vertex_to_free[i] = map.n_free++;
            map.free_to_vertex.push_back(i);
        }
    }
    return map;
}

DofMap make_dof_map(const TriMesh2D& mesh) {
    DofMap map;
    map.vertex_to_free.assign(mesh.n_vertices(), -1);
    for (int i = 0; i < mesh.n_vertices(); ++i) {
        if (!mesh.vertex_on_dirichlet(i)) {
            map.vertex_to_free[i] = map.n_free++;
            map.free_to_vertex.push_back(i);
        }
    }
    return map;
}

// ---------------------------------------------------------------- 1D paths

Eigen::VectorXd assemble_residual(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u,
                                  const AssemblyOptions& opts) {
    check_field(u, mesh.n_vertices(), "assemble_residual");
    const DofMap dofs = make_dof_map(mesh);
    const IntervalRule& rule = gauss_interval(opts.interval_points);

    Eigen::VectorXd R = Eigen::VectorXd::Zero(dofs.n_free);
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const double a = mesh.nodes[k], h = mesh.h(k);
        const double u0 = u.values[k], u1 = u.values[k + 1];
        const double du = (u1 - u0) / h;
        const double grad_phi[2] = {-1.0 / h, 1.0 / h};
        for (std::size_t q = 0; q < rule.point.size(); ++q) {
            const double t = rule.point[q];
            const Vec2 x{a + t * h, 0.0};
            const double uq = (1.0 - t) * u0 + t * u1;
            const FluxEval fe = eval_flux(model, x, uq, Vec2{du, 0.0});
            const double bq = model.b_val(x, uq);
            const double basis[2] = {1.0 - t, t};
            for (int l = 0; l < 2; ++l) {
                const int fi = dofs.vertex_to_free[k + l];
                if (fi >= 0) R[fi] += h * rule.weight[q] * (fe.a.x * grad_phi[l] + bq * basis[l]);
            }
        }
    }
    // Problem-level psi fills in where the mesh supplies no datum.
    if (!mesh.dirichlet_left) {
        const int fi = dofs.vertex_to_free[0];
        R[fi] -= mesh.psi_left != 0.0 ? mesh.psi_left : opts.psi_default;
    }
    if (!mesh.dirichlet_right) {
        const int fi = dofs.vertex_to_free[mesh.n_vertices() - 1];
        R[fi] -= mesh.psi_right != 0.0 ? mesh.psi_right : opts.psi_default;
    }
    return R;
}

Eigen::SparseMatrix<double> assemble_jacobian(const CoefficientModel& model, const Mesh1D& mesh,
                                              const DiscreteField& u, const AssemblyOptions& opts) {
    check_field(u, mesh.n_vertices(), "assemble_jacobian");
    const DofMap dofs = make_dof_map(mesh);
    const IntervalRule& rule = gauss_interval(opts.interval_points);

    std::vector<Eigen::Triplet<double>> trips;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const double a = mesh.nodes[k], h = mesh.h(k);
        const double u0 = u.values[k], u1 = u.values[k + 1];
        const double du = (u1 - u0) / h;
        const double grad_phi[2] = {-1.0 / h, 1.0 / h};
        for (std::size_t q = 0; q < rule.point.size(); ++q) {
            const double t = rule.point[q];
            const Vec2 x{a + t * h, 0.0};
            const double uq = (1.0 - t) * u0 + t * u1;
            const FluxEval fe = eval_flux(model, x, uq, Vec2{du, 0.0});
            const double dbq = model.db_val(x, uq);
            const double basis[2] = {1.0 - t, t};
            for (int j = 0; j < 2; ++j) {
                const int fj = dofs.vertex_to_free[k + j];
                if (fj < 0) continue;
                for (int i = 0; i < 2; ++i) {
                    const int fi = dofs.vertex_to_free[k + i];
                    if (fi < 0) continue;
                    const double val = fe.da_dxi.a11 * grad_phi[i] * grad_phi[j] +
                                       fe.dA_deta * basis[i] * du * grad_phi[j] +
                                       dbq * basis[i] * basis[j];
                    trips.emplace_back(fj, fi, h * rule.weight[q] * val);
                }
            }
        }
    }
    Eigen::SparseMatrix<double> J(dofs.n_free, dofs.n_free);
    J.setFromTriplets(trips.begin(), trips.end());
    return J;
}

SemilinearSystem assemble_semilinear_system(const CoefficientModel& model, const Mesh1D& mesh,
                                            const DiscreteField& u1, const DiscreteField& u2,
                                            const AssemblyOptions& opts) {
    if (!model.semilinear)
        throw ConfigError("assemble_semilinear_system: model is not semilinear (A must be identically 1)");
    check_field(u1, mesh.n_vertices(), "assemble_semilinear_system");
    check_field(u2, mesh.n_vertices(), "assemble_semilinear_system");
    SemilinearSystem sys;
    sys.dofs = make_dof_map(mesh);
    const IntervalRule& rule = gauss_interval(opts.interval_points);
    const IntervalRule& trule = gauss_interval(opts.t_points);

    std::vector<Eigen::Triplet<double>> st, mt;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const double a = mesh.nodes[k], h = mesh.h(k);
        const double grad_phi[2] = {-1.0 / h, 1.0 / h};
        for (int j = 0; j < 2; ++j) {
            const int fj = sys.dofs.vertex_to_free[k + j];
            if (fj < 0) continue;
            for (int i = 0; i < 2; ++i) {
                const int fi = sys.dofs.vertex_to_free[k + i];
                if (fi < 0) continue;
                st.emplace_back(fj, fi, h * grad_phi[i] * grad_phi[j]);
                double mass = 0.0;
                for (std::size_t q = 0; q < rule.point.size(); ++q) {
                    const double t = rule.point[q];
                    const Vec2 x{a + t * h, 0.0};
                    const double v1 = (1.0 - t) * u1.values[k] + t * u1.values[k + 1];
                    const double v2 = (1.0 - t) * u2.values[k] + t * u2.values[k + 1];
                    double db_bar = 0.0;
                    for (std::size_t qt = 0; qt < trule.point.size(); ++qt) {
                        const double s = trule.point[qt];
                        db_bar += trule.weight[qt] * model.db_val(x, s * v1 + (1.0 - s) * v2);
                    }
                    const double basis[2] = {1.0 - t, t};
                    mass += h * rule.weight[q] * db_bar * basis[i] * basis[j];
                }
                mt.emplace_back(fj, fi, mass);
            }
        }
    }
    sys.stiffness.resize(sys.dofs.n_free, sys.dofs.n_free);
    sys.stiffness.setFromTriplets(st.begin(), st.end());
    sys.mass.resize(sys.dofs.n_free, sys.dofs.n_free);
    sys.mass.setFromTriplets(mt.begin(), mt.end());
    return sys;
}

// ---------------------------------------------------------------- 2D paths

namespace {

double edge_psi(const BoundaryEdge& be, const AssemblyOptions& opts) {
    return be.psi != 0.0 ? be.psi : opts.psi_default;
}

} // namespace

Eigen::VectorXd assemble_residual(const CoefficientModel& model, const TriMesh2D& mesh,
                                  const DiscreteField& u, const AssemblyOptions& opts) {
    check_field(u, mesh.n_vertices(), "assemble_residual");
    const DofMap dofs = make_dof_map(mesh);
    const TriangleRule& rule = triangle_rule(opts.triangle_degree);

    Eigen::VectorXd R = Eigen::VectorXd::Zero(dofs.n_free);
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto coords = mesh.triangle_coords(t);
        const auto grads = basis_gradients(coords);
        const double area = triangle_area(coords);
        const auto& tri = mesh.triangles[t];

        Vec2 grad_u{0.0, 0.0};
        for (int l = 0; l < 3; ++l) grad_u = grad_u + u.values[tri[l]] * grads[l];

        for (std::size_t q = 0; q < rule.bary.size(); ++q) {
            const auto& b = rule.bary[q];
            const Vec2 x = b[0] * coords[0] + b[1] * coords[1] + b[2] * coords[2];
            const double uq = b[0] * u.values[tri[0]] + b[1] * u.values[tri[1]] + b[2] * u.values[tri[2]];
            const FluxEval fe = eval_flux(model, x, uq, grad_u);
            const double bq = model.b_val(x, uq);
            for (int l = 0; l < 3; ++l) {
                const int fl = dofs.vertex_to_free[tri[l]];
                if (fl >= 0) R[fl] += area * rule.weight[q] * (dot(fe.a, grads[l]) + bq * b[l]);
            }
        }
    }

    for (const auto& be : mesh.boundary) {
        if (be.kind != BoundaryKind::neumann) continue;
        const double psi = edge_psi(be, opts);
        const double len = norm(mesh.vertices[be.b] - mesh.vertices[be.a]);
        for (int v : {be.a, be.b}) {
            const int fv = dofs.vertex_to_free[v];
            if (fv >= 0) R[fv] -= psi * len / 2.0;
        }
    }
    return R;
}

Eigen::SparseMatrix<double> assemble_jacobian(const CoefficientModel& model, const TriMesh2D& mesh,
                                              const DiscreteField& u, const AssemblyOptions& opts) {
    check_field(u, mesh.n_vertices(), "assemble_jacobian");
    const DofMap dofs = make_dof_map(mesh);
    const TriangleRule& rule = triangle_rule(opts.triangle_degree);

    std::vector<Eigen::Triplet<double>> trips;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto coords = mesh.triangle_coords(t);
        const auto grads = basis_gradients(coords);
        const double area = triangle_area(coords);
        const auto& tri = mesh.triangles[t];

        Vec2 grad_u{0.0, 0.0};
        for (int l = 0; l < 3; ++l) grad_u = grad_u + u.values[tri[l]] * grads[l];

        for (std::size_t q = 0; q < rule.bary.size(); ++q) {
            const auto& b = rule.bary[q];
            const Vec2 x = b[0] * coords[0] + b[1] * coords[1] + b[2] * coords[2];
            const double uq = b[0] * u.values[tri[0]] + b[1] * u.values[tri[1]] + b[2] * u.values[tri[2]];
            const FluxEval fe = eval_flux(model, x, uq, grad_u);
            const double dbq = model.db_val(x, uq);
            for (int j = 0; j < 3; ++j) {
                const int fj = dofs.vertex_to_free[tri[j]];
                if (fj < 0) continue;
                for (int i = 0; i < 3; ++i) {
                    const int fi = dofs.vertex_to_free[tri[i]];
                    if (fi < 0) continue;
                    const double val = dot(fe.da_dxi * grads[i], grads[j]) +
                                       fe.dA_deta * b[i] * dot(grad_u, grads[j]) + dbq * b[i] * b[j];
                    trips.emplace_back(fj, fi, area * rule.weight[q] * val);
                }
            }
        }
    }
    Eigen::SparseMatrix<double> J(dofs.n_free, dofs.n_free);
    J.setFromTriplets(trips.begin(), trips.end());
    return J;
}

SemilinearSystem assemble_semilinear_system(const CoefficientModel& model, const TriMesh2D& mesh,
                                            const DiscreteField& u1, const DiscreteField& u2,
                                            const AssemblyOptions& opts) {
    if (!model.semilinear)
        throw ConfigError("assemble_semilinear_system: model is not semilinear (A must be identically 1)");
    check_field(u1, mesh.n_vertices(), "assemble_semilinear_system");
    check_field(u2, mesh.n_vertices(), "assemble_semilinear_system");
    SemilinearSystem sys;
    sys.dofs = make_dof_map(mesh);
    const TriangleRule& rule = triangle_rule(opts.triangle_degree);
    const IntervalRule& trule = gauss_interval(opts.t_points);

    std::vector<Eigen::Triplet<double>> st, mt;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto coords = mesh.triangle_coords(t);
        const auto grads = basis_gradients(coords);
        const double area = triangle_area(coords);
        const auto& tri = mesh.triangles[t];

        for (int j = 0; j < 3; ++j) {
            const int fj = sys.dofs.vertex_to_free[tri[j]];
            if (fj < 0) continue;
            for (int i = 0; i < 3; ++i) {
                const int fi = sys.dofs.vertex_to_free[tri[i]];
                if (fi < 0) continue;
                st.emplace_back(fj, fi, area * dot(grads[i], grads[j]));
                double mass = 0.0;
                for (std::size_t q = 0; q < rule.bary.size(); ++q) {
                    const auto& b = rule.bary[q];
                    const Vec2 x = b[0] * coords[0] + b[1] * coords[1] + b[2] * coords[2];
                    const double v1 =
                        b[0] * u1.values[tri[0]] + b[1] * u1.values[tri[1]] + b[2] * u1.values[tri[2]];
                    const double v2 =
                        b[0] * u2.values[tri[0]] + b[1] * u2.values[tri[1]] + b[2] * u2.values[tri[2]];
                    double db_bar = 0.0;
                    for (std::size_t qt = 0; qt < trule.point.size(); ++qt) {
                        const double s = trule.point[qt];
                        db_bar += trule.weight[qt] * model.db_val(x, s * v1 + (1.0 - s) * v2);
                    }
                    mass += area * rule.weight[q] * db_bar * b[i] * b[j];
                }
                mt.emplace_back(fj, fi, mass);
            }
        }
    }
    sys.stiffness.resize(sys.dofs.n_free, sys.dofs.n_free);
    sys.stiffness.setFromTriplets(st.begin(), st.end());
    sys.mass.resize(sys.dofs.n_free, sys.dofs.n_free);
    sys.mass.setFromTriplets(mt.begin(), mt.end());
    return sys;
}

} // namespace qcert
