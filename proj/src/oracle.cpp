#include "qcert/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qcert/errors.hpp"
#include "qcert/quadrature.hpp"

namespace qcert {

namespace {

DiscreteField indicator_impl(const DiscreteField& w) {
    DiscreteField v = w;
    for (std::size_t i = 0; i < w.values.size(); ++i)
        v.values[i] = (w.values[i] > 0.0 && !w.dirichlet[i]) ? 1.0 : 0.0;
    return v;
}

Eigen::VectorXd residual_of(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u,
                            const AssemblyOptions& opts) {
    return assemble_residual(model, mesh, u, opts);
}
Eigen::VectorXd residual_of(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u,
                            const AssemblyOptions& opts) {
    return assemble_residual(model, mesh, u, opts);
}

template <class Mesh>
SideVerdict side_verdict(const CoefficientModel& model, const Mesh& mesh, const DiscreteField& u, double tol,
                         const AssemblyOptions& opts, bool subsolution) {
    const Eigen::VectorXd R = residual_of(model, mesh, u, opts);
    const DofMap dofs = make_dof_map(mesh);
    SideVerdict v;
    v.holds = true;
    double worst = 0.0;
    for (int i = 0; i < dofs.n_free; ++i) {
        const double excess = subsolution ? R[i] : -R[i];
        if (excess > worst) {
            worst = excess;
            v.worst_entry = R[i];
            v.worst_vertex = dofs.free_to_vertex[i];
        }
        if (excess > tol) v.holds = false;
    }
    return v;
}

} // namespace

DiscreteField indicator_test_function(const Mesh1D&, const DiscreteField& w) { return indicator_impl(w); }
DiscreteField indicator_test_function(const TriMesh2D&, const DiscreteField& w) { return indicator_impl(w); }

ElementPartition partition_elements(const Mesh1D& mesh, const DiscreteField& w) {
    const DiscreteField v = indicator_impl(w);
    ElementPartition part;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const double v0 = v.values[k], v1 = v.values[k + 1];
        if (v0 == 1.0 && v1 == 1.0)
            part.t_plus.push_back(k);
        else if (v0 == 0.0 && v1 == 0.0)
            part.t_minus.push_back(k);
        else
            part.t_c.push_back(k);
    }
    return part;
}

ElementPartition partition_elements(const TriMesh2D& mesh, const DiscreteField& w) {
    const DiscreteField v = indicator_impl(w);
    ElementPartition part;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto& tri = mesh.triangles[t];
        int ones = 0;
        for (int l = 0; l < 3; ++l) ones += v.values[tri[l]] == 1.0 ? 1 : 0;
        if (ones == 3)
            part.t_plus.push_back(t);
        else if (ones == 0)
            part.t_minus.push_back(t);
        else
            part.t_c.push_back(t);
    }
    return part;
}

SideVerdict verify_subsolution(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u,
                               double tol, const AssemblyOptions& opts) {
    return side_verdict(model, mesh, u, tol, opts, true);
}
SideVerdict verify_subsolution(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u,
                               double tol, const AssemblyOptions& opts) {
    return side_verdict(model, mesh, u, tol, opts, true);
}
SideVerdict verify_supersolution(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u,
                                 double tol, const AssemblyOptions& opts) {
    return side_verdict(model, mesh, u, tol, opts, false);
}
SideVerdict verify_supersolution(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u,
                                 double tol, const AssemblyOptions& opts) {
    return side_verdict(model, mesh, u, tol, opts, false);
}

double comparison_lhs(const CoefficientModel& model, const Mesh1D& mesh, const DiscreteField& u1,
                      const DiscreteField& u2, const AssemblyOptions& opts) {
    DiscreteField w = u1;
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] -= u2.values[i];
    const DiscreteField v = indicator_impl(w);
    const IntervalRule& rule = gauss_interval(opts.interval_points);

    double total = 0.0;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const double a = mesh.nodes[k], h = mesh.h(k);
        const double dv = (v.values[k + 1] - v.values[k]) / h;
        const double du1 = (u1.values[k + 1] - u1.values[k]) / h;
        const double du2 = (u2.values[k + 1] - u2.values[k]) / h;
        for (std::size_t q = 0; q < rule.point.size(); ++q) {
            const double t = rule.point[q];
            const Vec2 x{a + t * h, 0.0};
            const double e1 = (1.0 - t) * u1.values[k] + t * u1.values[k + 1];
            const double e2 = (1.0 - t) * u2.values[k] + t * u2.values[k + 1];
            const double vq = (1.0 - t) * v.values[k] + t * v.values[k + 1];
            const double a1 = model.A(x, e1, std::abs(du1)) * du1;
            const double a2 = model.A(x, e2, std::abs(du2)) * du2;
            total += h * rule.weight[q] * ((a1 - a2) * dv + (model.b_val(x, e1) - model.b_val(x, e2)) * vq);
        }
    }
    return total;
}

double comparison_lhs(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u1,
                      const DiscreteField& u2, const AssemblyOptions& opts) {
    DiscreteField w = u1;
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] -= u2.values[i];
    const DiscreteField v = indicator_impl(w);
    const TriangleRule& rule = triangle_rule(opts.triangle_degree);

    double total = 0.0;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto coords = mesh.triangle_coords(t);
        const auto grads = basis_gradients(coords);
        const double area = triangle_area(coords);
        const auto& tri = mesh.triangles[t];

        Vec2 g1{0, 0}, g2{0, 0}, gv{0, 0};
        for (int l = 0; l < 3; ++l) {
            g1 = g1 + u1.values[tri[l]] * grads[l];
            g2 = g2 + u2.values[tri[l]] * grads[l];
            gv = gv + v.values[tri[l]] * grads[l];
        }
        for (std::size_t q = 0; q < rule.bary.size(); ++q) {
            const auto& b = rule.bary[q];
            const Vec2 x = b[0] * coords[0] + b[1] * coords[1] + b[2] * coords[2];
            double e1 = 0.0, e2 = 0.0, vq = 0.0;
            for (int l = 0; l < 3; ++l) {
                e1 += b[l] * u1.values[tri[l]];
                e2 += b[l] * u2.values[tri[l]];
                vq += b[l] * v.values[tri[l]];
            }
            const Vec2 a1 = model.A(x, e1, norm(g1)) * g1;
            const Vec2 a2 = model.A(x, e2, norm(g2)) * g2;
            total += area * rule.weight[q] *
                     (dot(a1 - a2, gv) + (model.b_val(x, e1) - model.b_val(x, e2)) * vq);
        }
    }
    return total;
}

LemmaRecord lemma_bound_check(const CoefficientModel& model, const TriMesh2D& mesh, const DiscreteField& u1,
                              const DiscreteField& u2, int elem, const ConstantsBundle& bundle,
                              GMode g_route, BoundMode mode) {
    const auto& tri = mesh.triangles[elem];
    std::array<double, 3> wv;
    for (int l = 0; l < 3; ++l) wv[l] = u1.values[tri[l]] - u2.values[tri[l]];

    // Local index order with w(i) >= w(j) >= w(k); ties by global vertex id.
    std::array<int, 3> loc = {0, 1, 2};
    std::sort(loc.begin(), loc.end(), [&](int a, int b) {
        if (wv[a] != wv[b]) return wv[a] > wv[b];
        return tri[a] < tri[b];
    });
    const int li = loc[0], lj = loc[1], lk = loc[2];
    if (!(wv[li] > 0.0) || !(wv[lk] <= 0.0))
        throw ConfigError("lemma_bound_check: element " + std::to_string(elem) + " is not in T_c");

    LemmaRecord rec;
    rec.elem = elem;
    rec.ordered = {tri[li], tri[lj], tri[lk]};
    rec.tc_case = wv[lj] > 0.0 ? TcCase::two_positive : TcCase::one_positive;

    const auto coords = mesh.triangle_coords(elem);
    const auto grads = basis_gradients(coords);
    const double area = triangle_area(coords);
    const ElementGeometry geom = element_geometry(coords);
    const double sin_j = std::sin(geom.angle[lj]);
    const double cos_j = std::cos(geom.angle[lj]);

    rec.p_T = bundle.lambda0 * cos_j - bundle.Lambda1 * bundle.C_f;
    if (g_route != GMode::relative_growth) rec.p_T -= bundle.Lambda2 * bundle.C_g;
    const double ratio_term =
        mode == BoundMode::paper ? bundle.gamma_a / geom.r_T : bundle.gamma_a * geom.r_T;

    const Vec2 grad_v = rec.tc_case == TcCase::one_positive ? grads[li] : -1.0 * grads[lk];
    Vec2 grad_w{0, 0}, grad_u1{0, 0}, grad_u2{0, 0};
    for (int l = 0; l < 3; ++l) {
        grad_w = grad_w + wv[l] * grads[l];
        grad_u1 = grad_u1 + u1.values[tri[l]] * grads[l];
        grad_u2 = grad_u2 + u2.values[tri[l]] * grads[l];
    }

    const TriangleRule& xrule = triangle_rule(10);
    const IntervalRule& trule = gauss_interval(5);

    double diffusion = 0.0, eta_term = 0.0, lower = 0.0;
    for (std::size_t q = 0; q < xrule.bary.size(); ++q) {
        const auto& b = xrule.bary[q];
        const Vec2 x = b[0] * coords[0] + b[1] * coords[1] + b[2] * coords[2];
        double e1 = 0.0, e2 = 0.0, wq = 0.0, vq = 0.0;
        for (int l = 0; l < 3; ++l) {
            e1 += b[l] * u1.values[tri[l]];
            e2 += b[l] * u2.values[tri[l]];
            wq += b[l] * wv[l];
        }
        vq = rec.tc_case == TcCase::one_positive ? b[li] : 1.0 - b[lk];

        double diff_t = 0.0, eta_t = 0.0, low_t = 0.0;
        for (std::size_t qt = 0; qt < trule.point.size(); ++qt) {
            const double s = trule.point[qt], ws = trule.weight[qt];
            const Vec2 grad_z = s * grad_u1 + (1.0 - s) * grad_u2;
            const double zq = s * e1 + (1.0 - s) * e2;
            const FluxEval fe = eval_flux(model, x, e1, grad_z);
            diff_t += ws * dot(fe.da_dxi * grad_w, grad_v);
            eta_t += ws * model.dA_deta(x, zq, norm(grad_u2)) * wq * dot(grad_u2, grad_v);
            low_t += ws * model.db_val(x, zq) * wq * vq;
        }
        diffusion += area * xrule.weight[q] * diff_t;
        eta_term += area * xrule.weight[q] * eta_t;
        lower += area * xrule.weight[q] * low_t;
    }

    const double dij = wv[li] - wv[lj];
    const double djk = wv[lj] - wv[lk];
    const double delta_w = wv[li] - wv[lk];
    const double delta_u2 = delta_T(mesh, u2, elem);
    const double cw = cw_constant(mode);

    rec.diffusion_lhs = diffusion;
    rec.diffusion_rhs = rec.tc_case == TcCase::one_positive
                            ? (dij * ratio_term + djk * rec.p_T) / (2.0 * sin_j)
                            : (dij * rec.p_T + djk * ratio_term) / (2.0 * sin_j);
    rec.eta_lhs = eta_term;
    rec.eta_rhs = -delta_w * delta_u2 * cw * bundle.K_eta * (1.0 + 1.0 / geom.r_T) / (2.0 * sin_j);
    rec.lower_lhs = lower;
    rec.lower_rhs = -delta_w * cw * bundle.B_eta * area;
    return rec;
}

AbsIntegral abs_integral_bound(const std::array<Vec2, 3>& tri, const std::array<double, 3>& w,
                               BoundMode mode) {
    AbsIntegral out;
    const double area = triangle_area(tri);
    const double wmax = std::max({w[0], w[1], w[2]});
    const double wmin = std::min({w[0], w[1], w[2]});
    out.sign_changing = wmax > 0.0 && wmin <= 0.0;
    out.bound = cw_constant(mode) * (wmax - wmin) * area;

    // half of int over one signed region, reused for +w and -w
    auto signed_part = [&](double sign) {
        // polygon of the region {sign*w >= 0}, walking the triangle boundary
        std::vector<Vec2> poly;
        std::vector<double> vals;
        for (int l = 0; l < 3; ++l) {
            const int m = (l + 1) % 3;
            const double wl = sign * w[l], wm = sign * w[m];
            if (wl >= 0.0) {
                poly.push_back(tri[l]);
                vals.push_back(wl);
            }
            if (wl * wm < 0.0) {
                const double t = wl / (wl - wm);
                poly.push_back(tri[l] + t * (tri[m] - tri[l]));
                vals.push_back(0.0);
            }
        }
        double integral = 0.0;
        for (std::size_t l = 1; l + 1 < poly.size(); ++l) {
            const double sub =
                std::abs(0.5 * cross(poly[l] - poly[0], poly[l + 1] - poly[0]));
            integral += sub * (vals[0] + vals[l] + vals[l + 1]) / 3.0;
        }
        return integral;
    };

    out.exact = signed_part(1.0) + signed_part(-1.0);
    return out;
}

AbsIntegral abs_integral_bound(const TriMesh2D& mesh, const DiscreteField& w, int elem, BoundMode mode) {
    const auto& tri = mesh.triangles[elem];
    return abs_integral_bound(mesh.triangle_coords(elem),
                              {w.values[tri[0]], w.values[tri[1]], w.values[tri[2]]}, mode);
}

InverseVerdict inverse_nonnegativity(const Eigen::SparseMatrix<double>& matrix, int dense_limit) {
    if (matrix.rows() != matrix.cols()) throw ConfigError("inverse_nonnegativity: matrix must be square");
    if (matrix.rows() > dense_limit)
        throw ConfigError("inverse_nonnegativity: dimension " + std::to_string(matrix.rows()) +
                          " exceeds dense limit " + std::to_string(dense_limit));
    const Eigen::MatrixXd dense = Eigen::MatrixXd(matrix);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(dense);
    if (!lu.isInvertible()) throw ValidationError("inverse_nonnegativity: singular matrix");
    const Eigen::MatrixXd inv = lu.inverse();

    InverseVerdict v;
    v.min_entry = std::numeric_limits<double>::infinity();
    for (int i = 0; i < inv.rows(); ++i) {
        for (int j = 0; j < inv.cols(); ++j) {
            if (inv(i, j) < v.min_entry) {
                v.min_entry = inv(i, j);
                v.arg_row = i;
                v.arg_col = j;
            }
        }
    }
    v.nonnegative = v.min_entry >= -1e-10;
    return v;
}

} // namespace qcert
