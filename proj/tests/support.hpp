#pragma once

#include <random>

#include "qcert/field.hpp"
#include "qcert/mesh.hpp"

namespace qcert::testing {

/// Strictly acute eight-triangle triangulation of the unit square
/// (angles within [9.17, 85.42] degrees). Bottom edges Dirichlet,
/// the rest Neumann with the given datum.
inline TriMesh2D acute_square_mesh(double psi = 0.0, bool all_dirichlet = false) {
    TriMesh2D mesh;
    mesh.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0},    {0.0, 1.0},
                     {0.5, 0.0}, {0.5, 1.0}, {0.435, 0.19}, {0.565, 0.19}};
    mesh.triangles = {{0, 4, 6}, {4, 7, 6}, {4, 1, 7}, {1, 2, 7},
                      {2, 5, 7}, {5, 6, 7}, {5, 3, 6}, {3, 0, 6}};
    const BoundaryKind rest = all_dirichlet ? BoundaryKind::dirichlet : BoundaryKind::neumann;
    mesh.boundary = {{0, 4, BoundaryKind::dirichlet, 0.0},
                     {4, 1, BoundaryKind::dirichlet, 0.0},
                     {1, 2, rest, psi},
                     {2, 5, rest, psi},
                     {5, 3, rest, psi},
                     {3, 0, rest, psi}};
    validate(mesh);
    return mesh;
}

/// One equilateral element; first edge Dirichlet, others Neumann.
inline TriMesh2D equilateral_mesh(double psi = 0.0, bool all_dirichlet = false) {
    TriMesh2D mesh;
    mesh.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    mesh.triangles = {{0, 1, 2}};
    const BoundaryKind rest = all_dirichlet ? BoundaryKind::dirichlet : BoundaryKind::neumann;
    mesh.boundary = {{0, 1, BoundaryKind::dirichlet, 0.0}, {1, 2, rest, psi}, {2, 0, rest, psi}};
    validate(mesh);
    return mesh;
}

inline std::array<Vec2, 3> random_acute_triangle(std::mt19937_64& rng, double ang_lo = 0.35,
                                                 double ang_hi = 1.45) {
    std::uniform_real_distribution<double> ang(ang_lo, ang_hi);
    double A, B;
    do {
        A = ang(rng);
        B = ang(rng);
    } while (!(M_PI - A - B > ang_lo && M_PI - A - B < ang_hi));
    std::uniform_real_distribution<double> logs(-1.5, 1.5), unit(0.0, 1.0);
    const double c = std::pow(10.0, logs(rng));
    const double b = c * std::sin(B) / std::sin(M_PI - A - B);
    const double rot = 2.0 * M_PI * unit(rng);
    const Vec2 origin{10.0 * (unit(rng) - 0.5), 10.0 * (unit(rng) - 0.5)};
    auto place = [&](Vec2 p) {
        return origin + Vec2{p.x * std::cos(rot) - p.y * std::sin(rot),
                             p.x * std::sin(rot) + p.y * std::cos(rot)};
    };
    return {place({0.0, 0.0}), place({c, 0.0}), place({b * std::cos(A), b * std::sin(A)})};
}

/// Random nodal values in [-amp, amp], zero on the Dirichlet mask.
template <class Mesh>
DiscreteField random_field(const Mesh& mesh, std::mt19937_64& rng, double amp = 1.0) {
    DiscreteField f = zero_field(mesh);
    std::uniform_real_distribution<double> val(-amp, amp);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (!f.dirichlet[i]) f.values[i] = val(rng);
    return f;
}

/// Random 1D mesh on [0, length] with n interior spacings drawn log-uniformly.
inline Mesh1D random_interval_mesh(std::mt19937_64& rng, int n_elems, double length = 1.0,
                                   bool dirichlet_left = true, bool dirichlet_right = true) {
    std::uniform_real_distribution<double> logs(-1.0, 0.0);
    std::vector<double> h(n_elems);
    double total = 0.0;
    for (double& hk : h) {
        hk = std::pow(10.0, logs(rng));
        total += hk;
    }
    std::vector<double> nodes(n_elems + 1, 0.0);
    for (int k = 0; k < n_elems; ++k) nodes[k + 1] = nodes[k] + h[k] * (length / total);
    nodes.back() = length;
    return build_interval_mesh(std::move(nodes), dirichlet_left, dirichlet_right);
}

} // namespace qcert::testing
