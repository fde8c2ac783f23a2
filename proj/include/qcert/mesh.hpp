#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qcert/geometry.hpp"

namespace qcert {

enum class BoundaryKind { dirichlet, neumann };

/// Partition of an interval (alpha, beta) into subintervals I_k = (a_{k-1}, a_k).
/// Meshes are immutable after construction; refinement produces a new mesh.
struct Mesh1D {
    std::vector<double> nodes; ///< strictly increasing
    bool dirichlet_left = true;
    bool dirichlet_right = true;
    double psi_left = 0.0;  ///< Neumann datum, used only when the left end is not Dirichlet
    double psi_right = 0.0; ///< likewise for the right end

    int n_vertices() const { return static_cast<int>(nodes.size()); }
    int n_elements() const { return static_cast<int>(nodes.size()) - 1; }
    double h(int k) const { return nodes[k + 1] - nodes[k]; } ///< length of I_{k+1}, k 0-based
    bool vertex_on_dirichlet(int i) const {
        return (i == 0 && dirichlet_left) || (i == n_vertices() - 1 && dirichlet_right);
    }
};

struct BoundaryEdge {
    int a = 0;
    int b = 0; ///< second vertex; unused in 1D entries
    BoundaryKind kind = BoundaryKind::dirichlet;
    double psi = 0.0; ///< Neumann datum on this edge; ignored for Dirichlet
};

/// Conforming triangulation with counterclockwise elements and marked boundary.
struct TriMesh2D {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary;
    std::vector<std::uint8_t> on_dirichlet; ///< per vertex; filled by validate()

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_elements() const { return static_cast<int>(triangles.size()); }
    std::array<Vec2, 3> triangle_coords(int t) const {
        const auto& tr = triangles[t];
        return {vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]};
    }
    bool vertex_on_dirichlet(int i) const { return on_dirichlet[i] != 0; }
};

using AnyMesh = std::variant<Mesh1D, TriMesh2D>;

/// Extreme interior angles over the mesh and the strict acuteness verdict.
struct GlobalMeshQuality {
    double t_min = 0.0;
    double t_max = 0.0;
    double s_min = 0.0; ///< sin(t_min)
    double c_min = 1.0; ///< cos(t_max)
    bool acute = true;
    std::vector<int> worst_elements; ///< elements attaining t_min or t_max
};

/// Throws ValidationError on any invariant violation.
void validate(const Mesh1D& mesh);

/// Checks conformity, orientation, boundary cover and the Dirichlet set;
/// fills on_dirichlet. Throws ValidationError.
void validate(TriMesh2D& mesh);

Mesh1D build_interval_mesh(std::vector<double> nodes, bool dirichlet_left, bool dirichlet_right);

GlobalMeshQuality mesh_quality(const Mesh1D& mesh);
GlobalMeshQuality mesh_quality(const TriMesh2D& mesh);
GlobalMeshQuality mesh_quality(const AnyMesh& mesh);

/// 1D: every interval halved.
Mesh1D refine_uniform(const Mesh1D& mesh);
/// 2D: red refinement; children similar to the parent, markers inherited.
TriMesh2D refine_uniform(const TriMesh2D& mesh);
AnyMesh refine_uniform(const AnyMesh& mesh);

AnyMesh load_mesh(const std::string& path);
Mesh1D load_mesh_1d(const std::string& path);
TriMesh2D load_mesh_2d(const std::string& path);
void save_mesh(const Mesh1D& mesh, const std::string& path);
void save_mesh(const TriMesh2D& mesh, const std::string& path);
void save_mesh(const AnyMesh& mesh, const std::string& path);

} // namespace qcert
