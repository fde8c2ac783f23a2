#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcert/mesh.hpp"

namespace qcert {

/// Nodal values of a piecewise-linear function; one scalar per mesh vertex.
/// The Dirichlet problems here are homogeneous, so masked entries are 0.
struct DiscreteField {
    std::vector<double> values;
    std::vector<std::uint8_t> dirichlet; ///< mask copied from the mesh

    std::size_t size() const { return values.size(); }
    void enforce_dirichlet() {
        for (std::size_t i = 0; i < values.size(); ++i)
            if (dirichlet[i]) values[i] = 0.0;
    }
    bool respects_dirichlet(double tol = 0.0) const {
        for (std::size_t i = 0; i < values.size(); ++i)
            if (dirichlet[i] && std::abs(values[i]) > tol) return false;
        return true;
    }
};

DiscreteField zero_field(const Mesh1D& mesh);
DiscreteField zero_field(const TriMesh2D& mesh);
DiscreteField zero_field(const AnyMesh& mesh);

/// Format: header `field <vertex-count>` then one value per line.
DiscreteField load_field(const std::string& path, const AnyMesh& mesh);
void save_field(const DiscreteField& field, const std::string& path);

} // namespace qcert
