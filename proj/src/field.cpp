#include "qcert/field.hpp"

#include <cstdio>
#include <fstream>

#include "qcert/errors.hpp"

namespace qcert {

DiscreteField zero_field(const Mesh1D& mesh) {
    DiscreteField f;
    f.values.assign(mesh.n_vertices(), 0.0);
    f.dirichlet.assign(mesh.n_vertices(), 0);
    if (mesh.dirichlet_left) f.dirichlet.front() = 1;
    if (mesh.dirichlet_right) f.dirichlet.back() = 1;
    return f;
}

DiscreteField zero_field(const TriMesh2D& mesh) {
    DiscreteField f;
    f.values.assign(mesh.n_vertices(), 0.0);
    f.dirichlet = mesh.on_dirichlet;
    return f;
}

DiscreteField zero_field(const AnyMesh& mesh) {
    return std::visit([](const auto& m) { return zero_field(m); }, mesh);
}

DiscreteField load_field(const std::string& path, const AnyMesh& mesh) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open field file '" + path + "'");
    std::string header;
    std::size_t count = 0;
    if (!(in >> header >> count) || header != "field")
        throw ParseError("field file '" + path + "': expected header 'field <count>'");
    DiscreteField f = zero_field(mesh);
    if (count != f.values.size())
        throw ParseError("field file '" + path + "': has " + std::to_string(count) + " values, mesh has " +
                         std::to_string(f.values.size()) + " vertices");
    for (std::size_t i = 0; i < count; ++i) {
        if (!(in >> f.values[i])) throw ParseError("field file '" + path + "': truncated value list");
    }
    return f;
}

void save_field(const DiscreteField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write field file '" + path + "'");
    out << "field " << field.values.size() << "\n";
    char buf[32];
    for (double v : field.values) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << "\n";
    }
}

} // namespace qcert
