#include "qcert/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

constexpr double kDegenerateAreaFactor = 1e-14; // vs squared diameter

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

} // namespace

void validate(const Mesh1D& mesh) {
    if (mesh.nodes.size() < 2) throw ValidationError("mesh1d: need at least two nodes");
    for (std::size_t k = 1; k < mesh.nodes.size(); ++k)
        if (!(mesh.nodes[k] > mesh.nodes[k - 1]))
            throw ValidationError("mesh1d: non-monotone nodes at position " + std::to_string(k));
    if (!mesh.dirichlet_left && !mesh.dirichlet_right)
        throw ValidationError("mesh1d: empty Dirichlet boundary (both ends Neumann)");
}

void validate(TriMesh2D& mesh) {
    const int nv = mesh.n_vertices();
    if (nv < 3) throw ValidationError("mesh2d: need at least three vertices");

    std::map<std::pair<int, int>, int> edge_count;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto& tr = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            if (tr[i] < 0 || tr[i] >= nv)
                throw ValidationError("mesh2d: triangle " + std::to_string(t) + " vertex index out of range");
        }
        if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])
            throw ValidationError("mesh2d: degenerate triangle " + std::to_string(t) + " (repeated vertex)");

        const auto c = mesh.triangle_coords(t);
        const double area = triangle_area(c);
        double diam2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Vec2 d = c[(i + 1) % 3] - c[i];
            diam2 = std::max(diam2, dot(d, d));
        }
        if (area <= 0.0)
            throw ValidationError("mesh2d: triangle " + std::to_string(t) +
                                  " has nonpositive area (vertices must be counterclockwise)");
        if (area <= kDegenerateAreaFactor * diam2)
            throw ValidationError("mesh2d: degenerate triangle " + std::to_string(t));

        for (int i = 0; i < 3; ++i) ++edge_count[edge_key(tr[i], tr[(i + 1) % 3])];
    }

    for (const auto& [e, cnt] : edge_count)
        if (cnt > 2)
            throw ValidationError("mesh2d: non-conforming mesh, edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ") shared by " + std::to_string(cnt) + " triangles");

    std::map<std::pair<int, int>, int> marked; // edge -> count of boundary entries
    for (const auto& be : mesh.boundary) {
        if (be.a < 0 || be.a >= nv || be.b < 0 || be.b >= nv)
            throw ValidationError("mesh2d: boundary entry references vertex out of range");
        const auto key = edge_key(be.a, be.b);
        auto it = edge_count.find(key);
        if (it == edge_count.end())
            throw ValidationError("mesh2d: boundary entry (" + std::to_string(be.a) + "," + std::to_string(be.b) +
                                  ") is not a mesh edge");
        if (it->second != 1)
            throw ValidationError("mesh2d: boundary entry (" + std::to_string(be.a) + "," + std::to_string(be.b) +
                                  ") marks an interior edge");
        if (++marked[key] > 1)
            throw ValidationError("mesh2d: boundary edge (" + std::to_string(be.a) + "," + std::to_string(be.b) +
                                  ") carries more than one marker");
    }
    for (const auto& [e, cnt] : edge_count) {
        if (cnt == 1 && marked.find(e) == marked.end())
            throw ValidationError("mesh2d: boundary edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ") carries no marker");
    }

    mesh.on_dirichlet.assign(nv, 0);
    bool any_dirichlet = false;
    for (const auto& be : mesh.boundary) {
        if (be.kind == BoundaryKind::dirichlet) {
            mesh.on_dirichlet[be.a] = 1;
            mesh.on_dirichlet[be.b] = 1;
            any_dirichlet = true;
        }
    }
    if (!any_dirichlet) throw ValidationError("mesh2d: empty Dirichlet boundary");
}

Mesh1D build_interval_mesh(std::vector<double> nodes, bool dirichlet_left, bool dirichlet_right) {
    Mesh1D mesh;
    mesh.nodes = std::move(nodes);
    mesh.dirichlet_left = dirichlet_left;
    mesh.dirichlet_right = dirichlet_right;
    validate(mesh);
    return mesh;
}

GlobalMeshQuality mesh_quality(const Mesh1D&) {
    // Intervals carry no angles; the acuteness assumption is vacuous.
    GlobalMeshQuality q;
    q.t_min = 0.0;
    q.t_max = 0.0;
    q.s_min = 0.0;
    q.c_min = 1.0;
    q.acute = true;
    return q;
}

GlobalMeshQuality mesh_quality(const TriMesh2D& mesh) {
    GlobalMeshQuality q;
    q.t_min = M_PI;
    q.t_max = 0.0;
    int arg_min = -1, arg_max = -1;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const ElementGeometry g = element_geometry(mesh.triangle_coords(t));
        for (double a : g.angle) {
            if (a < q.t_min) {
                q.t_min = a;
                arg_min = t;
            }
            if (a > q.t_max) {
                q.t_max = a;
                arg_max = t;
            }
        }
    }
    q.s_min = std::sin(q.t_min);
    q.c_min = std::cos(q.t_max);
    q.acute = (q.t_max < M_PI / 2.0) && (q.t_min > 0.0);
    q.worst_elements.push_back(arg_min);
    if (arg_max != arg_min) q.worst_elements.push_back(arg_max);
    std::sort(q.worst_elements.begin(), q.worst_elements.end());
    return q;
}

GlobalMeshQuality mesh_quality(const AnyMesh& mesh) {
    return std::visit([](const auto& m) { return mesh_quality(m); }, mesh);
}

Mesh1D refine_uniform(const Mesh1D& mesh) {
    Mesh1D out = mesh;
    out.nodes.clear();
    out.nodes.reserve(2 * mesh.nodes.size() - 1);
    for (std::size_t k = 0; k + 1 < mesh.nodes.size(); ++k) {
        out.nodes.push_back(mesh.nodes[k]);
        out.nodes.push_back(0.5 * (mesh.nodes[k] + mesh.nodes[k + 1]));
    }
    out.nodes.push_back(mesh.nodes.back());
    return out;
}

TriMesh2D refine_uniform(const TriMesh2D& mesh) {
    TriMesh2D out;
    out.vertices = mesh.vertices;

    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        const auto key = edge_key(a, b);
        auto it = midpoint.find(key);
        if (it == midpoint.end()) {
            out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
            it = midpoint.emplace(key, static_cast<int>(out.vertices.size()) - 1).first;
        }
        return it->second;
    };

    out.triangles.reserve(4 * mesh.triangles.size());
    for (const auto& tr : mesh.triangles) {
        const int m01 = mid(tr[0], tr[1]);
        const int m12 = mid(tr[1], tr[2]);
        const int m20 = mid(tr[2], tr[0]);
        out.triangles.push_back({tr[0], m01, m20});
        out.triangles.push_back({m01, tr[1], m12});
        out.triangles.push_back({m20, m12, tr[2]});
        out.triangles.push_back({m01, m12, m20});
    }

    for (const auto& be : mesh.boundary) {
        const int m = mid(be.a, be.b);
        out.boundary.push_back({be.a, m, be.kind, be.psi});
        out.boundary.push_back({m, be.b, be.kind, be.psi});
    }
    validate(out);
    return out;
}

AnyMesh refine_uniform(const AnyMesh& mesh) {
    return std::visit([](const auto& m) -> AnyMesh { return refine_uniform(m); }, mesh);
}

namespace {

struct LineReader {
    std::istream& in;
    int lineno = 0;

    /// Next non-empty, non-comment line split into tokens.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("mesh file line " + std::to_string(lineno) + ": " + msg);
    }
};

double parse_double(const LineReader& r, const std::string& tok) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("mesh file line " + std::to_string(r.lineno) + ": bad number '" + tok + "'");
    }
}

int parse_int(const LineReader& r, const std::string& tok) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("mesh file line " + std::to_string(r.lineno) + ": bad integer '" + tok + "'");
    }
}

AnyMesh load_mesh_stream(std::istream& in) {
    LineReader r{in};
    std::vector<std::string> tok;

    if (!r.next(tok) || tok.size() != 2 || tok[0] != "dim") {
        if (tok.empty()) throw ParseError("mesh file: empty file");
        r.fail("expected 'dim <1|2>'");
    }
    const int dim = parse_int(r, tok[1]);
    if (dim != 1 && dim != 2) r.fail("dimension must be 1 or 2");

    if (!r.next(tok) || tok.size() != 2 || tok[0] != "vertices") r.fail("expected 'vertices <count>'");
    const int nv = parse_int(r, tok[1]);
    if (nv < 2) r.fail("need at least two vertices");

    std::vector<Vec2> verts(nv);
    for (int i = 0; i < nv; ++i) {
        if (!r.next(tok)) r.fail("unexpected end of file in vertex list");
        if (static_cast<int>(tok.size()) != dim) r.fail("expected " + std::to_string(dim) + " coordinate(s)");
        verts[i].x = parse_double(r, tok[0]);
        if (dim == 2) verts[i].y = parse_double(r, tok[1]);
    }

    if (dim == 1) {
        Mesh1D mesh;
        mesh.nodes.resize(nv);
        for (int i = 0; i < nv; ++i) mesh.nodes[i] = verts[i].x;
        mesh.dirichlet_left = mesh.dirichlet_right = false;

        if (!r.next(tok) || tok.size() != 2 || tok[0] != "boundary") r.fail("expected 'boundary <count>'");
        const int nb = parse_int(r, tok[1]);
        for (int e = 0; e < nb; ++e) {
            if (!r.next(tok)) r.fail("unexpected end of file in boundary list");
            if (tok.size() < 2) r.fail("1d boundary entries are 'i <D|N> [psi]'");
            const int i = parse_int(r, tok[0]);
            if (i != 0 && i != nv - 1) r.fail("1d boundary entry must name an end vertex");
            const bool dirichlet = tok[1] == "D";
            if (!dirichlet && tok[1] != "N") r.fail("marker must be D or N");
            const double psi = tok.size() > 2 ? parse_double(r, tok[2]) : 0.0;
            if (i == 0) {
                mesh.dirichlet_left = dirichlet;
                if (!dirichlet) mesh.psi_left = psi;
            } else {
                mesh.dirichlet_right = dirichlet;
                if (!dirichlet) mesh.psi_right = psi;
            }
        }
        validate(mesh);
        return mesh;
    }

    TriMesh2D mesh;
    mesh.vertices = std::move(verts);

    if (!r.next(tok) || tok.size() != 2 || tok[0] != "triangles") r.fail("expected 'triangles <count>'");
    const int nt = parse_int(r, tok[1]);
    mesh.triangles.resize(nt);
    for (int t = 0; t < nt; ++t) {
        if (!r.next(tok)) r.fail("unexpected end of file in triangle list");
        if (tok.size() != 3) r.fail("expected 'i j k'");
        for (int c = 0; c < 3; ++c) mesh.triangles[t][c] = parse_int(r, tok[c]);
    }

    if (!r.next(tok) || tok.size() != 2 || tok[0] != "boundary") r.fail("expected 'boundary <count>'");
    const int nb = parse_int(r, tok[1]);
    mesh.boundary.resize(nb);
    for (int e = 0; e < nb; ++e) {
        if (!r.next(tok)) r.fail("unexpected end of file in boundary list");
        if (tok.size() < 3) r.fail("2d boundary entries are 'i j <D|N> [psi]'");
        BoundaryEdge& be = mesh.boundary[e];
        be.a = parse_int(r, tok[0]);
        be.b = parse_int(r, tok[1]);
        if (tok[2] == "D")
            be.kind = BoundaryKind::dirichlet;
        else if (tok[2] == "N")
            be.kind = BoundaryKind::neumann;
        else
            r.fail("marker must be D or N");
        be.psi = tok.size() > 3 ? parse_double(r, tok[3]) : 0.0;
    }
    validate(mesh);
    return mesh;
}

void print_double(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

} // namespace

AnyMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open mesh file '" + path + "'");
    return load_mesh_stream(in);
}

Mesh1D load_mesh_1d(const std::string& path) {
    AnyMesh m = load_mesh(path);
    if (auto* p = std::get_if<Mesh1D>(&m)) return std::move(*p);
    throw ParseError("mesh file '" + path + "' is not one dimensional");
}

TriMesh2D load_mesh_2d(const std::string& path) {
    AnyMesh m = load_mesh(path);
    if (auto* p = std::get_if<TriMesh2D>(&m)) return std::move(*p);
    throw ParseError("mesh file '" + path + "' is not two dimensional");
}

void save_mesh(const Mesh1D& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write mesh file '" + path + "'");
    out << "dim 1\n";
    out << "vertices " << mesh.nodes.size() << "\n";
    for (double x : mesh.nodes) {
        print_double(out, x);
        out << "\n";
    }
    out << "boundary 2\n";
    if (mesh.dirichlet_left)
        out << "0 D\n";
    else {
        out << "0 N ";
        print_double(out, mesh.psi_left);
        out << "\n";
    }
    if (mesh.dirichlet_right)
        out << mesh.nodes.size() - 1 << " D\n";
    else {
        out << mesh.nodes.size() - 1 << " N ";
        print_double(out, mesh.psi_right);
        out << "\n";
    }
}

void save_mesh(const TriMesh2D& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write mesh file '" + path + "'");
    out << "dim 2\n";
    out << "vertices " << mesh.vertices.size() << "\n";
    for (const Vec2& v : mesh.vertices) {
        print_double(out, v.x);
        out << " ";
        print_double(out, v.y);
        out << "\n";
    }
    out << "triangles " << mesh.triangles.size() << "\n";
    for (const auto& t : mesh.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "boundary " << mesh.boundary.size() << "\n";
    for (const auto& be : mesh.boundary) {
        out << be.a << " " << be.b << " ";
        if (be.kind == BoundaryKind::dirichlet)
            out << "D\n";
        else {
            out << "N ";
            print_double(out, be.psi);
            out << "\n";
        }
    }
}

void save_mesh(const AnyMesh& mesh, const std::string& path) {
    std::visit([&](const auto& m) { save_mesh(m, path); }, mesh);
}

} // namespace qcert
