#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qcert/errors.hpp"
#include "qcert/mesh.hpp"
#include "support.hpp"

using namespace qcert;
using qcert::testing::acute_square_mesh;
using qcert::testing::equilateral_mesh;

namespace {

std::string write_temp(const std::string& content) {
    static int counter = 0;
    std::string path = "qcert_test_mesh_" + std::to_string(counter++) + ".txt";
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("load 1d mesh") {
    const std::string path = write_temp("dim 1\nvertices 3\n0\n0.5\n1\nboundary 2\n0 D\n2 D\n");
    const Mesh1D mesh = load_mesh_1d(path);
    CHECK(mesh.n_elements() == 2);
    CHECK(mesh.h(0) == doctest::Approx(0.5));
    CHECK(mesh.h(1) == doctest::Approx(0.5));
    CHECK(mesh.dirichlet_left);
    CHECK(mesh.dirichlet_right);
    std::remove(path.c_str());
}

TEST_CASE("load single-triangle mesh") {
    const std::string path = write_temp(
        "# all-Dirichlet reference triangle\n"
        "dim 2\nvertices 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1 2\nboundary 3\n0 1 D\n1 2 D\n2 0 D\n");
    const TriMesh2D mesh = load_mesh_2d(path);
    CHECK(mesh.n_elements() == 1);
    CHECK(mesh.n_vertices() == 3);
    CHECK(mesh.vertex_on_dirichlet(0));
    std::remove(path.c_str());
}

TEST_CASE("degenerate triangle rejected") {
    const std::string path = write_temp(
        "dim 2\nvertices 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1 1\nboundary 0\n");
    CHECK_THROWS_WITH_AS(load_mesh_2d(path), doctest::Contains("degenerate triangle"), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("clockwise triangle rejected") {
    const std::string path = write_temp(
        "dim 2\nvertices 3\n0 0\n1 0\n0 1\ntriangles 1\n0 2 1\nboundary 3\n0 1 D\n1 2 D\n2 0 D\n");
    CHECK_THROWS_AS(load_mesh_2d(path), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("unmarked boundary edge rejected") {
    const std::string path = write_temp(
        "dim 2\nvertices 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1 2\nboundary 2\n0 1 D\n1 2 D\n");
    CHECK_THROWS_WITH_AS(load_mesh_2d(path), doctest::Contains("no marker"), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("parse error names the line") {
    const std::string path = write_temp("dim 2\nvertices 2\n0 0\nbogus here\n");
    CHECK_THROWS_WITH_AS(load_mesh_2d(path), doctest::Contains("line 4"), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("build_interval_mesh") {
    const Mesh1D mesh = build_interval_mesh({0.0, 0.3, 1.0}, false, true);
    CHECK(mesh.n_elements() == 2);
    CHECK_FALSE(mesh.vertex_on_dirichlet(0));
    CHECK(mesh.vertex_on_dirichlet(2));

    CHECK_THROWS_WITH_AS(build_interval_mesh({0.0, 0.0, 1.0}, true, true), doctest::Contains("non-monotone"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(build_interval_mesh({0.0, 1.0}, false, false),
                         doctest::Contains("empty Dirichlet boundary"), ValidationError);
}

TEST_CASE("mesh quality verdicts") {
    SUBCASE("single equilateral triangle") {
        const GlobalMeshQuality q = mesh_quality(equilateral_mesh());
        CHECK(q.t_min == doctest::Approx(M_PI / 3.0).epsilon(1e-12));
        CHECK(q.t_max == doctest::Approx(M_PI / 3.0).epsilon(1e-12));
        CHECK(q.s_min == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
        CHECK(q.c_min == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(q.acute);
    }
    SUBCASE("right triangle is not acute") {
        TriMesh2D mesh;
        mesh.vertices = {{0, 0}, {1, 0}, {0, 1}};
        mesh.triangles = {{0, 1, 2}};
        mesh.boundary = {{0, 1, BoundaryKind::dirichlet, 0.0},
                         {1, 2, BoundaryKind::dirichlet, 0.0},
                         {2, 0, BoundaryKind::dirichlet, 0.0}};
        validate(mesh);
        const GlobalMeshQuality q = mesh_quality(mesh);
        CHECK_FALSE(q.acute); // strict inequality: the exact right angle fails
        CHECK(q.t_max == doctest::Approx(M_PI / 2.0));
        CHECK(std::find(q.worst_elements.begin(), q.worst_elements.end(), 0) != q.worst_elements.end());
    }
    SUBCASE("diagonal-split unit square is not acute") {
        TriMesh2D mesh;
        mesh.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
        mesh.boundary = {{0, 1, BoundaryKind::dirichlet, 0.0},
                         {1, 2, BoundaryKind::dirichlet, 0.0},
                         {2, 3, BoundaryKind::dirichlet, 0.0},
                         {3, 0, BoundaryKind::dirichlet, 0.0}};
        validate(mesh);
        const GlobalMeshQuality q = mesh_quality(mesh);
        CHECK_FALSE(q.acute);
        CHECK(q.t_max == doctest::Approx(M_PI / 2.0));
    }
    SUBCASE("acute square mesh is acute") {
        const GlobalMeshQuality q = mesh_quality(acute_square_mesh());
        CHECK(q.acute);
        CHECK(q.t_max < M_PI / 2.0);
    }
    SUBCASE("1d meshes are trivially acute") {
        const Mesh1D mesh = build_interval_mesh({0.0, 1.0}, true, true);
        CHECK(mesh_quality(mesh).acute);
    }
}

TEST_CASE("refine 1d halves every interval") {
    const Mesh1D mesh = build_interval_mesh({0.0, 1.0}, true, false);
    const Mesh1D fine = refine_uniform(mesh);
    REQUIRE(fine.n_vertices() == 3);
    CHECK(fine.nodes[1] == doctest::Approx(0.5));
    CHECK_FALSE(fine.dirichlet_right);

    const Mesh1D uneven = build_interval_mesh({0.0, 0.3, 1.0}, true, true);
    const Mesh1D fine2 = refine_uniform(uneven);
    REQUIRE(fine2.n_elements() == 4);
    for (int k = 0; k < 2; ++k) {
        CHECK(fine2.h(2 * k) == doctest::Approx(uneven.h(k) / 2.0));
        CHECK(fine2.h(2 * k + 1) == doctest::Approx(uneven.h(k) / 2.0));
    }
}

TEST_CASE("red refinement preserves angles and quarters areas") {
    const TriMesh2D mesh = equilateral_mesh();
    const TriMesh2D fine = refine_uniform(mesh);
    REQUIRE(fine.n_elements() == 4);
    for (int t = 0; t < 4; ++t) {
        const ElementGeometry g = element_geometry(fine.triangle_coords(t));
        CHECK(g.area == doctest::Approx(std::sqrt(3.0) / 16.0).epsilon(1e-12));
        for (double a : g.angle) CHECK(a == doctest::Approx(M_PI / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("red refinement preserves quality extremes") {
    const TriMesh2D mesh = acute_square_mesh();
    const GlobalMeshQuality q0 = mesh_quality(mesh);
    const TriMesh2D fine = refine_uniform(refine_uniform(mesh));
    const GlobalMeshQuality q2 = mesh_quality(fine);
    CHECK(q2.t_min == doctest::Approx(q0.t_min).epsilon(1e-12));
    CHECK(q2.t_max == doctest::Approx(q0.t_max).epsilon(1e-12));
    CHECK(fine.n_elements() == 16 * mesh.n_elements());
}

TEST_CASE("refinement inherits boundary markers") {
    const TriMesh2D mesh = acute_square_mesh(0.25);
    const TriMesh2D fine = refine_uniform(mesh);
    int neumann = 0, dirichlet = 0;
    for (const auto& be : fine.boundary) {
        if (be.kind == BoundaryKind::neumann) {
            ++neumann;
            CHECK(be.psi == doctest::Approx(0.25));
        } else {
            ++dirichlet;
        }
    }
    CHECK(neumann == 8);
    CHECK(dirichlet == 4);
}

TEST_CASE("save/load round trip") {
    SUBCASE("2d") {
        const TriMesh2D mesh = acute_square_mesh(0.125);
        const std::string path = "qcert_roundtrip_2d.txt";
        save_mesh(mesh, path);
        const TriMesh2D back = load_mesh_2d(path);
        REQUIRE(back.n_vertices() == mesh.n_vertices());
        REQUIRE(back.n_elements() == mesh.n_elements());
        for (int i = 0; i < mesh.n_vertices(); ++i) {
            CHECK(back.vertices[i].x == mesh.vertices[i].x);
            CHECK(back.vertices[i].y == mesh.vertices[i].y);
        }
        for (int t = 0; t < mesh.n_elements(); ++t) CHECK(back.triangles[t] == mesh.triangles[t]);
        REQUIRE(back.boundary.size() == mesh.boundary.size());
        for (std::size_t e = 0; e < mesh.boundary.size(); ++e) {
            CHECK(back.boundary[e].a == mesh.boundary[e].a);
            CHECK(back.boundary[e].b == mesh.boundary[e].b);
            CHECK(back.boundary[e].kind == mesh.boundary[e].kind);
            CHECK(back.boundary[e].psi == mesh.boundary[e].psi);
        }
        std::remove(path.c_str());
    }
    SUBCASE("1d") {
        Mesh1D mesh = build_interval_mesh({0.0, 1.0 / 3.0, 0.77, 1.0}, false, true);
        mesh.psi_left = 0.7071067811865476;
        const std::string path = "qcert_roundtrip_1d.txt";
        save_mesh(mesh, path);
        const Mesh1D back = load_mesh_1d(path);
        REQUIRE(back.nodes.size() == mesh.nodes.size());
        for (std::size_t i = 0; i < mesh.nodes.size(); ++i) CHECK(back.nodes[i] == mesh.nodes[i]);
        CHECK(back.dirichlet_left == mesh.dirichlet_left);
        CHECK(back.dirichlet_right == mesh.dirichlet_right);
        CHECK(back.psi_left == mesh.psi_left);
        std::remove(path.c_str());
    }
}
