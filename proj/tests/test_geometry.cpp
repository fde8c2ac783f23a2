#include <doctest.h>

#include <cmath>
#include <random>

#include "qcert/geometry.hpp"
#include "qcert/quadrature.hpp"

using namespace qcert;

namespace {

// Triangle from two angles and a scale, randomly rotated and translated.
std::array<Vec2, 3> random_acute_triangle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(0.35, 1.45); // ~20..83 degrees
    double A, B;
    do {
        A = ang(rng);
        B = ang(rng);
    } while (!(M_PI - A - B > 0.35 && M_PI - A - B < 1.45));
    std::uniform_real_distribution<double> logs(-2.0, 2.0), unit(0.0, 1.0);
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

} // namespace

TEST_CASE("equilateral triangle geometry") {
    const std::array<Vec2, 3> tri = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, std::sqrt(3.0) / 2.0}};
    const ElementGeometry g = element_geometry(tri);
    CHECK(g.area == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-14));
    for (double a : g.angle) CHECK(a == doctest::Approx(M_PI / 3.0).epsilon(1e-13));
    CHECK(g.c_T == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(g.s_T == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
    CHECK(g.r_T == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("right triangle geometry") {
    const std::array<Vec2, 3> tri = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
    const ElementGeometry g = element_geometry(tri);
    CHECK(g.angle[0] == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
    CHECK(g.c_T == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(g.r_T == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("oracle vertex geometry for a scalene triangle") {
    // Independent vector-arithmetic oracle: angles from atan2 of cross/dot.
    const std::array<Vec2, 3> tri = {Vec2{0, 0}, Vec2{2, 0}, Vec2{0.8, 1.2}};
    const ElementGeometry g = element_geometry(tri);
    for (int i = 0; i < 3; ++i) {
        const Vec2 u = tri[(i + 1) % 3] - tri[i];
        const Vec2 v = tri[(i + 2) % 3] - tri[i];
        const double oracle = std::atan2(std::abs(cross(u, v)), dot(u, v));
        CHECK(g.angle[i] == doctest::Approx(oracle).epsilon(1e-13));
    }
    CHECK(g.area == doctest::Approx(0.5 * 2.0 * 1.2).epsilon(1e-14));
    CHECK(g.angle[0] + g.angle[1] + g.angle[2] == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("angle sum and area cross-checks on random acute triangles") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto tri = random_acute_triangle(rng);
        const ElementGeometry g = element_geometry(tri);
        CHECK(std::abs(g.angle[0] + g.angle[1] + g.angle[2] - M_PI) < 1e-10);
        for (int k = 0; k < 3; ++k) {
            const int i = (k + 1) % 3, j = (k + 2) % 3;
            const double via_sine = g.edge_length[i] * g.edge_length[j] * std::sin(g.angle[k]) / 2.0;
            CHECK(std::abs(via_sine - g.area) <= 1e-12 * g.area);
        }
        // r_T relates every pair of edge lengths (floating-point headroom only)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(g.r_T * g.edge_length[i] <= g.edge_length[j] * (1.0 + 1e-14));
                CHECK(g.edge_length[j] <= g.edge_length[i] / g.r_T * (1.0 + 1e-14));
            }
        CHECK(g.c_T > 0.0);
        CHECK(g.r_T > 0.0);
        CHECK(g.r_T <= 1.0);
        CHECK(g.s_T <= 1.0);
    }
}

TEST_CASE("basis gradients on the reference triangle") {
    const auto grads = basis_gradients({Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}});
    CHECK(grads[0].x == doctest::Approx(-1.0));
    CHECK(grads[0].y == doctest::Approx(-1.0));
    CHECK(grads[1].x == doctest::Approx(1.0));
    CHECK(grads[1].y == doctest::Approx(0.0));
    CHECK(grads[2].x == doctest::Approx(0.0));
    CHECK(grads[2].y == doctest::Approx(1.0));
}

TEST_CASE("basis gradient identities") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto tri = random_acute_triangle(rng);
        const auto grads = basis_gradients(tri);
        const ElementGeometry g = element_geometry(tri);

        const Vec2 sum = grads[0] + grads[1] + grads[2];
        CHECK(norm(sum) <= 1e-12 * (norm(grads[0]) + norm(grads[1]) + norm(grads[2])));

        for (int i = 0; i < 3; ++i) {
            const double direct = dot(grads[i], grads[i]);
            const double formula = g.edge_length[i] * g.edge_length[i] / (4.0 * g.area * g.area);
            CHECK(direct == doctest::Approx(formula).epsilon(1e-12));
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const int k = 3 - i - j;
                const double direct = dot(grads[i], grads[j]);
                const double formula = -g.edge_length[i] * g.edge_length[j] * std::cos(g.angle[k]) /
                                       (4.0 * g.area * g.area);
                CHECK(direct == doctest::Approx(formula).epsilon(1e-12));
                CHECK(direct < 0.0); // acute triangle
            }
    }
}

TEST_CASE("equilateral gradient inner products") {
    const auto tri = std::array<Vec2, 3>{Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, std::sqrt(3.0) / 2.0}};
    const auto grads = basis_gradients(tri);
    for (int i = 0; i < 3; ++i) CHECK(dot(grads[i], grads[i]) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(dot(grads[0], grads[1]) == doctest::Approx(-2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("gradient expansion identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto tri = random_acute_triangle(rng);
        const auto grads = basis_gradients(tri);
        const double phi[3] = {val(rng), val(rng), val(rng)};
        const Vec2 direct = phi[0] * grads[0] + phi[1] * grads[1] + phi[2] * grads[2];
        // any cyclic (i,j,k): (phi_i - phi_j) grad_i + (phi_k - phi_j) grad_k
        for (int j = 0; j < 3; ++j) {
            const int i = (j + 1) % 3, k = (j + 2) % 3;
            const Vec2 expanded = (phi[i] - phi[j]) * grads[i] + (phi[k] - phi[j]) * grads[k];
            CHECK(norm(expanded - direct) <= 1e-12 * (1.0 + norm(direct)));
        }
    }
}

TEST_CASE("quadrature exactness for monomials") {
    auto exact = [](int p, int q) {
        // int_T x^p y^q over the reference triangle = p! q! / (p+q+2)!
        double num = 1.0;
        for (int i = 2; i <= p; ++i) num *= i;
        for (int i = 2; i <= q; ++i) num *= i;
        double den = 1.0;
        for (int i = 2; i <= p + q + 2; ++i) den *= i;
        return num / den;
    };
    for (int degree : {1, 2, 4, 8, 10}) {
        const TriangleRule& rule = triangle_rule(degree);
        double wsum = 0.0;
        for (double w : rule.weight) wsum += w;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
        for (int p = 0; p + 0 <= degree; ++p) {
            for (int q = 0; p + q <= degree; ++q) {
                double val = 0.0;
                for (std::size_t n = 0; n < rule.bary.size(); ++n) {
                    const double x = rule.bary[n][1], y = rule.bary[n][2];
                    val += rule.weight[n] * std::pow(x, p) * std::pow(y, q);
                }
                val *= 0.5; // reference area
                CHECK(val == doctest::Approx(exact(p, q)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("gauss interval rule exactness") {
    for (int n : {1, 2, 3, 5, 8}) {
        const IntervalRule& rule = gauss_interval(n);
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double val = 0.0;
            for (std::size_t q = 0; q < rule.point.size(); ++q)
                val += rule.weight[q] * std::pow(rule.point[q], p);
            CHECK(val == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
        }
    }
}
