#pragma once

#include <array>
#include <cmath>

namespace qcert {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// 2x2 matrix; flux Jacobians built by eval_flux are symmetric by construction.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

    static Mat2 identity(double s = 1.0) { return {s, 0.0, 0.0, s}; }

    /// Smaller eigenvalue; valid for symmetric matrices.
    double min_eigenvalue_sym() const {
        const double tr = a11 + a22;
        const double det = a11 * a22 - a12 * a21;
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        return tr / 2.0 - disc;
    }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

/// Per-element constants the certificates consume.
/// Edge i is opposite vertex i; angle i sits at vertex i.
struct ElementGeometry {
    double area = 0.0;
    std::array<double, 3> edge_length{};
    std::array<double, 3> angle{};
    double c_T = 0.0; ///< min_i cos(angle_i)
    double s_T = 0.0; ///< max_i sin(angle_i)
    double r_T = 0.0; ///< min over ordered pairs of sin(angle_i)/sin(angle_j)
};

/// Signed area; positive for counterclockwise vertex order.
double triangle_area(const std::array<Vec2, 3>& tri);

/// Angles via arccos of normalized edge-vector dot products.
/// Requires positive area.
ElementGeometry element_geometry(const std::array<Vec2, 3>& tri);

/// Constant gradients of the three nodal P1 basis functions.
/// The three gradients sum to zero.
std::array<Vec2, 3> basis_gradients(const std::array<Vec2, 3>& tri);

} // namespace qcert
