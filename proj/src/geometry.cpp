#include "qcert/geometry.hpp"

#include <algorithm>

#include "qcert/errors.hpp"

namespace qcert {

double triangle_area(const std::array<Vec2, 3>& tri) {
    return 0.5 * cross(tri[1] - tri[0], tri[2] - tri[0]);
}

ElementGeometry element_geometry(const std::array<Vec2, 3>& tri) {
    ElementGeometry g;
    g.area = triangle_area(tri);
    if (!(g.area > 0.0))
        throw ValidationError("element_geometry: nonpositive area (vertices not counterclockwise or degenerate)");

    // Edge i opposite vertex i.
    const std::array<Vec2, 3> edge = {tri[2] - tri[1], tri[0] - tri[2], tri[1] - tri[0]};
    for (int i = 0; i < 3; ++i) g.edge_length[i] = norm(edge[i]);

    for (int i = 0; i < 3; ++i) {
        const Vec2 u = tri[(i + 1) % 3] - tri[i];
        const Vec2 v = tri[(i + 2) % 3] - tri[i];
        const double c = std::clamp(dot(u, v) / (norm(u) * norm(v)), -1.0, 1.0);
        g.angle[i] = std::acos(c);
    }

    double cmin = 1.0, smax = 0.0, smin = 1.0;
    for (int i = 0; i < 3; ++i) {
        const double s = std::sin(g.angle[i]);
        cmin = std::min(cmin, std::cos(g.angle[i]));
        smax = std::max(smax, s);
        smin = std::min(smin, s);
    }
    g.c_T = cmin;
    g.s_T = smax;
    g.r_T = smin / smax;
    return g;
}

std::array<Vec2, 3> basis_gradients(const std::array<Vec2, 3>& tri) {
    const double area2 = cross(tri[1] - tri[0], tri[2] - tri[0]);
    if (area2 <= 0.0)
        throw ValidationError("basis_gradients: degenerate or clockwise triangle");
    auto perp = [](Vec2 v) { return Vec2{-v.y, v.x}; };
    return {
        (1.0 / area2) * perp(tri[2] - tri[1]),
        (1.0 / area2) * perp(tri[0] - tri[2]),
        (1.0 / area2) * perp(tri[1] - tri[0]),
    };
}

} // namespace qcert
