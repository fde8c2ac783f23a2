#pragma once

#include <array>
#include <vector>

namespace qcert {

/// Gauss-Legendre rule mapped to [0,1]; weights sum to 1.
struct IntervalRule {
    std::vector<double> point;
    std::vector<double> weight;
};

/// Rule on the reference triangle in barycentric coordinates; weights sum to 1,
/// so integrals are |T| * sum_q w_q f(x_q).
struct TriangleRule {
    std::vector<std::array<double, 3>> bary;
    std::vector<double> weight;
};

/// n-point Gauss-Legendre on [0,1], n >= 1. Cached.
const IntervalRule& gauss_interval(int npoints);

/// Rule exact for polynomials up to the given total degree. Cached.
/// Degrees 1, 2 and 4 use symmetric rules (1, 3 and 6 points); higher degrees
/// fall back to a tensor Gauss rule under the Duffy transform.
const TriangleRule& triangle_rule(int degree);

} // namespace qcert
