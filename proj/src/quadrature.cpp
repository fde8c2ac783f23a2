#include "qcert/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

// Nodes/weights on [-1,1] via Newton iteration on the Legendre recurrence.
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

IntervalRule make_interval_rule(int n) {
    if (n < 1) throw ConfigError("gauss_interval: need at least one point");
    std::vector<double> x, w;
    legendre_nodes(n, x, w);
    IntervalRule r;
    r.point.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        r.point[i] = 0.5 * (x[i] + 1.0);
        r.weight[i] = 0.5 * w[i];
    }
    return r;
}

TriangleRule symmetric_rule(int degree) {
    TriangleRule r;
    auto add = [&r](double b1, double b2, double b3, double w) {
        r.bary.push_back({b1, b2, b3});
        r.weight.push_back(w);
    };
    if (degree <= 1) {
        add(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0);
    } else if (degree == 2) {
        for (int i = 0; i < 3; ++i) {
            std::array<double, 3> b{1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
            b[i] = 2.0 / 3.0;
            add(b[0], b[1], b[2], 1.0 / 3.0);
        }
    } else {
        // 6-point rule, exact through degree 4.
        const double a1 = 0.445948490915965, w1 = 0.223381589678011;
        const double a2 = 0.091576213509771, w2 = 0.109951743655322;
        for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
            for (int i = 0; i < 3; ++i) {
                std::array<double, 3> b{a, a, a};
                b[i] = 1.0 - 2.0 * a;
                add(b[0], b[1], b[2], w);
            }
        }
    }
    return r;
}

// Duffy collapse of a tensor Gauss rule; exact to high total degree.
TriangleRule duffy_rule(int degree) {
    const int n = degree / 2 + 2;
    const IntervalRule& g = gauss_interval(n);
    TriangleRule r;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = g.point[i], v = g.point[j];
            const double x = u, y = v * (1.0 - u);
            // weight 2*(1-u) normalizes to a unit-sum rule on the triangle
            r.bary.push_back({1.0 - x - y, x, y});
            r.weight.push_back(2.0 * (1.0 - u) * g.weight[i] * g.weight[j]);
        }
    }
    return r;
}

} // namespace

const IntervalRule& gauss_interval(int npoints) {
    static std::map<int, IntervalRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(npoints);
    if (it == cache.end()) it = cache.emplace(npoints, make_interval_rule(npoints)).first;
    return it->second;
}

const TriangleRule& triangle_rule(int degree) {
    if (degree < 1) throw ConfigError("triangle_rule: quadrature degree unset or below 1");
    static std::map<int, TriangleRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(degree);
    if (it == cache.end()) {
        TriangleRule r = degree <= 4 ? symmetric_rule(degree) : duffy_rule(degree);
        it = cache.emplace(degree, std::move(r)).first;
    }
    return it->second;
}

} // namespace qcert
