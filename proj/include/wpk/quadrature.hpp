#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace wpk::quad {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

namespace detail {
// (P_n(x), P_n'(x)) by the three-term recurrence.
inline std::pair<double, double> legendre(std::size_t n, double x) {
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}
} // namespace detail

// Gauss-Legendre nodes and weights by Newton iteration on P_n (n >= 2).
inline GaussRule gauss_legendre(std::size_t n) {
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = detail::legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        double dp = detail::legendre(n, x).second;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        g.weights[i] = w;
        g.weights[n - 1 - i] = w;
    }
    return g;
}

// Integral of f over [a, b] with panels graded geometrically toward `a`:
// breakpoints a + (b-a)*ratio^k down to a width of `smallest`.
template <class Fn>
double graded_integral(Fn&& f, double a, double b, double smallest, const GaussRule& rule,
                       double ratio = 0.25) {
    std::vector<double> br{b};
    double w = b - a;
    while (w > smallest) {
        w *= ratio;
        br.push_back(a + w);
    }
    br.push_back(a);
    double total = 0.0;
    for (std::size_t k = br.size() - 1; k-- > 0;) {
        double lo = br[k + 1], hi = br[k];
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * s;
    }
    return total;
}

} // namespace wpk::quad
