#pragma once

#include <wpk/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace wpk::specfun {

namespace detail {

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Neumaier compensated summation.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace detail

// sin(pi x), exactly zero at integers.
inline double sin_pi(double x) {
    double y = x - 2.0 * std::round(0.5 * x); // y in [-1, 1]
    if (y == 0.0 || std::fabs(y) == 1.0) return 0.0;
    double s = 1.0;
    if (y < 0.0) {
        y = -y;
        s = -1.0;
    }
    if (y > 0.5) y = 1.0 - y;
    if (y == 0.5) return s;
    return s * std::sin(std::numbers::pi * y);
}

// Gamma function, real argument. Lanczos (g = 7, 9 terms) with reflection.
inline double gamma(double x) {
    if (std::isnan(x)) return x;
    if (detail::is_nonpositive_integer(x))
        throw PoleError("gamma: pole at nonpositive integer " + std::to_string(x));
    if (x == std::floor(x) && x <= 30.0) {
        double v = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) v *= k;
        return v;
    }
    if (x < 0.5) return std::numbers::pi / (sin_pi(x) * gamma(1.0 - x));
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    double xm = x - 1.0;
    double a = c[0];
    double t = xm + 7.5;
    for (int i = 1; i < 9; ++i) a += c[i] / (xm + i);
    // split the power to keep t^(xm+0.5) finite for large x
    double h = std::pow(t, 0.5 * (xm + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * h * (h * std::exp(-t)) * a;
}

// Rising factorial (a)_k.
inline double pochhammer(double a, unsigned k) {
    double v = 1.0;
    for (unsigned i = 0; i < k; ++i) v *= a + i;
    return v;
}

struct HypParams {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double x = 0.0;
    double omx = -1.0; // 1 - x when known better than by subtraction; < 0 means unset

    double one_minus_x() const { return omx >= 0.0 ? omx : 1.0 - x; }

    void validate() const {
        if (detail::is_nonpositive_integer(c))
            throw DomainError("hyp2f1: c must not be zero or a negative integer");
        if (!(std::fabs(x) <= 1.0))
            throw DomainError("hyp2f1: |x| > 1 outside the series domain");
        if (std::fabs(x) == 1.0 && !(c - a - b > 0.0) && !terminating())
            throw DomainError("hyp2f1: |x| = 1 requires c - a - b > 0");
    }
    bool terminating() const {
        return detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
    }
};

struct HypOptions {
    double tol = 1e-15;
    std::size_t max_terms = 10000;
    double euler_threshold = 0.95;
    double connection_threshold = 0.9;
};

// Gamma-ratio value of the series at x = 1.
inline double gauss_value(double a, double b, double c) {
    double s = c - a - b;
    if (!(s > 0.0)) throw DomainError("gauss_value: requires c - a - b > 0");
    if (detail::is_nonpositive_integer(c))
        throw DomainError("gauss_value: c must not be a nonpositive integer");
    // a or b zero collapses the series; c-a or c-b at a pole of the
    // denominator makes the value exactly 0
    if (a == 0.0 || b == 0.0) return 1.0;
    if (detail::is_nonpositive_integer(c - a) || detail::is_nonpositive_integer(c - b)) return 0.0;
    return gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b));
}

// Sum of the first `terms` terms of the series (k = 0 .. terms-1).
inline double hyp2f1_partial_sum(double a, double b, double c, double x, std::size_t terms) {
    if (detail::is_nonpositive_integer(c))
        throw DomainError("hyp2f1: c must not be zero or a negative integer");
    detail::CompensatedSum s;
    double t = 1.0;
    for (std::size_t k = 0; k < terms; ++k) {
        s.add(t);
        double kk = static_cast<double>(k);
        t *= (a + kk) * (b + kk) / ((kk + 1.0) * (c + kk)) * x;
        if (t == 0.0) break;
    }
    return s.value();
}

// Direct series. Stops once the estimated tail stays below tol*|sum| for
// three consecutive terms; for x > 0 the tail is estimated as |t|/(1-x),
// for x < 0 the series is eventually alternating and |t| bounds the tail.
inline double hyp2f1_series(const HypParams& p, const HypOptions& opt = {}) {
    p.validate();
    if (p.x == 0.0) return 1.0;
    const double tail_factor = p.x > 0.0 && p.x < 1.0 ? 1.0 / (1.0 - p.x) : 1.0;
    detail::CompensatedSum s;
    double t = 1.0;
    int quiet = 0;
    for (std::size_t k = 0; k < opt.max_terms; ++k) {
        s.add(t);
        double kk = static_cast<double>(k);
        double ratio = (p.a + kk) * (p.b + kk) / ((kk + 1.0) * (p.c + kk)) * p.x;
        t *= ratio;
        if (t == 0.0) return s.value(); // terminating series
        double sv = std::fabs(s.value());
        if (std::fabs(ratio) < 1.0 && std::fabs(t) * tail_factor < opt.tol * sv) {
            if (++quiet >= 3) return s.value();
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("hyp2f1: series did not converge within " +
                           std::to_string(opt.max_terms) + " terms");
}

// Euler transformation: (1-x)^(c-a-b) 2F1(c-a, c-b; c; x).
inline double hyp2f1_euler(const HypParams& p, const HypOptions& opt = {}) {
    p.validate();
    if (!(p.x < 1.0)) throw DomainError("hyp2f1_euler: requires x < 1");
    HypParams q{p.c - p.a, p.c - p.b, p.c, p.x};
    return std::pow(p.one_minus_x(), p.c - p.a - p.b) * hyp2f1_series(q, opt);
}

// Connection to x = 1: the two series in 1 - x. Needs c-a-b away from the
// integers (the gamma factors cancel there) and no pole in a, b, c-a, c-b.
inline bool hyp2f1_connection_ok(const HypParams& p) {
    const double s = p.c - p.a - p.b;
    if (std::fabs(s - std::round(s)) < 0.05) return false;
    for (double v : {p.a, p.b, p.c - p.a, p.c - p.b})
        if (detail::is_nonpositive_integer(v)) return false;
    return p.x > 0.0 && p.x < 1.0;
}

inline double hyp2f1_connection(const HypParams& p, const HypOptions& opt = {}) {
    p.validate();
    if (!hyp2f1_connection_ok(p)) throw DomainError("hyp2f1_connection: parameters too close to a degenerate case");
    const double s = p.c - p.a - p.b, y = p.one_minus_x();
    const double g1 = gamma(p.c) * gamma(s) / (gamma(p.c - p.a) * gamma(p.c - p.b));
    const double g2 = gamma(p.c) * gamma(-s) / (gamma(p.a) * gamma(p.b));
    const double t1 = hyp2f1_series({p.a, p.b, 1.0 - s, y}, opt);
    const double t2 = hyp2f1_series({p.c - p.a, p.c - p.b, 1.0 + s, y}, opt);
    return g1 * t1 + std::pow(y, s) * g2 * t2;
}

// Gauss hypergeometric function 2F1(a, b; c; x) on [-1, 1].
inline double hyp2f1(const HypParams& p, const HypOptions& opt = {}) {
    p.validate();
    if (p.x == 1.0) {
        if (p.terminating()) return hyp2f1_series(p, opt);
        return gauss_value(p.a, p.b, p.c);
    }
    if (p.terminating()) return hyp2f1_series(p, opt);
    if (p.x > opt.connection_threshold && hyp2f1_connection_ok(p)) return hyp2f1_connection(p, opt);
    if (p.c - p.a - p.b < 0.0 && p.x > opt.euler_threshold) return hyp2f1_euler(p, opt);
    return hyp2f1_series(p, opt);
}

inline double hyp2f1(double a, double b, double c, double x, const HypOptions& opt = {}) {
    return hyp2f1(HypParams{a, b, c, x}, opt);
}

// d/dx 2F1(a,b;c;x) = (ab/c) 2F1(a+1, b+1; c+1; x).
inline double hyp2f1_derivative(const HypParams& p, const HypOptions& opt = {}) {
    p.validate();
    if (p.a == 0.0 || p.b == 0.0) return 0.0;
    return p.a * p.b / p.c * hyp2f1(HypParams{p.a + 1.0, p.b + 1.0, p.c + 1.0, p.x, p.omx}, opt);
}

// Integral of (1-r)^s r^t over [0, 1].
inline double beta_integral(double s, double t) {
    if (!(s > -1.0) || !(t > -1.0))
        throw DomainError("beta_integral: requires s > -1 and t > -1");
    return gamma(s + 1.0) * gamma(t + 1.0) / gamma(s + t + 2.0);
}

} // namespace wpk::specfun
