#pragma once

#include <wpk/derivs.hpp>
#include <wpk/error.hpp>
#include <wpk/fft.hpp>
#include <wpk/kernel.hpp>
#include <wpk/norms.hpp>
#include <wpk/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace wpk {

// ---------------------------------------------------------------------------
// f = 2F1(-a/2, n - a/2; n + 1; |z|^2) z^n, alpha in (-1, 0)

struct Ex41Params {
    double alpha = -0.5;
    int n = 1;
    void validate() const {
        if (!(alpha > -1.0 && alpha < 0.0)) throw DomainError("Example 4.1 needs alpha in (-1, 0)");
        if (n < 1) throw DomainError("Example 4.1 needs n >= 1");
    }
};

// a_{n,k} = (-a/2)_k (n - a/2)_k / ((n+1)_k k!)
inline double ex41_coefficient(const Ex41Params& p, unsigned k) {
    p.validate();
    // term ratios keep the product finite where the Pochhammer symbols overflow
    const double a = -0.5 * p.alpha, b = p.n - 0.5 * p.alpha, c = p.n + 1.0;
    double v = 1.0;
    for (unsigned j = 0; j < k; ++j) v *= (a + j) * (b + j) / ((c + j) * (j + 1.0));
    return v;
}

// Series cap scaled with 1/(1-x); the near-boundary radii used for the
// ellipticity trend need millions of terms.
inline specfun::HypOptions ex41_hyp_options(double x) {
    specfun::HypOptions o;
    o.tol = 1e-15;
    const double need = 60.0 / std::max(1.0 - x, 1e-300);
    o.max_terms = static_cast<std::size_t>(std::clamp(need, 10000.0, 1e9));
    return o;
}

inline double ex41_E2(const Ex41Params& p, double r) {
    const double x = r * r;
    return specfun::hyp2f1({-0.5 * p.alpha, p.n - 0.5 * p.alpha, p.n + 1.0, x, (1.0 - r) * (1.0 + r)},
                           ex41_hyp_options(x));
}

inline double ex41_E1(const Ex41Params& p, double r) {
    const double x = r * r;
    return specfun::hyp2f1({1.0 - 0.5 * p.alpha, p.n + 1.0 - 0.5 * p.alpha, p.n + 2.0, x, (1.0 - r) * (1.0 + r)},
                           ex41_hyp_options(x));
}

inline double ex41_boundary_constant(const Ex41Params& p) {
    p.validate();
    return specfun::gauss_value(-0.5 * p.alpha, p.n - 0.5 * p.alpha, p.n + 1.0);
}

// lim E1(r) (1 - r^2)^{-alpha} as r -> 1
inline double ex41_E1_limit(const Ex41Params& p) {
    using specfun::gamma;
    return gamma(p.n + 2.0) * gamma(-p.alpha) / (gamma(1.0 - 0.5 * p.alpha) * gamma(p.n + 1.0 - 0.5 * p.alpha));
}

inline cplx ex41_f(const Ex41Params& p, const ComplexPoint& z) {
    p.validate();
    const double r = z.r();
    if (r > 1.0) throw DomainError("ex41_f: |z| must be <= 1");
    if (r == 0.0) return 0.0;
    const double e2 = r == 1.0 ? ex41_boundary_constant(p) : ex41_E2(p, r);
    return e2 * std::polar(std::pow(r, p.n), p.n * z.theta());
}

struct Ex41Derivs {
    cplx dz, dzbar, dr;
};

inline double ex41_c(const Ex41Params& p) { return p.alpha * (p.alpha - 2.0 * p.n) / (4.0 * (p.n + 1.0)); }

// Radial profiles: |dz|-part and |dzbar| as functions of r.
struct Ex41Radial {
    double a;  // c r^{n+1} E1
    double b;  // n r^{n-1} E2
};

inline Ex41Radial ex41_radial(const Ex41Params& p, double r) {
    p.validate();
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("ex41: r must lie in [0, 1)");
    const double e1 = ex41_E1(p, r), e2 = ex41_E2(p, r);
    return {ex41_c(p) * std::pow(r, p.n + 1) * e1, p.n * std::pow(r, p.n - 1) * e2};
}

inline Ex41Derivs ex41_derivs(const Ex41Params& p, const ComplexPoint& z) {
    auto rad = ex41_radial(p, z.r());
    const double t = z.theta();
    const cplx xi_nm1 = std::polar(1.0, (p.n - 1) * t);
    const cplx xi_n = std::polar(1.0, p.n * t);
    const cplx xi_np1 = std::polar(1.0, (p.n + 1) * t);
    return {(rad.a + rad.b) * xi_nm1, rad.a * xi_np1, (2.0 * rad.a + rad.b) * xi_n};
}

inline BoundaryData ex41_boundary(const Ex41Params& p, std::size_t nodes = 2048) {
    return BoundaryData::from_fourier({{static_cast<long>(p.n), ex41_boundary_constant(p)}}, nodes);
}

inline WirtingerCircle ex41_circle(const Ex41Params& p) {
    return [p](double r, std::size_t m) {
        auto rad = ex41_radial(p, r);
        std::vector<cplx> dz(m), dzb(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double t = two_pi * static_cast<double>(j) / static_cast<double>(m);
            dz[j] = (rad.a + rad.b) * std::polar(1.0, (p.n - 1) * t);
            dzb[j] = rad.a * std::polar(1.0, (p.n + 1) * t);
        }
        return std::make_pair(std::move(dz), std::move(dzb));
    };
}

enum class Partial { dr, dz, dzbar, dtheta };

inline const char* to_string(Partial d) {
    switch (d) {
    case Partial::dr: return "dr";
    case Partial::dz: return "dz";
    case Partial::dzbar: return "dzbar";
    case Partial::dtheta: return "dtheta";
    }
    return "?";
}

// Circle sampler of one partial from a Wirtinger circle.
inline CircleSampler partial_sampler(WirtingerCircle w, Partial which, std::size_t angles) {
    return [w = std::move(w), which, angles](double r) {
        auto [dz, dzb] = w(r, angles);
        if (which == Partial::dz) return dz;
        if (which == Partial::dzbar) return dzb;
        std::vector<cplx> out(angles);
        const cplx i(0.0, 1.0);
        for (std::size_t j = 0; j < angles; ++j) {
            const double t = two_pi * static_cast<double>(j) / static_cast<double>(angles);
            const cplx u = std::polar(1.0, t);
            out[j] = which == Partial::dr ? dz[j] * u + dzb[j] * std::conj(u)
                                          : i * r * (u * dz[j] - std::conj(u) * dzb[j]);
        }
        return out;
    };
}

// ---------------------------------------------------------------------------
// Piecewise-linear phase on the circle, harmonic extension (alpha = 0)

inline double ex42_phase(double theta) {
    // reduce to [-pi, pi)
    double t = theta - two_pi * std::floor((theta + std::numbers::pi) / two_pi);
    const double pi = std::numbers::pi;
    return t < 0.0 ? 1.0 + t * (pi + 1.0) / pi : 1.0 + t * (pi - 1.0) / pi;
}

// phi' from the right at the corners 0 and pi.
inline double ex42_phase_slope(double theta) {
    double t = theta - two_pi * std::floor((theta + std::numbers::pi) / two_pi);
    const double pi = std::numbers::pi;
    return t < 0.0 ? (pi + 1.0) / pi : (pi - 1.0) / pi;
}

inline BoundaryData ex42_boundary(std::size_t nodes = 2048) {
    return BoundaryData::from_function([](double t) { return std::polar(1.0, ex42_phase(t)); }, nodes,
                                       [](double t) {
                                           return cplx(0.0, ex42_phase_slope(t)) * std::polar(1.0, ex42_phase(t));
                                       },
                                       {0.0, std::numbers::pi});
}

// ---------------------------------------------------------------------------
// f = Im sum_{n>=2} z^n / (n log n)

inline constexpr std::size_t ex43_default_terms = 4096;

struct Ex43Value {
    cplx value;
    double tail_bound;
    bool truncation_warning;
};

inline double ex43_tail_bound(double r, std::size_t N) {
    const double m = static_cast<double>(N + 1);
    return std::pow(r, m) / (m * std::log(m) * (1.0 - r));
}

inline Ex43Value ex43_f(const ComplexPoint& z, std::size_t N = ex43_default_terms) {
    if (N < 2) throw DomainError("ex43: N_trunc must be >= 2");
    if (!(z.r() < 1.0)) throw DomainError("ex43: |z| must be < 1");
    cplx s = 0.0, zn = z.z();
    for (std::size_t n = 2; n <= N; ++n) {
        zn *= z.z();
        s += zn / (static_cast<double>(n) * std::log(static_cast<double>(n)));
    }
    const double tb = ex43_tail_bound(z.r(), N);
    return {s.imag(), tb, tb > 1e-8};
}

struct Ex43Derivs {
    cplx dz, dzbar;
    double tail_bound;
    bool truncation_warning;
};

// dz = (1/2i) g'(z), dzbar = conj(dz) since f is real.
inline Ex43Derivs ex43_derivs(const ComplexPoint& z, std::size_t N = ex43_default_terms) {
    if (N < 2) throw DomainError("ex43: N_trunc must be >= 2");
    if (!(z.r() < 1.0)) throw DomainError("ex43: |z| must be < 1");
    cplx s = 0.0, zk = 1.0;
    for (std::size_t n = 2; n <= N; ++n) {
        zk *= z.z();
        s += zk / std::log(static_cast<double>(n));
    }
    const cplx dz = s / cplx(0.0, 2.0);
    const double m = static_cast<double>(N + 1);
    const double tb = 0.5 * std::pow(z.r(), m - 1.0) / (std::log(m) * (1.0 - z.r()));
    return {dz, std::conj(dz), tb, tb > 1e-8};
}

// Boundary values sum_{n>=2} sin(n t)/(n log n), as a trigonometric polynomial.
inline BoundaryData ex43_boundary(std::size_t terms = ex43_default_terms, std::size_t nodes = 2048) {
    if (terms < 2) throw DomainError("ex43: N_trunc must be >= 2");
    BoundaryData::Coefficients c;
    for (std::size_t n = 2; n <= terms; ++n) {
        const double w = 1.0 / (static_cast<double>(n) * std::log(static_cast<double>(n)));
        // sin(nt) = (e^{int} - e^{-int}) / 2i
        c.emplace_back(static_cast<long>(n), cplx(0.0, -0.5 * w));
        c.emplace_back(-static_cast<long>(n), cplx(0.0, 0.5 * w));
    }
    return BoundaryData::from_fourier(std::move(c), nodes);
}

// Wirtinger derivatives on a whole circle; folding the power series modulo
// the angle count gives exact samples of the truncated sum.
inline WirtingerCircle ex43_circle(std::size_t N = ex43_default_terms) {
    return [N](double r, std::size_t m) {
        std::vector<cplx> a(m, 0.0);
        double rk = 1.0;
        for (std::size_t n = 2; n <= N; ++n) {
            rk *= r; // r^{n-1}
            a[(n - 1) % m] += rk / std::log(static_cast<double>(n));
        }
        auto g = fft::inverse(a);
        std::vector<cplx> dz(m), dzb(m);
        for (std::size_t j = 0; j < m; ++j) {
            dz[j] = g[j] / cplx(0.0, 2.0);
            dzb[j] = std::conj(dz[j]);
        }
        return std::make_pair(std::move(dz), std::move(dzb));
    };
}

// Truncation so that the derivative tail at radius r stays below 1e-12.
inline std::size_t ex43_terms_for(double r) {
    std::size_t N = 256;
    while (0.5 * std::pow(r, static_cast<double>(N)) / (std::log(N + 1.0) * (1.0 - r)) > 1e-12 && N < (1u << 24))
        N *= 2;
    return N;
}

} // namespace wpk
