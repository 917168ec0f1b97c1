#pragma once

#include <wpk/derivs.hpp>
#include <wpk/elliptic.hpp>
#include <wpk/examples.hpp>
#include <wpk/kernel.hpp>
#include <wpk/norms.hpp>
#include <wpk/quadrature.hpp>
#include <wpk/regimes.hpp>
#include <wpk/samplers.hpp>
#include <wpk/specfun.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace wpk {

struct NamedBoundary {
    std::string name;
    BoundaryData data;
};

// Boundary functions shipped with the library, all with a derivative channel.
inline std::vector<NamedBoundary> bundled_boundaries(std::size_t nodes = 2048) {
    std::vector<NamedBoundary> out;
    out.push_back({"ex4.1(alpha=-0.5,n=1)", ex41_boundary({-0.5, 1}, nodes)});
    out.push_back({"ex4.1(alpha=-0.9,n=3)", ex41_boundary({-0.9, 3}, nodes)});
    out.push_back({"ex4.2", ex42_boundary(nodes)});
    out.push_back({"ex4.3(N=512)", ex43_boundary(512, nodes)});
    out.push_back({"monomial(n=3)", BoundaryData::from_fourier({{3, 1.0}}, nodes)});
    out.push_back({"trig_mix", BoundaryData::from_fourier({{1, 1.0}, {-2, cplx(0.3, -0.1)}, {5, 0.1}}, nodes)});
    return out;
}

inline Certification make_cert(std::string check, std::string subject, std::map<std::string, double> params,
                               double lhs, double rhs, bool holds) {
    Certification c;
    c.check = std::move(check);
    c.subject = std::move(subject);
    c.params = std::move(params);
    c.lhs = lhs;
    c.rhs = rhs;
    c.holds = holds;
    return c;
}

// Integral of (1-r)^s r^t over [0,1] by Gauss-Legendre panels graded toward
// both endpoints.
inline double beta_quadrature(double s, double t) {
    static const auto rule = quad::gauss_legendre(30);
    auto f = [&](double r) { return std::pow(1.0 - r, s) * std::pow(r, t); };
    auto g = [&](double u) { return std::pow(u, s) * std::pow(1.0 - u, t); }; // u = 1 - r
    return quad::graded_integral(f, 0.0, 0.5, 1e-300, rule, 0.15) +
           quad::graded_integral(g, 0.0, 0.5, 1e-300, rule, 0.15);
}

inline std::vector<Certification> specfun_suite() {
    using namespace specfun;
    std::vector<Certification> out;
    double worst = 0.0;
    for (double x = -9.75; x <= 29.0; x += 0.25) {
        if (x == std::floor(x) && x <= 0.0) continue;
        const double a = gamma(x + 1.0), b = x * gamma(x);
        worst = std::max(worst, std::fabs(a - b) / std::fabs(b));
    }
    out.push_back(make_cert("gamma_recurrence", "x in [-9.75, 29]", {}, worst, 1e-12, worst <= 1e-12));
    worst = 0.0;
    for (double x = 0.01; x < 1.0; x += 0.01) {
        if (std::fabs(x - 0.5) < 1e-9) continue;
        worst = std::max(worst, std::fabs(gamma(x) * gamma(1.0 - x) * sin_pi(x) / std::numbers::pi - 1.0));
    }
    out.push_back(make_cert("gamma_reflection", "x in (0, 1)", {}, worst, 1e-10, worst <= 1e-10));
    worst = 0.0;
    for (double a : {0.3, 1.0, 2.2})
        for (double b : {0.7, 1.5, 2.9})
            for (double c : {0.5, 1.2, 2.5})
                for (double x : {-0.9, -0.4, 0.3, 0.75, 0.9}) {
                    if (!(c - a - b < 0.0)) continue;
                    HypParams p{a, b, c, x};
                    const double d = hyp2f1_series(p), e = hyp2f1_euler(p);
                    worst = std::max(worst, std::fabs(d - e) / std::fabs(d));
                }
    out.push_back(make_cert("euler_transformation", "c-a-b<0, |x|<=0.9", {}, worst, 1e-9, worst <= 1e-9));
    for (auto [a, b, c] : {std::tuple{0.5, 0.5, 5.0}, std::tuple{1.0, 1.0, 6.0}, std::tuple{-0.25, 1.25, 5.0}}) {
        const double s = hyp2f1_partial_sum(a, b, c, 1.0, 20000), g = gauss_value(a, b, c);
        out.push_back(make_cert("gauss_summation", "partial sums at x=1", {{"a", a}, {"b", b}, {"c", c}},
                                std::fabs(s - g), 1e-8, std::fabs(s - g) <= 1e-8));
    }
    for (auto [s, t] : {std::pair{0.0, 0.0}, std::pair{1.0, 1.0}, std::pair{-0.5, 0.0}, std::pair{-0.5, 0.5},
                        std::pair{2.5, -0.3}}) {
        const double q = beta_quadrature(s, t), b = beta_integral(s, t);
        const double rel = std::fabs(q - b) / b;
        out.push_back(make_cert("beta_integral", "graded Gauss-Legendre", {{"s", s}, {"t", t}}, rel, 1e-10,
                                rel <= 1e-10));
    }
    worst = 0.0;
    for (double a : {-2.5, 0.3, 1.7})
        for (unsigned k : {0u, 2u, 5u})
            for (unsigned m : {1u, 4u}) {
                const double l = pochhammer(a, k) * pochhammer(a + k, m), r = pochhammer(a, k + m);
                worst = std::max(worst, std::fabs(l - r) / std::max(1.0, std::fabs(r)));
            }
    out.push_back(make_cert("pochhammer_composition", "(a)_k (a+k)_m = (a)_{k+m}", {}, worst, 1e-12,
                            worst <= 1e-12));
    return out;
}

inline std::vector<Certification> inequalities_suite(const QuadSpec& q = {}, unsigned threads = 1) {
    std::vector<Certification> out;
    for (double a : {0.25, 0.5, 1.0, 2.0, 5.0})
        for (double r : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) out.push_back(check_lemma_I(a, r, q));
    for (double a : {-0.9, -0.5, -0.1})
        for (double r : {0.5, 0.75, 0.9, 0.99}) out.push_back(check_lemma_32(a, r, q));
    for (const auto& b : bundled_boundaries(q.angular_nodes))
        for (double a : {-0.5, 0.0, 1.0})
            for (double p : {1.0, 2.0, 4.0}) {
                auto h = check_eq_3_7(AlphaParam(a), b.data, PExponent(p), q, threads);
                out.push_back(make_cert("hardy_dtheta_bound", b.name,
                                        {{"alpha", a}, {"p", p}, {"worst_r", h.worst_r}}, h.max_ratio, 1.0 + 1e-6,
                                        h.holds));
            }
    for (const auto& b : bundled_boundaries(q.angular_nodes))
        for (double a : {0.5, 1.0, 2.0})
            for (double r : {0.5, 0.9, 0.99}) {
                auto c = check_j1_bound(AlphaParam(a), b.data, r, q);
                c.subject = b.name;
                out.push_back(std::move(c));
            }
    return out;
}

// Random points with |z| <= r_hi from a seeded generator.
inline std::vector<ComplexPoint> random_points(std::uint64_t seed, std::size_t count, double r_hi) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::vector<ComplexPoint> pts;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = r_hi * std::sqrt(ur(gen));
        pts.push_back(ComplexPoint::polar(r, two_pi * ur(gen)));
    }
    return pts;
}

inline std::vector<Certification> oracles_suite(std::uint64_t seed = 12345) {
    std::vector<Certification> out;
    QuadSpec q;
    q.angular_nodes = 2048;
    auto pts = random_points(seed, 50, 0.9);
    for (double a : {-0.9, -0.5, -0.1})
        for (int n : {1, 2, 3}) {
            Ex41Params p{a, n};
            auto F = ex41_boundary(p, 2048);
            AlphaParam al(a);
            double worst = 0.0;
            for (auto& z : pts) {
                const cplx exact = ex41_f(p, z);
                const cplx got = poisson_integral(al, F, z, q).value;
                worst = std::max(worst, std::abs(got - exact) / std::max(std::abs(exact), 1e-300));
            }
            out.push_back(make_cert("hypergeometric_oracle", "ex4.1", {{"alpha", a}, {"n", n}}, worst, 1e-6,
                                    worst <= 1e-6));
        }
    {
        AlphaParam a0(0.0);
        double worst = 0.0;
        for (int n = 0; n <= 8; ++n) {
            auto F = BoundaryData::from_fourier({{n, 1.0}}, 2048);
            for (auto& z : pts) {
                const cplx exact = std::polar(std::pow(z.r(), n), n * z.theta());
                worst = std::max(worst, std::abs(poisson_integral(a0, F, z, q).value - exact));
            }
        }
        out.push_back(make_cert("harmonic_degeneration", "e^{int}, n<=8", {}, worst, 1e-8, worst <= 1e-8));
    }
    for (double a : {-0.5, 0.0, 0.5, 1.0, 2.0})
        for (double r : {0.25, 0.5, 0.9}) {
            const double qv = b_alpha1_quadrature(a, r), cf = b_alpha1_closed_form(a, r);
            const double rel = std::fabs(qv - cf) / std::fabs(cf);
            out.push_back(make_cert("b_alpha1_closed_form", "", {{"alpha", a}, {"r", r}}, rel, 1e-6, rel <= 1e-6));
        }
    return out;
}

inline constexpr std::size_t ex41_probe_angles = 64;

// Divergence map of Example 4.1 at alpha=-0.5, n=1 over {0.9, 0.99, 0.999}.
// Hardy rows hold when the probe diverges; Bergman rows hold when the probe
// agrees with p >= -1/alpha.
inline std::vector<Certification> divergence_suite(unsigned threads = 1) {
    std::vector<Certification> out;
    Ex41Params p{-0.5, 1};
    const std::vector<double> cut{0.9, 0.99, 0.999};
    QuadSpec q;
    auto w = ex41_circle(p);
    for (Partial d : {Partial::dr, Partial::dz, Partial::dzbar})
        for (double pp : {1.0, 2.0}) {
            auto g = divergence_probe(partial_sampler(w, d, ex41_probe_angles), PExponent(pp), cut, NormKind::hardy,
                                      q, threads);
            out.push_back(make_cert("hardy_divergence", to_string(d), {{"p", pp}, {"exponent", g.exponent}},
                                    g.last_ratio, 1.5, g.diverging));
            const bool fit = std::fabs(g.exponent - p.alpha) <= 0.05;
            out.push_back(make_cert("hardy_exponent", to_string(d), {{"p", pp}}, g.exponent, p.alpha, fit));
        }
    for (double pp : {1.0, 1.5, 2.0, 3.0}) {
        auto g = divergence_probe(partial_sampler(w, Partial::dzbar, ex41_probe_angles), PExponent(pp), cut,
                                  NormKind::bergman, q, threads);
        const bool expect = p.alpha * pp <= -1.0;
        out.push_back(make_cert("bergman_divergence", "dzbar", {{"p", pp}, {"expected_diverging", expect ? 1.0 : 0.0}},
                                g.last_ratio, 1.5, g.diverging == expect));
    }
    return out;
}

} // namespace wpk

namespace wpk {

struct EllipticSetup {
    std::vector<double> cutoffs;
    std::vector<DerivField> fields;
};

// Nested fields for the ellipticity trend of a bundled mapping.
// ids: "4.1" (closed form), "4.2" (harmonic extension by quadrature),
// "4.3" (closed form), "identity" (f(z) = z).
inline EllipticSetup elliptic_setup(const std::string& id, double alpha = -0.5, int n = 1, unsigned threads = 1) {
    EllipticSetup s;
    WirtingerCircle w;
    std::size_t per = 32, angles = 64;
    if (id == "4.1") {
        // the blow-up of ||D||^2 - K J only beats K = 100 once 1 - r < 2.4e-5
        s.cutoffs = {1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6};
        w = ex41_circle({alpha, n});
        per = 24;
        angles = 8;
    } else if (id == "4.2") {
        s.cutoffs = {0.9, 0.99, 0.999};
        QuadSpec q;
        q.r_max = 0.999;
        w = kernel_circle(AlphaParam(0.0), ex42_boundary(2048), q);
        angles = 256;
    } else if (id == "4.3") {
        s.cutoffs = {0.9, 0.99, 0.999};
        w = ex43_circle(ex43_terms_for(0.999));
    } else if (id == "identity") {
        s.cutoffs = {0.9, 0.99, 0.999};
        w = [](double, std::size_t m) {
            return std::make_pair(std::vector<cplx>(m, 1.0), std::vector<cplx>(m, 0.0));
        };
        angles = 16;
    } else {
        throw DomainError("unknown example id '" + id + "' (expected 4.1, 4.2, 4.3 or identity)");
    }
    auto master = field_from_circles(w, nested_radii(s.cutoffs, per), angles, threads);
    s.fields = nested_fields(master, s.cutoffs);
    return s;
}

} // namespace wpk
