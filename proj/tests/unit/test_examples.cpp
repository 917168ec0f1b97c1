#include <wpk/examples.hpp>
#include <wpk/kernel.hpp>
#include <wpk/norms.hpp>
#include <wpk/specfun.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wpk;

namespace {

constexpr double pi = std::numbers::pi;

cplx ex41_at(const Ex41Params& p, double x, double y) {
    return ex41_f(p, ComplexPoint(x, y));
}

} // namespace

TEST(Ex41, Coefficients) {
    Ex41Params p{-0.5, 1};
    EXPECT_EQ(ex41_coefficient(p, 0), 1.0);
    EXPECT_NEAR(ex41_coefficient(p, 1), 0.15625, 1e-16);
    EXPECT_NEAR(ex41_coefficient(p, 3), specfun::pochhammer(0.25, 3) * specfun::pochhammer(1.25, 3) /
                                            (specfun::pochhammer(2.0, 3) * 6.0), 1e-16);
    EXPECT_GT(ex41_coefficient(p, 2000), 0.0);
    double s = 0.0, x = 0.36, xk = 1.0;
    for (unsigned k = 0; k < 400; ++k, xk *= x) s += ex41_coefficient(p, k) * xk;
    EXPECT_NEAR(s, ex41_E2(p, 0.6), 1e-14);
    EXPECT_NEAR(std::abs(ex41_f(p, ComplexPoint::polar(0.6, 0.0)) - 0.6 * s), 0.0, 1e-14);
}

TEST(Ex41, ParamsValidated) {
    EXPECT_THROW(ex41_coefficient({0.0, 1}, 1), DomainError);
    EXPECT_THROW(ex41_coefficient({-1.0, 1}, 1), DomainError);
    EXPECT_THROW(ex41_coefficient({-0.5, 0}, 1), DomainError);
}

TEST(Ex41, OriginAndBoundary) {
    for (int n : {1, 2, 3}) {
        Ex41Params p{-0.5, n};
        EXPECT_EQ(ex41_f(p, {0.0, 0.0}), cplx(0.0));
        for (double t : {0.0, 1.0, -2.5}) {
            const cplx want = ex41_boundary_constant(p) * std::polar(1.0, n * t);
            EXPECT_NEAR(std::abs(ex41_f(p, ComplexPoint::polar(1.0, t)) - want), 0.0, 1e-14);
        }
    }
    auto d = ex41_derivs({-0.5, 1}, {0.0, 0.0});
    EXPECT_EQ(d.dzbar, cplx(0.0));
    EXPECT_NEAR(std::abs(d.dz - 1.0), 0.0, 1e-15);
}

TEST(Ex41, DerivativesMatchFiniteDifferences) {
    const double h = 1e-5;
    for (double a : {-0.9, -0.5, -0.1})
        for (int n : {1, 2, 3})
            for (double t : {0.0, 0.8, 2.9}) {
                Ex41Params p{a, n};
                auto z = ComplexPoint::polar(0.5, t);
                const double x = z.z().real(), y = z.z().imag();
                const cplx fx = (ex41_at(p, x + h, y) - ex41_at(p, x - h, y)) / (2.0 * h);
                const cplx fy = (ex41_at(p, x, y + h) - ex41_at(p, x, y - h)) / (2.0 * h);
                const cplx i(0.0, 1.0);
                auto d = ex41_derivs(p, z);
                EXPECT_NEAR(std::abs(d.dz - 0.5 * (fx - i * fy)), 0.0, 1e-7);
                EXPECT_NEAR(std::abs(d.dzbar - 0.5 * (fx + i * fy)), 0.0, 1e-7);
                const cplx fr = (ex41_f(p, ComplexPoint::polar(0.5 + h, t)) - ex41_f(p, ComplexPoint::polar(0.5 - h, t))) /
                                (2.0 * h);
                EXPECT_NEAR(std::abs(d.dr - fr), 0.0, 1e-7);
            }
}

TEST(Ex41, E1Limit) {
    for (double a : {-0.9, -0.5, -0.1})
        for (int n : {1, 3}) {
            Ex41Params p{a, n};
            const double lim = ex41_E1_limit(p);
            double prev = INFINITY;
            for (double e : {1e-3, 1e-5, 1e-7, 1e-10}) {
                const double r = 1.0 - e, w = (1.0 - r) * (1.0 + r);
                const double err = std::fabs(ex41_E1(p, r) * std::pow(w, -a) / lim - 1.0);
                // next term of the expansion is of relative order (1 - r^2)^{-alpha}
                EXPECT_LT(err, 20.0 * std::pow(w, -a)) << a << ' ' << n << ' ' << e;
                EXPECT_LT(err, prev);
                prev = err;
            }
        }
}

TEST(Ex41, E2BoundedByGaussValue) {
    for (double a : {-0.9, -0.5, -0.1})
        for (int n : {1, 2, 3}) {
            Ex41Params p{a, n};
            const double g = specfun::gauss_value(-a / 2, n - a / 2, n + 1.0);
            double prev = 0.0;
            for (double r = 0.0; r < 1.0; r += 0.0371) {
                const double e = ex41_E2(p, r);
                EXPECT_GT(e, 0.0);
                EXPECT_LE(e, g * (1.0 + 1e-14));
                EXPECT_GE(e, prev);
                prev = e;
            }
            EXPECT_LE(ex41_E2(p, 1.0 - 1e-9), g * (1.0 + 1e-14));
        }
}

TEST(Ex41, PoissonIntegralReproducesTheMap) {
    QuadSpec q;
    std::mt19937_64 g(77);
    std::uniform_real_distribution<double> ur(0.0, 0.9), ut(-pi, pi);
    for (double a : {-0.9, -0.5, -0.1})
        for (int n : {1, 2, 3}) {
            Ex41Params p{a, n};
            auto F = ex41_boundary(p);
            for (int k = 0; k < 50; ++k) {
                const double r = std::sqrt(ur(g) / 0.9) * 0.9;
                auto z = ComplexPoint::polar(r, ut(g));
                const cplx want = ex41_f(p, z);
                const cplx got = poisson_integral(AlphaParam(a), F, z, q).value;
                EXPECT_LE(std::abs(got - want), 1e-6 * std::abs(want) + 1e-15) << a << ' ' << n << ' ' << r;
            }
        }
}

TEST(Ex41, CircleMatchesPointwise) {
    Ex41Params p{-0.5, 2};
    auto [dz, dzb] = ex41_circle(p)(0.7, 16);
    for (std::size_t j = 0; j < 16; ++j) {
        auto d = ex41_derivs(p, ComplexPoint::polar(0.7, 2.0 * pi * j / 16));
        EXPECT_NEAR(std::abs(dz[j] - d.dz), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(dzb[j] - d.dzbar), 0.0, 1e-13);
    }
}

TEST(Ex42, PhaseValues) {
    EXPECT_NEAR(ex42_phase(0.0), 1.0, 1e-15);
    EXPECT_NEAR(ex42_phase(-pi), -pi, 1e-14);
    EXPECT_NEAR(std::abs(std::polar(1.0, ex42_phase(pi)) - cplx(-1.0)), 0.0, 1e-14);
    EXPECT_NEAR(ex42_phase(-pi / 2), 1.0 - (pi + 1.0) / 2.0, 1e-14);
    EXPECT_NEAR(ex42_phase(pi / 2), 1.0 + (pi - 1.0) / 2.0, 1e-14);
    EXPECT_NEAR(ex42_phase_slope(-1.0), (pi + 1.0) / pi, 1e-15);
    EXPECT_NEAR(ex42_phase_slope(1.0), (pi - 1.0) / pi, 1e-15);
    // one-sided from the right at the corner
    EXPECT_NEAR(ex42_phase_slope(0.0), (pi - 1.0) / pi, 1e-15);
}

TEST(Ex42, BoundaryContinuousAndUnimodular) {
    const cplx left = std::polar(1.0, ex42_phase(-pi)), right = std::polar(1.0, ex42_phase(pi));
    EXPECT_NEAR(std::abs(left - cplx(-1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(right - cplx(-1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(std::polar(1.0, ex42_phase(-1e-12)) - std::polar(1.0, 1.0)), 0.0, 1e-11);
    auto F = ex42_boundary(1024);
    for (auto v : F.samples()) EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(F.samples()[0] - std::polar(1.0, 1.0)), 0.0, 1e-15);
}

TEST(Ex42, DerivativeNorms) {
    auto D = boundary_derivative(ex42_boundary(4096));
    for (std::size_t j = 0; j < D.size(); ++j) {
        const double t = 2.0 * pi * j / D.size();
        const double want = t < pi ? (pi - 1.0) / pi : (pi + 1.0) / pi;
        if (j == D.size() / 2) continue;
        EXPECT_NEAR(std::abs(D.samples()[j]), want, 1e-14) << j;
    }
    EXPECT_NEAR(lp_norm_circle(D, PExponent(1.0)), 1.0, 1e-12);
    EXPECT_NEAR(lp_norm_circle(D, PExponent::inf()), (pi + 1.0) / pi, 1e-14);
}

TEST(Ex43, Origin) {
    auto v = ex43_f({0.0, 0.0}, 64);
    EXPECT_EQ(v.value, cplx(0.0));
    auto d = ex43_derivs({0.0, 0.0}, 64);
    EXPECT_EQ(d.dz, cplx(0.0));
    EXPECT_EQ(d.dzbar, cplx(0.0));
}

TEST(Ex43, ZeroJacobian) {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> ur(0.0, 0.999), ut(-pi, pi);
    for (int k = 0; k < 200; ++k) {
        auto z = ComplexPoint::polar(ur(g), ut(g));
        auto d = ex43_derivs(z, 512);
        EXPECT_NEAR(std::abs(d.dz) - std::abs(d.dzbar), 0.0, 1e-12 * std::max(1.0, std::abs(d.dz)));
    }
}

TEST(Ex43, GradientGrows) {
    double prev = 0.0;
    for (double r : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
        const double m = std::abs(ex43_derivs(ComplexPoint::polar(r, 0.0), ex43_terms_for(r)).dz);
        EXPECT_GT(m, prev);
        prev = m;
    }
    EXPECT_GT(prev, 100.0);
}

TEST(Ex43, TruncationDoubling) {
    auto a = ex43_f(ComplexPoint(0.5, 0.0), 200), b = ex43_f(ComplexPoint(0.5, 0.0), 400);
    EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-10);
    auto z = ComplexPoint::polar(0.5, 1.1);
    EXPECT_NEAR(std::abs(ex43_f(z, 200).value - ex43_f(z, 400).value), 0.0, 1e-10);
    EXPECT_FALSE(a.truncation_warning);
    EXPECT_NEAR(a.tail_bound, std::pow(0.5, 201) / (201 * std::log(201.0) * 0.5), 1e-70);
}

TEST(Ex43, TruncationWarning) {
    auto v = ex43_f(ComplexPoint(0.99, 0.0), 200);
    EXPECT_TRUE(v.truncation_warning);
    EXPECT_GT(v.tail_bound, 1e-8);
    EXPECT_TRUE(ex43_derivs(ComplexPoint(0.99, 0.0), 200).truncation_warning);
    EXPECT_THROW(ex43_f(ComplexPoint(0.5, 0.0), 1), DomainError);
    EXPECT_THROW(ex43_f(ComplexPoint(1.0, 0.0), 64), DomainError);
}

TEST(Ex43, DerivativesMatchFiniteDifferences) {
    const double h = 1e-6;
    auto f = [](double x, double y) { return ex43_f(ComplexPoint(x, y), 400).value; };
    for (double t : {0.0, 1.3, -2.2}) {
        auto z = ComplexPoint::polar(0.6, t);
        const double x = z.z().real(), y = z.z().imag();
        const cplx fx = (f(x + h, y) - f(x - h, y)) / (2.0 * h), fy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
        auto d = ex43_derivs(z, 400);
        EXPECT_NEAR(std::abs(d.dz - 0.5 * (fx - cplx(0.0, 1.0) * fy)), 0.0, 1e-8);
        EXPECT_NEAR(std::abs(d.dzbar - 0.5 * (fx + cplx(0.0, 1.0) * fy)), 0.0, 1e-8);
    }
}

TEST(Ex43, CircleMatchesPointwise) {
    auto [dz, dzb] = ex43_circle(300)(0.8, 32);
    for (std::size_t j = 0; j < 32; ++j) {
        auto d = ex43_derivs(ComplexPoint::polar(0.8, 2.0 * pi * j / 32), 300);
        EXPECT_NEAR(std::abs(dz[j] - d.dz), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(dzb[j] - d.dzbar), 0.0, 1e-12);
    }
}

TEST(Ex43, BoundaryMatchesSeries) {
    auto F = ex43_boundary(64, 256);
    for (std::size_t j = 0; j < 256; j += 17) {
        const double t = 2.0 * pi * j / 256;
        double s = 0.0;
        for (int n = 2; n <= 64; ++n) s += std::sin(n * t) / (n * std::log(n));
        EXPECT_NEAR(std::abs(F.samples()[j] - s), 0.0, 1e-13);
    }
}
