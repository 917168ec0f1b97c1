#include <wpk/elliptic.hpp>
#include <wpk/examples.hpp>
#include <wpk/suites.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wpk;

namespace {

DerivField uniform_field(cplx dz, cplx dzbar, std::size_t n = 16) {
    DerivField f;
    for (std::size_t k = 0; k < n; ++k)
        f.push_wirtinger(ComplexPoint::polar(0.5, 2.0 * std::numbers::pi * k / n), dz, dzbar);
    return f;
}

DerivField random_field(std::uint64_t seed, std::size_t n = 400, bool sense_preserving = false) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> u;
    std::uniform_real_distribution<double> ur(0.0, 0.99), ut(-3.0, 3.0);
    DerivField f;
    for (std::size_t k = 0; k < n; ++k) {
        cplx dz(u(g), u(g)), dzb(u(g), u(g));
        if (sense_preserving && std::abs(dzb) > std::abs(dz)) std::swap(dz, dzb);
        f.push_wirtinger(ComplexPoint::polar(ur(g), ut(g)), dz, dzb);
    }
    return f;
}

DerivField ex43_field(double r_max) {
    DerivField f;
    for (double r = 0.1; r <= r_max + 1e-12; r += (r_max - 0.1) / 20)
        for (int j = 0; j < 8; ++j) {
            auto z = ComplexPoint::polar(r, j * 0.7);
            auto d = ex43_derivs(z, ex43_terms_for(r));
            f.push_wirtinger(z, d.dz, d.dzbar);
        }
    return f;
}

} // namespace

TEST(MinKprime, Examples) {
    for (double K : {1.0, 2.0, 100.0}) EXPECT_EQ(min_kprime(uniform_field(1.0, 0.0), K), 0.0);
    EXPECT_EQ(min_kprime(uniform_field(1.0, 0.5), 3.0), 0.0);
    EXPECT_NEAR(min_kprime(uniform_field(1.0, 0.5), 1.0), 2.25 - 0.75, 1e-15);
}

TEST(MinKprime, ExampleFourThreeEqualsMaxNormSquared) {
    double prev = 0.0;
    for (double r : {0.9, 0.99, 0.999}) {
        auto f = ex43_field(r);
        double m = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, std::pow(std::abs(f.dz[k]) + std::abs(f.dzbar[k]), 2));
        for (double K : {1.0, 10.0, 100.0}) EXPECT_NEAR(min_kprime(f, K), m, 1e-12 * m);
        EXPECT_GT(m, prev);
        prev = m;
    }
}

TEST(MinKprime, NonincreasingInKWhenSensePreserving) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto f = random_field(s, 400, true);
        double prev = INFINITY;
        for (double K : {1.0, 1.5, 2.0, 5.0, 10.0, 100.0}) {
            const double v = min_kprime(f, K);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, prev);
            prev = v;
        }
    }
}

TEST(MinKprime, GrowsInKWhereJacobianNegative) {
    // ||D||^2 - K J increases with K once J < 0
    auto f = uniform_field(0.5, 1.0);
    EXPECT_LT(min_kprime(f, 1.0), min_kprime(f, 10.0));
}

TEST(MinKprime, BoundedDistortion) {
    // |dzbar| <= |dz| / 2 gives ||D||^2 / J <= (1.5)^2 / 0.75 = 3
    std::mt19937_64 g(8);
    std::uniform_real_distribution<double> u(0.0, 1.0), ut(-3.0, 3.0);
    DerivField f;
    for (int k = 0; k < 500; ++k) {
        const cplx dz = std::polar(0.1 + u(g), ut(g));
        f.push_wirtinger(ComplexPoint::polar(0.5 * u(g), ut(g)), dz, 0.5 * u(g) * std::abs(dz) * std::polar(1.0, ut(g)));
    }
    for (double K : {3.0, 4.0, 50.0}) EXPECT_EQ(min_kprime(f, K), 0.0);
}

TEST(MinKprime, Errors) {
    EXPECT_THROW(min_kprime(DerivField{}, 2.0), DomainError);
    EXPECT_THROW(min_kprime(uniform_field(1.0, 0.0), 0.5), DomainError);
    EXPECT_THROW(nonpositive_jacobian_fraction(DerivField{}), DomainError);
}

TEST(LowerDistortion, HoldsWhereConditionHolds) {
    for (std::uint64_t s = 11; s <= 15; ++s) {
        auto f = random_field(s);
        for (double K : {1.0, 3.0, 10.0})
            for (double kp : {0.0, 0.5, min_kprime(f, K)})
                for (double p : {1.0, 2.0}) EXPECT_LE(lower_distortion_violation(f, K, kp, p), 1e-9);
    }
}

TEST(NonpositiveJacobian, Fractions) {
    EXPECT_EQ(nonpositive_jacobian_fraction(uniform_field(1.0, 0.0)), 0.0);
    EXPECT_EQ(nonpositive_jacobian_fraction(uniform_field(0.5, 1.0)), 1.0);
    EXPECT_EQ(nonpositive_jacobian_fraction(ex43_field(0.9)), 1.0);
}

TEST(EllipticityReport, Identity) {
    auto s = elliptic_setup("identity");
    auto rep = ellipticity_report(s.fields, s.cutoffs, {1.0, 10.0});
    EXPECT_EQ(rep.verdict, EllipticVerdict::elliptic_candidate);
    for (auto& e : rep.entries) EXPECT_NEAR(e.min_kprime, 0.0, 1e-12);
    for (double v : rep.nonpositive_jacobian) EXPECT_EQ(v, 0.0);
}

TEST(EllipticityReport, ExampleFourOneTrend) {
    auto s = elliptic_setup("4.1", -0.5, 1);
    auto rep = ellipticity_report(s.fields, s.cutoffs, {1.0, 10.0, 100.0});
    EXPECT_EQ(rep.verdict, EllipticVerdict::non_elliptic_trend);
    for (auto& t : rep.trends) EXPECT_GE(t.last_ratio, 1.5) << t.K;
}

TEST(EllipticityReport, ExampleFourThreeTrend) {
    auto s = elliptic_setup("4.3");
    auto rep = ellipticity_report(s.fields, s.cutoffs, {1.0, 10.0, 100.0});
    EXPECT_EQ(rep.verdict, EllipticVerdict::non_elliptic_trend);
}

TEST(EllipticityReport, NestedGridsMonotone) {
    auto master = random_field(21, 2000);
    const std::vector<double> cut{0.5, 0.8, 0.95, 0.99};
    auto fields = nested_fields(master, cut);
    for (double K : {1.0, 4.0}) {
        double prev = 0.0;
        for (auto& f : fields) {
            const double v = min_kprime(f, K);
            EXPECT_GE(v, prev);
            prev = v;
        }
    }
}

TEST(EllipticityReport, Errors) {
    auto f = uniform_field(1.0, 0.0);
    EXPECT_THROW(ellipticity_report({f, f}, {0.5, 0.6}, {1.0}), DomainError);
    EXPECT_THROW(ellipticity_report({f, f, f}, {0.5, 0.6}, {1.0}), DomainError);
    EXPECT_THROW(ellipticity_report({f, f, f}, {0.5, 0.6, 0.6}, {1.0}), DomainError);
    EXPECT_THROW(ellipticity_report({f, f, f}, {0.5, 0.6, 0.7}, {}), DomainError);
}
