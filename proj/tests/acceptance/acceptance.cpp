// Acceptance gate. One PASS/FAIL line per criterion; exit status 1 when any
// selected criterion fails.
//
//   acceptance               run all criteria
//   acceptance --criterion N run criterion N only

#include <wpk/suites.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

using namespace wpk;

namespace {

unsigned threads() {
    unsigned t = std::thread::hardware_concurrency();
    return t == 0 ? 1 : std::min(t, 8u);
}

struct Outcome {
    bool pass;
    std::string summary;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// --- 1 ---------------------------------------------------------------------
Outcome hypergeometric_oracle() {
    QuadSpec q;
    q.angular_nodes = 2048;
    auto pts = random_points(20240601, 50, 0.9);
    double worst = 0.0;
    for (double a : {-0.9, -0.5, -0.1})
        for (int n : {1, 2, 3}) {
            Ex41Params p{a, n};
            auto F = ex41_boundary(p, 2048);
            AlphaParam al(a);
            double w = 0.0;
            for (auto& z : pts) {
                const cplx exact = ex41_f(p, z);
                const cplx got = poisson_integral_nodes(al, F, z, 2048);
                w = std::max(w, std::abs(got - exact) / std::abs(exact));
            }
            std::printf("  alpha=%g n=%d max rel err %.3e\n", a, n, w);
            worst = std::max(worst, w);
        }
    return {worst <= 1e-6, fmt("max relative error %.3e (tol 1e-6, N=2048, 50 points r<=0.9)", worst)};
}

// --- 2 ---------------------------------------------------------------------
Outcome harmonic_degeneration() {
    AlphaParam a0(0.0);
    QuadSpec q;
    auto pts = random_points(777, 200, 0.9);
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n) {
        auto F = BoundaryData::from_fourier({{n, 1.0}}, 2048);
        double w = 0.0;
        for (auto& z : pts) {
            const cplx exact = std::polar(std::pow(z.r(), n), n * z.theta());
            w = std::max(w, std::abs(poisson_integral(a0, F, z, q).value - exact));
        }
        std::printf("  n=%d max abs err %.3e\n", n, w);
        worst = std::max(worst, w);
    }
    return {worst <= 1e-8, fmt("max abs error %.3e (tol 1e-8, n=0..8, r<=0.9)", worst)};
}

// --- 3 ---------------------------------------------------------------------
Outcome derivative_identity() {
    const double h = 1e-5;
    QuadSpec q;
    std::vector<NamedBoundary> smooth;
    smooth.push_back({"monomial(n=3)", BoundaryData::from_fourier({{3, 1.0}}, 2048)});
    smooth.push_back({"trig_mix", BoundaryData::from_fourier({{1, 1.0}, {-2, cplx(0.3, -0.1)}, {5, 0.1}}, 2048)});
    smooth.push_back({"ex4.1(alpha=-0.5,n=1)", ex41_boundary({-0.5, 1}, 2048)});
    smooth.push_back({"ex4.3(N=512)", ex43_boundary(512, 2048)});
    double worst = 0.0;
    std::size_t points = 0;
    for (auto& b : smooth)
        for (double al : {-0.5, 0.0, 1.0}) {
            AlphaParam a(al);
            double w = 0.0;
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j) {
                    const double r = 0.05 + 0.09 * i;
                    const double t = two_pi * (j + 0.25) / 10.0;
                    const std::size_t n = q.nodes_for(r + h);
                    const cplx j1 = J1_nodes(a, b.data, ComplexPoint::polar(r, t), n);
                    const cplx j2 = J2_nodes(a, b.data, ComplexPoint::polar(r, t), n);
                    const cplx fp = poisson_integral_nodes(a, b.data, ComplexPoint::polar(r + h, t), n);
                    const cplx fm = poisson_integral_nodes(a, b.data, ComplexPoint::polar(r - h, t), n);
                    const cplx rdr = r * (fp - fm) / (2.0 * h);
                    const double scale = 1.0 + std::abs(j1) + std::abs(j2);
                    w = std::max(w, std::abs(j1 + j2 - rdr) / scale);
                    ++points;
                }
            std::printf("  %-24s alpha=%4g max scaled residual %.3e\n", b.name.c_str(), al, w);
            worst = std::max(worst, w);
        }
    return {worst <= 1e-6,
            fmt("max |J1+J2-r dr f|/(1+|J1|+|J2|) = %.3e over %zu points (tol 1e-6)", worst, points)};
}

// --- 4 ---------------------------------------------------------------------
Outcome hardy_bound() {
    QuadSpec q;
    double worst = -INFINITY;
    std::size_t rows = 0;
    bool ok = true;
    for (const auto& b : bundled_boundaries(q.angular_nodes))
        for (double al : {-0.5, 0.0, 1.0})
            for (double p : {1.0, 2.0, 4.0}) {
                auto h = check_eq_3_7(AlphaParam(al), b.data, PExponent(p), q, threads());
                double excess = -INFINITY;
                for (auto& c : h.rows) {
                    excess = std::max(excess, c.lhs - c.rhs);
                    ok = ok && c.lhs <= c.rhs + 1e-6;
                    ++rows;
                }
                std::printf("  %-24s alpha=%4g p=%g max(M_p - ||dF||) %.3e ratio %.6f\n", b.name.c_str(), al, p,
                            excess, h.max_ratio);
                worst = std::max(worst, excess);
            }
    return {ok, fmt("max excess M_p(r, dtheta f) - ||dF||_p = %.3e over %zu radii (slack 1e-6)", worst, rows)};
}

// --- 5 ---------------------------------------------------------------------
Outcome lemma_grids() {
    QuadSpec q;
    std::size_t n = 0, bad = 0;
    double margin = INFINITY;
    for (double a : {0.25, 0.5, 1.0, 2.0, 5.0})
        for (double r : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999}) {
            auto c = check_lemma_I(a, r, q);
            ++n;
            bad += !c.holds;
            margin = std::min(margin, c.rhs - c.lhs);
        }
    std::printf("  weighted kernel mean: %zu points, min(rhs - lhs) %.3e\n", n, margin);
    const double m1 = margin;
    margin = INFINITY;
    std::size_t n2 = 0;
    for (double a : {-0.9, -0.75, -0.5, -0.25, -0.1})
        for (double r : {0.5, 0.6, 0.75, 0.9, 0.99, 0.999}) {
            auto c = check_lemma_32(a, r, q);
            ++n2;
            bad += !c.holds;
            margin = std::min(margin, c.rhs - c.lhs);
        }
    std::printf("  reciprocal power bound: %zu points, min(rhs - lhs) %.3e\n", n2, margin);
    return {bad == 0, fmt("%zu of %zu grid points fail (slack 1e-8); min margins %.3e / %.3e", bad, n + n2, m1,
                          margin)};
}

// --- 6 ---------------------------------------------------------------------
Outcome b_alpha1() {
    double worst = 0.0;
    for (double a : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 3.5})
        for (double r : {0.25, 0.5, 0.9}) {
            const double qv = b_alpha1_quadrature(a, r), cf = b_alpha1_closed_form(a, r);
            const double rel = std::fabs(qv - cf) / std::fabs(cf);
            std::printf("  alpha=%4g r=%4g quad %.15g closed %.15g rel %.2e\n", a, r, qv, cf, rel);
            worst = std::max(worst, rel);
        }
    return {worst <= 1e-6, fmt("max relative error %.3e (tol 1e-6)", worst)};
}

// --- 7 ---------------------------------------------------------------------
Outcome divergence_map() {
    auto rows = divergence_suite(threads());
    bool ok = true;
    for (auto& c : rows) {
        std::string params;
        for (auto& [k, v] : c.params) params += fmt(" %s=%g", k.c_str(), v);
        std::printf("  %-18s %-6s%s value %.4f ref %.4f %s\n", c.check.c_str(), c.subject.c_str(), params.c_str(),
                    c.lhs, c.rhs, c.holds ? "ok" : "MISMATCH");
        ok = ok && c.holds;
    }
    return {ok, fmt("%zu divergence/exponent checks for Example 4.1 (alpha=-0.5, n=1)", rows.size())};
}

// --- 8 ---------------------------------------------------------------------
Outcome inclusion_chain() {
    QuadSpec q;
    const double slack = 1e-9;
    std::size_t checks = 0, bad = 0;
    double worst = -INFINITY;
    auto run = [&](const std::string& name, const CircleSampler& raw) {
        // every p and every truncation revisits the same circles
        auto cache = std::make_shared<std::map<double, std::vector<cplx>>>();
        auto mu = std::make_shared<std::mutex>();
        CircleSampler s = [raw, cache, mu](double r) {
            {
                std::lock_guard<std::mutex> lk(*mu);
                auto it = cache->find(r);
                if (it != cache->end()) return it->second;
            }
            auto v = raw(r);
            std::lock_guard<std::mutex> lk(*mu);
            cache->emplace(r, v);
            return v;
        };
        std::vector<double> H;
        for (double p : {1.0, 2.0, 4.0}) {
            const double h = hardy_norm(s, PExponent(p), q, threads()).value;
            const double b = bergman_norm(s, PExponent(p), q, threads()).value;
            ++checks;
            worst = std::max(worst, b - h);
            if (!(b <= h + slack)) ++bad;
            if (!H.empty()) {
                ++checks;
                worst = std::max(worst, H.back() - h);
                if (!(H.back() <= h + slack)) ++bad;
            }
            H.push_back(h);
        }
        std::printf("  %-40s H1 %.6g H2 %.6g H4 %.6g\n", name.c_str(), H[0], H[1], H[2]);
    };
    QuadSpec qk = q;
    for (const auto& b : bundled_boundaries(q.angular_nodes))
        for (double al : {-0.5, 0.0, 1.0})
            for (Partial d : {Partial::dz, Partial::dzbar, Partial::dr})
                run(b.name + fmt(" alpha=%g ", al) + to_string(d),
                    kernel_partial_sampler(AlphaParam(al), b.data, qk, d));
    for (Partial d : {Partial::dz, Partial::dzbar, Partial::dr})
        run(std::string("ex4.1 closed form ") + to_string(d), partial_sampler(ex41_circle({-0.5, 1}), d, 64));
    for (Partial d : {Partial::dz, Partial::dzbar})
        run(std::string("ex4.3 closed form ") + to_string(d),
            partial_sampler(ex43_circle(ex43_terms_for(q.r_max)), d, 64));
    return {bad == 0, fmt("%zu of %zu inclusions violated; max(lhs - rhs) %.3e (slack 1e-9)", bad, checks, worst)};
}

// --- 9 ---------------------------------------------------------------------
Outcome ellipticity() {
    struct Case {
        const char* id;
        EllipticVerdict expect;
    };
    bool ok = true;
    std::string failed;
    for (auto c : {Case{"4.1", EllipticVerdict::non_elliptic_trend}, Case{"4.2", EllipticVerdict::non_elliptic_trend},
                   Case{"4.3", EllipticVerdict::non_elliptic_trend},
                   Case{"identity", EllipticVerdict::elliptic_candidate}}) {
        auto s = elliptic_setup(c.id, -0.5, 1, threads());
        auto rep = ellipticity_report(s.fields, s.cutoffs, {1.0, 10.0, 100.0});
        const bool hit = rep.verdict == c.expect;
        std::printf("  %-8s verdict %-18s expected %-18s %s\n", c.id, to_string(rep.verdict), to_string(c.expect),
                    hit ? "ok" : "MISMATCH");
        for (auto& t : rep.trends) {
            std::string vals;
            for (auto& e : rep.entries)
                if (e.K == t.K) vals += fmt(" %.4g", e.min_kprime);
            std::printf("    K=%-4g min K' over cutoffs:%s growing=%d last_ratio=%.3g\n", t.K, vals.c_str(),
                        static_cast<int>(t.growing), t.last_ratio);
        }
        if (!hit) failed += std::string(failed.empty() ? "" : ", ") + c.id;
        ok = ok && hit;
    }
    return {ok, ok ? std::string("all four verdicts as expected")
                   : "verdict mismatch for " + failed};
}

// --- 10 --------------------------------------------------------------------
Outcome special_functions() {
    auto rows = specfun_suite();
    bool ok = true;
    for (auto& c : rows) {
        std::printf("  %-22s %-26s err %.3e tol %.0e %s\n", c.check.c_str(), c.subject.c_str(), c.lhs, c.rhs,
                    c.holds ? "ok" : "FAIL");
        ok = ok && c.holds;
    }
    return {ok, fmt("%zu special-function identities", rows.size())};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
    {"hypergeometric oracle", hypergeometric_oracle},
    {"harmonic degeneration", harmonic_degeneration},
    {"derivative identity", derivative_identity},
    {"explicit Hardy bound", hardy_bound},
    {"kernel lemma grids", lemma_grids},
    {"closed-form B_{alpha,1}", b_alpha1},
    {"divergence regime map", divergence_map},
    {"inclusion chain", inclusion_chain},
    {"ellipticity falsification", ellipticity},
    {"special-function suite", special_functions},
};

bool run_one(std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = criteria[i].second();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.summary.c_str(), secs);
    std::fflush(stdout);
    return o.pass;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::size_t> which;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            const int k = std::atoi(argv[++i]);
            if (k < 1 || k > static_cast<int>(criteria.size())) {
                std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
                return 2;
            }
            which.push_back(static_cast<std::size_t>(k - 1));
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    if (which.empty())
        for (std::size_t i = 0; i < criteria.size(); ++i) which.push_back(i);
    int failed = 0;
    for (auto i : which) failed += !run_one(i);
    if (which.size() > 1) std::printf("%d of %zu criteria failed\n", failed, which.size());
    return failed == 0 ? 0 : 1;
}
