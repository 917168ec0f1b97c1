#pragma once

#include <wpk/error.hpp>
#include <wpk/kernel.hpp>
#include <wpk/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace wpk {

// Exponent p in [1, inf]; infinity is a flag, never a float.
class PExponent {
public:
    PExponent() = default;
    PExponent(double p) : p_(p) {
        if (!(p >= 1.0) || std::isinf(p)) throw DomainError("p must be a finite number >= 1 (use PExponent::inf())");
    }
    static PExponent inf() {
        PExponent e;
        e.inf_ = true;
        return e;
    }
    static PExponent parse(const std::string& s) {
        if (s == "inf" || s == "infinity" || s == "Inf") return inf();
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') throw DomainError("cannot parse p from '" + s + "'");
        return PExponent(v);
    }
    bool infinite() const { return inf_; }
    double value() const {
        if (inf_) throw DomainError("p = inf has no finite value");
        return p_;
    }
    std::string str() const { return inf_ ? "inf" : format_double(p_); }
    bool operator<(const PExponent& o) const { return !inf_ && (o.inf_ || p_ < o.p_); }

private:
    double p_ = 2.0;
    bool inf_ = false;
};

enum class NormStatus { converged, lower_bound_only, diverging };

inline const char* to_string(NormStatus s) {
    switch (s) {
    case NormStatus::converged: return "converged";
    case NormStatus::lower_bound_only: return "lower_bound_only";
    case NormStatus::diverging: return "diverging";
    }
    return "?";
}

struct NormEstimate {
    double value = 0.0;
    PExponent p;
    double r_max = 0.0;
    std::size_t n_nodes = 0; // largest angular node count used
    NormStatus status = NormStatus::lower_bound_only;
    std::vector<double> radii;
    std::vector<double> means; // M_p on each radius
};

// ((1/n) sum |v|^p)^{1/p}, or max |v|.
inline double lp_mean(std::span<const cplx> v, const PExponent& p) {
    if (v.empty()) throw DomainError("lp_mean: no samples");
    if (p.infinite()) {
        double m = 0.0;
        for (auto& x : v) m = std::max(m, std::abs(x));
        return m;
    }
    const double pp = p.value();
    // scale by the max to keep |v|^p finite
    double m = 0.0;
    for (auto& x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (auto& x : v) s += std::pow(std::abs(x) / m, pp);
    return m * std::pow(s / static_cast<double>(v.size()), 1.0 / pp);
}

inline double lp_norm_circle(const BoundaryData& G, const PExponent& p) { return lp_mean(G.samples(), p); }

inline double integral_mean(std::span<const cplx> values, double r, const PExponent& p) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("integral_mean: r must lie in [0, 1)");
    return lp_mean(values, p);
}

struct DistortionNorms {
    double norm; // |dz| + |dzbar|
    double l;    // ||dz| - |dzbar||
    double jac;  // |dz|^2 - |dzbar|^2
};

inline DistortionNorms dfield_norms(cplx dz, cplx dzbar) {
    const double a = std::abs(dz), b = std::abs(dzbar);
    return {a + b, std::fabs(a - b), (a - b) * (a + b)};
}

// r -> samples on a uniform grid of that circle (any length).
using CircleSampler = std::function<std::vector<cplx>(double r)>;
using DiskEvaluator = std::function<cplx(const ComplexPoint&)>;

inline CircleSampler sample_uniform(DiskEvaluator f, std::size_t n) {
    return [f = std::move(f), n](double r) {
        std::vector<cplx> v(n);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = f(ComplexPoint::polar(r, two_pi * static_cast<double>(j) / static_cast<double>(n)));
        return v;
    };
}

namespace detail {

struct Means {
    std::vector<double> radii, means;
    std::size_t max_nodes = 0;
};

inline Means circle_means(const CircleSampler& f, const PExponent& p, const std::vector<double>& radii,
                          unsigned threads) {
    Means m;
    m.radii = radii;
    m.means.resize(radii.size());
    std::vector<std::size_t> sizes(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) {
        auto v = f(radii[i]);
        sizes[i] = v.size();
        m.means[i] = lp_mean(v, p);
    });
    for (auto s : sizes) m.max_nodes = std::max(m.max_nodes, s);
    return m;
}

inline double bergman_from_means(const Means& m, const PExponent& p) {
    if (p.infinite()) return *std::max_element(m.means.begin(), m.means.end());
    const double pp = p.value();
    // trapezoid in r of 2 r M_p(r)^p; the grid starts at 0 (prepended if not)
    std::vector<double> r = m.radii, g(m.means.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * r[i] * std::pow(m.means[i], pp);
    if (r.front() > 0.0) {
        r.insert(r.begin(), 0.0);
        g.insert(g.begin(), 0.0);
    }
    double s = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) s += 0.5 * (r[i] - r[i - 1]) * (g[i] + g[i - 1]);
    return std::pow(s, 1.0 / pp);
}

// Growth per decade of (1 - r) over the last pair of radii.
inline double decade_ratio(double r0, double m0, double r1, double m1) {
    if (!(m0 > 0.0)) return m1 > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    const double decades = std::log10((1.0 - r0) / (1.0 - r1));
    if (!(decades > 0.0)) return 1.0;
    return std::pow(m1 / m0, 1.0 / decades);
}

} // namespace detail

inline NormEstimate hardy_norm(const CircleSampler& f, const PExponent& p, const QuadSpec& q,
                               unsigned threads = 1) {
    q.validate();
    auto m = detail::circle_means(f, p, q.radii(), threads);
    NormEstimate e;
    e.p = p;
    e.r_max = m.radii.back();
    e.n_nodes = m.max_nodes;
    e.value = *std::max_element(m.means.begin(), m.means.end());
    e.status = NormStatus::lower_bound_only;
    const std::size_t k = m.means.size();
    if (k >= 3) {
        const double a = m.means[k - 3], b = m.means[k - 2], c = m.means[k - 1];
        const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
        if (std::fabs(c - b) <= 1e-12 * scale && std::fabs(b - a) <= 1e-12 * scale) {
            e.status = NormStatus::converged; // flat: the sup is attained
        } else if (a < b && b < c &&
                   detail::decade_ratio(m.radii[k - 2], b, m.radii[k - 1], c) >= 1.5) {
            e.status = NormStatus::diverging;
        }
    }
    e.radii = std::move(m.radii);
    e.means = std::move(m.means);
    return e;
}

enum class NormKind { hardy, bergman };

inline const char* to_string(NormKind k) { return k == NormKind::hardy ? "hardy" : "bergman"; }

struct GrowthReport {
    NormKind kind = NormKind::hardy;
    PExponent p;
    std::vector<double> cutoffs;
    std::vector<double> values;
    double exponent = 0.0; // v ~ A + B (1 - r)^exponent over the last three cutoffs
    double last_ratio = 1.0;
    bool monotone = false;
    bool diverging = false;
};

// Exponent b with (s3^b - s2^b)/(s2^b - s1^b) = (v3 - v2)/(v2 - v1); the
// differencing removes any additive constant in v. NaN when the differences
// change sign, 0 when v is flat.
inline double fit_growth_exponent(const double s[3], const double v[3]) {
    const double d1 = v[1] - v[0], d2 = v[2] - v[1];
    const double scale = std::max({std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2]), 1e-300});
    if (std::fabs(d1) <= 1e-12 * scale && std::fabs(d2) <= 1e-12 * scale) return 0.0;
    if (d1 == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double rho = d2 / d1;
    if (!(rho > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    auto h = [&](double b) {
        if (std::fabs(b) < 1e-12) return std::log(s[2] / s[1]) / std::log(s[1] / s[0]);
        return (std::pow(s[2], b) - std::pow(s[1], b)) / (std::pow(s[1], b) - std::pow(s[0], b));
    };
    // h decreases in b for s1 > s2 > s3 > 0
    double lo = -20.0, hi = 20.0;
    if (rho > h(lo) || rho < h(hi)) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (h(mid) > rho) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// QuadSpec truncated at a new r_max with the same node policy.
inline QuadSpec truncate_spec(const QuadSpec& q, double r_max) {
    QuadSpec t = q;
    t.r_max = r_max;
    t.radial_grid.clear();
    return t;
}

inline GrowthReport divergence_probe(const CircleSampler& f, const PExponent& p, const std::vector<double>& cutoffs,
                                     NormKind kind, const QuadSpec& q, unsigned threads = 1) {
    if (cutoffs.size() < 3) throw DomainError("divergence_probe: needs at least 3 cutoffs");
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > 0.0 && cutoffs[i] < 1.0)) throw DomainError("divergence_probe: cutoffs must lie in (0, 1)");
        if (i > 0 && !(cutoffs[i] > cutoffs[i - 1])) throw DomainError("divergence_probe: cutoffs must increase");
    }
    GrowthReport g;
    g.kind = kind;
    g.p = p;
    g.cutoffs = cutoffs;
    for (double c : cutoffs) {
        auto m = detail::circle_means(f, p, truncate_spec(q, c).radii(), threads);
        g.values.push_back(kind == NormKind::hardy ? *std::max_element(m.means.begin(), m.means.end())
                                                   : detail::bergman_from_means(m, p));
    }
    const std::size_t k = g.values.size();
    g.monotone = true;
    for (std::size_t i = 1; i < k; ++i)
        if (!(g.values[i] > g.values[i - 1])) g.monotone = false;
    g.last_ratio = g.values[k - 2] > 0.0 ? g.values[k - 1] / g.values[k - 2]
                                         : (g.values[k - 1] > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    g.diverging = g.monotone && g.last_ratio >= 1.5;
    const double s[3] = {1.0 - cutoffs[k - 3], 1.0 - cutoffs[k - 2], 1.0 - cutoffs[k - 1]};
    const double v[3] = {g.values[k - 3], g.values[k - 2], g.values[k - 1]};
    g.exponent = fit_growth_exponent(s, v);
    return g;
}

// Cutoffs 1 - (1 - r_max) * {100, 10, 1}, dropping nonpositive ones.
inline std::vector<double> nested_cutoffs(double r_max) {
    std::vector<double> c;
    for (double k : {100.0, 10.0, 1.0}) {
        double v = 1.0 - (1.0 - r_max) * k;
        if (v > 0.0) c.push_back(v);
    }
    c.back() = r_max;
    return c;
}

inline NormEstimate bergman_norm(const CircleSampler& f, const PExponent& p, const QuadSpec& q,
                                 unsigned threads = 1) {
    q.validate();
    auto m = detail::circle_means(f, p, q.radii(), threads);
    NormEstimate e;
    e.p = p;
    e.r_max = m.radii.back();
    e.n_nodes = m.max_nodes;
    e.value = detail::bergman_from_means(m, p);
    e.status = NormStatus::lower_bound_only;
    auto cut = nested_cutoffs(e.r_max);
    if (cut.size() >= 3) {
        auto g = divergence_probe(f, p, cut, NormKind::bergman, q, threads);
        if (g.diverging) e.status = NormStatus::diverging;
        else if (g.values[2] <= g.values[1] * (1.0 + 1e-2)) e.status = NormStatus::converged;
    }
    e.radii = std::move(m.radii);
    e.means = std::move(m.means);
    return e;
}

} // namespace wpk
