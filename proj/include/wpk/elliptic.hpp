#pragma once

#include <wpk/derivs.hpp>
#include <wpk/error.hpp>
#include <wpk/norms.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace wpk {

// Smallest K' with ||D||^2 <= K J + K' at every grid point.
inline double min_kprime(const DerivField& field, double K) {
    if (field.size() == 0) throw DomainError("min_kprime: empty grid");
    if (!(K >= 1.0)) throw DomainError("min_kprime: K must be >= 1");
    double m = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k) {
        auto d = dfield_norms(field.dz[k], field.dzbar[k]);
        m = std::max(m, d.norm * d.norm - K * d.jac);
    }
    return m;
}

// Fraction of grid points with J <= 0.
inline double nonpositive_jacobian_fraction(const DerivField& field) {
    if (field.size() == 0) throw DomainError("empty grid");
    std::size_t c = 0;
    for (std::size_t k = 0; k < field.size(); ++k)
        if (dfield_norms(field.dz[k], field.dzbar[k]).jac <= 0.0) ++c;
    return static_cast<double>(c) / static_cast<double>(field.size());
}

enum class EllipticVerdict { elliptic_candidate, non_elliptic_trend };

inline const char* to_string(EllipticVerdict v) {
    return v == EllipticVerdict::elliptic_candidate ? "elliptic_candidate" : "non_elliptic_trend";
}

struct KprimeEntry {
    double K;
    double r_max;
    double min_kprime;
};

struct KTrend {
    double K;
    bool growing = false; // monotone, last ratio >= 1.5
    bool stable = false;  // last relative change < 5%
    double last_ratio = 1.0;
};

struct EllipticReport {
    std::vector<double> K_values;
    std::vector<double> r_max;
    std::vector<KprimeEntry> entries; // K-major
    std::vector<KTrend> trends;
    std::vector<double> nonpositive_jacobian; // per r_max
    EllipticVerdict verdict = EllipticVerdict::elliptic_candidate;
};

// A trend is claimed only when every K grows; otherwise the grid fails to
// falsify the condition.
inline EllipticReport ellipticity_report(const std::vector<DerivField>& fields, const std::vector<double>& r_max,
                                         const std::vector<double>& K_list) {
    if (fields.size() < 3 || fields.size() != r_max.size())
        throw DomainError("ellipticity_report: needs >= 3 nested fields with matching radii");
    if (K_list.empty()) throw DomainError("ellipticity_report: empty K list");
    for (std::size_t i = 1; i < r_max.size(); ++i)
        if (!(r_max[i] > r_max[i - 1])) throw DomainError("ellipticity_report: radii must increase");
    EllipticReport rep;
    rep.K_values = K_list;
    rep.r_max = r_max;
    for (auto& f : fields) rep.nonpositive_jacobian.push_back(nonpositive_jacobian_fraction(f));
    bool all_growing = true;
    for (double K : K_list) {
        std::vector<double> v;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            v.push_back(min_kprime(fields[i], K));
            rep.entries.push_back({K, r_max[i], v.back()});
        }
        KTrend t;
        t.K = K;
        bool mono = true;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] < v[i - 1]) mono = false;
        const double a = v[v.size() - 2], b = v.back();
        t.last_ratio = a > 0.0 ? b / a : (b > 0.0 ? INFINITY : 1.0);
        t.growing = mono && b > 0.0 && t.last_ratio >= 1.5;
        const double scale = std::max(std::fabs(a), std::fabs(b));
        t.stable = scale == 0.0 || std::fabs(b - a) < 0.05 * scale;
        all_growing = all_growing && t.growing;
        rep.trends.push_back(t);
    }
    rep.verdict = all_growing ? EllipticVerdict::non_elliptic_trend : EllipticVerdict::elliptic_candidate;
    return rep;
}

// Fields restricted to each cutoff of one master field; nesting makes
// min_kprime nondecreasing in the cutoff by construction.
inline std::vector<DerivField> nested_fields(const DerivField& master, const std::vector<double>& r_max) {
    std::vector<DerivField> out;
    for (double r : r_max) out.push_back(master.truncated(r));
    return out;
}

// Union of boundary-refined grids, one per cutoff.
inline std::vector<double> nested_radii(const std::vector<double>& r_max, std::size_t per_cutoff) {
    std::vector<double> all;
    for (double r : r_max) {
        auto g = QuadSpec::boundary_refined_grid(r, per_cutoff);
        all.insert(all.end(), g.begin(), g.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// l^p >= ||D||^p / (2^{p-1} K^p) - (sqrt(K')/K)^p at every point where
// ||D||^2 <= K J + K'; returns the largest violation (<= 0 when it holds).
inline double lower_distortion_violation(const DerivField& field, double K, double Kprime, double p) {
    double worst = -INFINITY;
    for (std::size_t k = 0; k < field.size(); ++k) {
        auto d = dfield_norms(field.dz[k], field.dzbar[k]);
        if (d.norm * d.norm > K * d.jac + Kprime) continue;
        const double rhs = std::pow(d.norm, p) / (std::pow(2.0, p - 1.0) * std::pow(K, p)) -
                           std::pow(std::sqrt(Kprime) / K, p);
        worst = std::max(worst, rhs - std::pow(d.l, p));
    }
    return worst;
}

} // namespace wpk
