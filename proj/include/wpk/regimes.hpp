#pragma once

#include <wpk/derivs.hpp>
#include <wpk/error.hpp>
#include <wpk/kernel.hpp>
#include <wpk/norms.hpp>
#include <wpk/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace wpk {

enum class Regime { Pi1, Pi2, Pi3 };

enum class Prediction {
    hardy_all_partials_bounded,
    bergman_bounded,
    counterexample_exists_hardy,
    counterexample_exists_bergman,
    elliptic_hypothesis_rescues,
};

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::Pi1: return "Pi1";
    case Regime::Pi2: return "Pi2";
    case Regime::Pi3: return "Pi3";
    }
    return "?";
}

inline const char* to_string(Prediction p) {
    switch (p) {
    case Prediction::hardy_all_partials_bounded: return "hardy_all_partials_bounded";
    case Prediction::bergman_bounded: return "bergman_bounded";
    case Prediction::counterexample_exists_hardy: return "counterexample_exists_hardy";
    case Prediction::counterexample_exists_bergman: return "counterexample_exists_bergman";
    case Prediction::elliptic_hypothesis_rescues: return "elliptic_hypothesis_rescues";
    }
    return "?";
}

struct RegimeClass {
    Regime label;
    double alpha;
    PExponent p;
    std::vector<Prediction> predictions;
};

inline RegimeClass classify(double alpha, const PExponent& p) {
    if (!(alpha > -1.0)) throw DomainError("classify: alpha must exceed -1");
    if (!p.infinite() && !(p.value() >= 1.0)) throw DomainError("classify: p must be >= 1");
    Regime label;
    if (alpha > 0.0) {
        label = Regime::Pi1;
    } else if (alpha == 0.0) {
        if (p.infinite()) label = Regime::Pi3;
        else if (p.value() == 1.0) label = Regime::Pi2;
        else label = Regime::Pi1;
    } else {
        // p < -1/alpha, compared as alpha * p > -1 to avoid the division
        label = (!p.infinite() && alpha * p.value() > -1.0) ? Regime::Pi2 : Regime::Pi3;
    }
    RegimeClass c{label, alpha, p, {}};
    switch (label) {
    case Regime::Pi1:
        c.predictions = {Prediction::hardy_all_partials_bounded, Prediction::bergman_bounded};
        break;
    case Regime::Pi2:
        c.predictions = {Prediction::bergman_bounded, Prediction::counterexample_exists_hardy,
                         Prediction::elliptic_hypothesis_rescues};
        break;
    case Regime::Pi3:
        c.predictions = {Prediction::counterexample_exists_hardy, Prediction::counterexample_exists_bergman,
                         Prediction::elliptic_hypothesis_rescues};
        break;
    }
    return c;
}

struct Certification {
    std::string check;
    std::string subject;
    std::map<std::string, double> params;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

inline constexpr double certification_slack = 1e-8;

// Trapezoid on n nodes of (1/2pi) * integral of g(t).
template <class Fn>
double periodic_mean(Fn&& g, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += g(two_pi * static_cast<double>(j) / static_cast<double>(n));
    return s / static_cast<double>(n);
}

inline Certification check_lemma_I(double alpha, double r, const QuadSpec& q = {}) {
    if (!(alpha > 0.0)) throw DomainError("check_lemma_I: alpha must be > 0");
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("check_lemma_I: r must lie in [0, 1)");
    const std::size_t n = q.nodes_for(r);
    const double w = std::pow(1.0 - r * r, alpha), e = 0.5 * (alpha + 1.0);
    Certification c;
    c.check = "lemma_I";
    c.params = {{"alpha", alpha}, {"r", r}, {"nodes", static_cast<double>(n)}};
    c.lhs = periodic_mean([&](double t) { return w / std::pow(dist2(r, t), e); }, n);
    const double g = specfun::gamma(e);
    c.rhs = specfun::gamma(alpha) / (g * g);
    c.holds = c.lhs <= c.rhs + certification_slack;
    return c;
}

inline double lemma_32_rhs(double alpha) {
    return std::pow(3.0, 0.5 * (alpha + 1.0)) / std::pow(2.0, alpha - 1.0) * specfun::gamma(-alpha) *
           specfun::gamma(0.5) / specfun::gamma(0.5 - alpha);
}

inline Certification check_lemma_32(double alpha, double r, const QuadSpec& q = {}) {
    if (!(alpha > -1.0 && alpha < 0.0)) throw DomainError("check_lemma_32: alpha must lie in (-1, 0)");
    if (!(r >= 0.5 && r < 1.0)) throw DomainError("check_lemma_32: r must lie in [1/2, 1)");
    const std::size_t n = q.nodes_for(r);
    const double e = 0.5 * (alpha + 1.0);
    Certification c;
    c.check = "lemma_3_2";
    c.params = {{"alpha", alpha}, {"r", r}, {"nodes", static_cast<double>(n)}};
    c.lhs = two_pi * periodic_mean([&](double t) { return 1.0 / std::pow(dist2(r, t), e); }, n);
    c.rhs = lemma_32_rhs(alpha);
    c.holds = c.lhs <= c.rhs + certification_slack;
    return c;
}

struct HardyBoundCheck {
    double max_ratio = 0.0;   // max_r M_p(r, dtheta f) / ||dF||_p
    double max_excess = 0.0;  // max_r M_p(r, dtheta f) - ||dF||_p
    double worst_r = 0.0;
    double dF_norm = 0.0;     // at the base node count
    bool holds = false;
    std::vector<Certification> rows;
};

// M_p(r, dtheta f) <= ||dF||_p on every radius of the grid. Both sides use the
// same node count on each circle.
inline HardyBoundCheck check_eq_3_7(const AlphaParam& a, const BoundaryData& F, const PExponent& p,
                                    const QuadSpec& q, unsigned threads = 1) {
    q.validate();
    auto radii = q.radii();
    std::vector<Certification> rows(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) {
        const double r = radii[i];
        const std::size_t n = q.nodes_for(r);
        auto dF = F.derivatives_on_grid(n, q.spectral_derivative);
        const double rhs = lp_mean(*dF, p);
        double lhs;
        if (r == 0.0) {
            lhs = std::abs(dtheta_f_nodes(a, F, ComplexPoint(0.0, 0.0), n, q.spectral_derivative));
        } else {
            const detail::RadialKernels k(a, r);
            auto kh = trapezoid_kernel_hat(n, [&](double t) { return k.K(t); });
            lhs = lp_mean(fft::cyclic_convolution_hat(kh, *dF), p);
        }
        Certification& c = rows[i];
        c.check = "hardy_dtheta_bound";
        c.params = {{"alpha", a.alpha()}, {"r", r}, {"nodes", static_cast<double>(n)}};
        if (!p.infinite()) c.params["p"] = p.value();
        c.lhs = lhs;
        c.rhs = rhs;
        c.holds = lhs <= rhs * (1.0 + 1e-6) || lhs <= 1e-300;
    });
    HardyBoundCheck res;
    res.dF_norm = lp_mean(*F.derivatives_on_grid(q.angular_nodes, q.spectral_derivative), p);
    res.holds = true;
    res.max_excess = -INFINITY;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = rows[i];
        const double ratio = c.rhs > 0.0 ? c.lhs / c.rhs : (c.lhs > 0.0 ? INFINITY : 0.0);
        if (ratio > res.max_ratio) {
            res.max_ratio = ratio;
            res.worst_r = radii[i];
        }
        res.max_excess = std::max(res.max_excess, c.lhs - c.rhs);
        res.holds = res.holds && c.holds;
    }
    res.rows = std::move(rows);
    return res;
}

// |J1(z)| <= alpha * ||F||_inf on each radius (alpha > 0).
inline Certification check_j1_bound(const AlphaParam& a, const BoundaryData& F, double r, const QuadSpec& q) {
    if (!(a.alpha() > 0.0)) throw DomainError("check_j1_bound: alpha must be > 0");
    const std::size_t n = q.nodes_for(r);
    auto c = poisson_circle(a, F, r, q);
    double m = 0.0;
    for (auto& v : c.values) m = std::max(m, a.alpha() * std::abs(v));
    Certification out;
    out.check = "j1_sup_bound";
    out.params = {{"alpha", a.alpha()}, {"r", r}, {"nodes", static_cast<double>(n)}};
    out.lhs = m;
    out.rhs = a.alpha() * lp_mean(*F.values_on_grid(n), PExponent::inf());
    out.holds = out.lhs <= out.rhs + certification_slack;
    return out;
}

} // namespace wpk
