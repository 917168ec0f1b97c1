#pragma once

#include <wpk/error.hpp>
#include <wpk/kernel.hpp>
#include <wpk/parallel.hpp>
#include <wpk/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <ostream>
#include <utility>
#include <vector>

namespace wpk {

enum PointFlag : unsigned {
    flag_ok = 0,
    flag_under_resolved = 1,
    flag_origin_fd = 2,
};

namespace detail {

// Real kernels of the radial decomposition on the circle of radius r.
struct RadialKernels {
    double r, pref_k, c1, c2, e;
    RadialKernels(const AlphaParam& a, double r_) : r(r_) {
        const double al = a.alpha();
        const double w = std::pow(1.0 - r * r, al);
        pref_k = a.c() * w * (1.0 - r * r);
        c1 = a.c() * w / std::numbers::pi;
        c2 = al * a.c() * w / (2.0 * std::numbers::pi);
        e = 0.5 * (al + 2.0);
    }
    double K(double phi) const { return pref_k / std::pow(dist2(r, phi), e); }
    // r sin(phi) / D^e
    double odd(double phi) const { return r * std::sin(phi) / std::pow(dist2(r, phi), e); }
    // (1 - r cos phi) / D^e
    double even(double phi) const {
        double s = std::sin(0.5 * phi);
        return ((1.0 - r) + 2.0 * r * s * s) / std::pow(dist2(r, phi), e);
    }
};

inline bool allow_spectral(const QuadSpec& q) { return q.spectral_derivative; }

} // namespace detail

// --- pointwise, explicit node count ---------------------------------------

inline cplx dtheta_f_nodes(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, std::size_t n,
                           bool spectral = false) {
    auto dF = F.derivatives_on_grid(n, spectral);
    detail::RadialKernels k(a, z.r());
    return detail::direct_sum(*dF, z.theta(), [&](double phi) { return k.K(phi); });
}

inline cplx J1_nodes(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, std::size_t n) {
    if (a.alpha() == 0.0) return 0.0;
    return a.alpha() * poisson_integral_nodes(a, F, z, n);
}

inline cplx J2_nodes(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, std::size_t n,
                     bool spectral = false) {
    auto dF = F.derivatives_on_grid(n, spectral);
    detail::RadialKernels k(a, z.r());
    cplx s1 = detail::direct_sum(*dF, z.theta(), [&](double phi) { return k.odd(phi); });
    cplx out = two_pi * k.c1 * s1;
    if (a.alpha() != 0.0) {
        auto G = F.values_on_grid(n);
        cplx s2 = detail::direct_sum(*G, z.theta(), [&](double phi) { return k.even(phi); });
        out -= two_pi * k.c2 * s2;
    }
    return out;
}

// --- pointwise, node count from QuadSpec ------------------------------------

inline cplx dtheta_f(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, const QuadSpec& q) {
    detail::check_point(z, q);
    return dtheta_f_nodes(a, F, z, q.nodes_for(z.r()), q.spectral_derivative);
}

inline cplx J1(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, const QuadSpec& q) {
    detail::check_point(z, q);
    return J1_nodes(a, F, z, q.nodes_for(z.r()));
}

inline cplx J2(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, const QuadSpec& q) {
    detail::check_point(z, q);
    return J2_nodes(a, F, z, q.nodes_for(z.r()), q.spectral_derivative);
}

inline cplx dr_f(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, const QuadSpec& q) {
    detail::check_point(z, q);
    if (z.r() == 0.0)
        throw DomainError("dr_f: radial derivative is direction-dependent at z = 0; use dz e^{it} + dzbar e^{-it}");
    const std::size_t n = q.nodes_for(z.r());
    return (J1_nodes(a, F, z, n) + J2_nodes(a, F, z, n, q.spectral_derivative)) / z.r();
}

struct DerivPoint {
    cplx dtheta, j1, j2, dr, dz, dzbar;
    std::size_t nodes = 0;
    unsigned flags = flag_ok;
};

inline constexpr double origin_fd_step = 1e-5;

// All first derivatives at z on n nodes. z = 0 uses central differences of
// the integral with step 1e-5 and is flagged.
inline DerivPoint derivatives_nodes(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z,
                                    std::size_t n, bool spectral = false) {
    DerivPoint d;
    d.nodes = n;
    const double r = z.r();
    if (QuadSpec::under_resolved(n, r)) d.flags |= flag_under_resolved;
    if (r == 0.0) {
        const double h = origin_fd_step;
        auto f = [&](cplx w) { return poisson_integral_nodes(a, F, ComplexPoint(w), n); };
        cplx fx = (f({h, 0.0}) - f({-h, 0.0})) / (2.0 * h);
        cplx fy = (f({0.0, h}) - f({0.0, -h})) / (2.0 * h);
        d.dz = 0.5 * (fx - cplx(0.0, 1.0) * fy);
        d.dzbar = 0.5 * (fx + cplx(0.0, 1.0) * fy);
        d.dtheta = 0.0;
        d.j1 = J1_nodes(a, F, z, n);
        d.j2 = 0.0;
        const cplx u = std::polar(1.0, z.theta());
        d.dr = d.dz * u + d.dzbar * std::conj(u);
        d.flags |= flag_origin_fd;
        return d;
    }
    d.dtheta = dtheta_f_nodes(a, F, z, n, spectral);
    d.j1 = J1_nodes(a, F, z, n);
    d.j2 = J2_nodes(a, F, z, n, spectral);
    const cplx rdr = d.j1 + d.j2;
    d.dr = rdr / r;
    const cplx i(0.0, 1.0);
    d.dz = (rdr - i * d.dtheta) / (2.0 * z.z());
    d.dzbar = (rdr + i * d.dtheta) / (2.0 * std::conj(z.z()));
    return d;
}

inline DerivPoint derivatives_at(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z,
                                 const QuadSpec& q) {
    detail::check_point(z, q);
    return derivatives_nodes(a, F, z, q.nodes_for(z.r()), q.spectral_derivative);
}

inline std::pair<cplx, cplx> dz_dzbar_f(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z,
                                        const QuadSpec& q) {
    auto d = derivatives_at(a, F, z, q);
    return {d.dz, d.dzbar};
}

// --- whole circles -----------------------------------------------------------

struct DerivCircle {
    double r = 0.0;
    std::size_t nodes = 0;
    bool under_resolved = false;
    std::vector<cplx> f, dtheta, j1, j2, dr, dz, dzbar; // at theta_i = 2 pi i / nodes
};

// Same trapezoid sums as the pointwise route, for every node of the circle.
inline DerivCircle derivatives_circle(const AlphaParam& a, const BoundaryData& F, double r, const QuadSpec& q) {
    if (!(r > 0.0) || !(r <= q.r_max)) throw DomainError("derivatives_circle: radius outside (0, r_max]");
    DerivCircle c;
    c.r = r;
    c.nodes = q.nodes_for(r);
    c.under_resolved = QuadSpec::under_resolved(c.nodes, r);
    const std::size_t n = c.nodes;
    detail::RadialKernels k(a, r);
    auto G = F.values_on_grid(n);
    auto dG = F.derivatives_on_grid(n, q.spectral_derivative);
    auto kh = trapezoid_kernel_hat(n, [&](double p) { return k.K(p); });
    auto oh = trapezoid_kernel_hat(n, [&](double p) { return k.odd(p); });
    c.f = fft::cyclic_convolution_hat(kh, *G);
    c.dtheta = fft::cyclic_convolution_hat(kh, *dG);
    auto so = fft::cyclic_convolution_hat(oh, *dG);
    std::vector<cplx> se;
    if (a.alpha() != 0.0) {
        auto eh = trapezoid_kernel_hat(n, [&](double p) { return k.even(p); });
        se = fft::cyclic_convolution_hat(eh, *G);
    }
    c.j1.resize(n);
    c.j2.resize(n);
    c.dr.resize(n);
    c.dz.resize(n);
    c.dzbar.resize(n);
    const cplx i(0.0, 1.0);
    for (std::size_t m = 0; m < n; ++m) {
        c.j1[m] = a.alpha() * c.f[m];
        c.j2[m] = two_pi * k.c1 * so[m];
        if (a.alpha() != 0.0) c.j2[m] -= two_pi * k.c2 * se[m];
        const cplx rdr = c.j1[m] + c.j2[m];
        const cplx z = std::polar(r, two_pi * static_cast<double>(m) / static_cast<double>(n));
        c.dr[m] = rdr / r;
        c.dz[m] = (rdr - i * c.dtheta[m]) / (2.0 * z);
        c.dzbar[m] = (rdr + i * c.dtheta[m]) / (2.0 * std::conj(z));
    }
    return c;
}

// --- fields ------------------------------------------------------------------

struct DerivField {
    std::vector<ComplexPoint> grid;
    std::vector<cplx> dtheta, dr, dz, dzbar;
    std::vector<unsigned> flags;

    std::size_t size() const { return grid.size(); }
    void reserve(std::size_t n) {
        grid.reserve(n);
        dtheta.reserve(n);
        dr.reserve(n);
        dz.reserve(n);
        dzbar.reserve(n);
        flags.reserve(n);
    }
    void push(const ComplexPoint& z, cplx dth, cplx drv, cplx dzv, cplx dzb, unsigned fl) {
        grid.push_back(z);
        dtheta.push_back(dth);
        dr.push_back(drv);
        dz.push_back(dzv);
        dzbar.push_back(dzb);
        flags.push_back(fl);
    }
    // Polar pair from the Wirtinger pair.
    void push_wirtinger(const ComplexPoint& z, cplx dzv, cplx dzb, unsigned fl = flag_ok) {
        const cplx i(0.0, 1.0);
        const cplx u = std::polar(1.0, z.theta());
        push(z, i * (z.z() * dzv - std::conj(z.z()) * dzb), dzv * u + dzb * std::conj(u), dzv, dzb, fl);
    }
    // Points with r <= r_cut.
    DerivField truncated(double r_cut) const {
        DerivField out;
        for (std::size_t k = 0; k < size(); ++k)
            if (grid[k].r() <= r_cut) out.push(grid[k], dtheta[k], dr[k], dz[k], dzbar[k], flags[k]);
        return out;
    }
};

// Wirtinger derivatives on `angles` equally spaced points of each circle.
using WirtingerCircle = std::function<std::pair<std::vector<cplx>, std::vector<cplx>>(double r, std::size_t angles)>;

inline DerivField field_from_circles(const WirtingerCircle& fn, const std::vector<double>& radii,
                                     std::size_t angles, unsigned threads = 1) {
    std::vector<std::pair<std::vector<cplx>, std::vector<cplx>>> per(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) { per[i] = fn(radii[i], angles); });
    DerivField f;
    f.reserve(radii.size() * angles);
    for (std::size_t i = 0; i < radii.size(); ++i)
        for (std::size_t m = 0; m < angles; ++m)
            f.push_wirtinger(ComplexPoint::polar(radii[i], two_pi * static_cast<double>(m) / static_cast<double>(angles)),
                             per[i].first[m], per[i].second[m]);
    return f;
}

// Field of K_alpha[F] on radii x angles. Circles use the convolution route and
// are decimated when the node count is a multiple of `angles`.
inline DerivField build_field(const AlphaParam& a, const BoundaryData& F, const std::vector<double>& radii,
                              std::size_t angles, const QuadSpec& q, unsigned threads = 1) {
    std::vector<std::vector<DerivPoint>> per(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) {
        const double r = radii[i];
        auto& out = per[i];
        out.resize(angles);
        const std::size_t n = q.nodes_for(r);
        if (r > 0.0 && n % angles == 0) {
            auto c = derivatives_circle(a, F, r, q);
            const std::size_t step = n / angles;
            for (std::size_t m = 0; m < angles; ++m) {
                auto& d = out[m];
                d.dtheta = c.dtheta[m * step];
                d.j1 = c.j1[m * step];
                d.j2 = c.j2[m * step];
                d.dr = c.dr[m * step];
                d.dz = c.dz[m * step];
                d.dzbar = c.dzbar[m * step];
                d.nodes = n;
                d.flags = c.under_resolved ? flag_under_resolved : flag_ok;
            }
        } else {
            for (std::size_t m = 0; m < angles; ++m) {
                auto z = ComplexPoint::polar(r, two_pi * static_cast<double>(m) / static_cast<double>(angles));
                out[m] = derivatives_nodes(a, F, z, n, q.spectral_derivative);
            }
        }
    });
    DerivField f;
    f.reserve(radii.size() * angles);
    for (std::size_t i = 0; i < radii.size(); ++i)
        for (std::size_t m = 0; m < angles; ++m) {
            const auto& d = per[i][m];
            f.push(ComplexPoint::polar(radii[i], two_pi * static_cast<double>(m) / static_cast<double>(angles)),
                   d.dtheta, d.dr, d.dz, d.dzbar, d.flags);
        }
    return f;
}

inline void write_field_csv(std::ostream& os, const DerivField& f) {
    os << "r,theta,re_dtheta,im_dtheta,re_dr,im_dr,re_dz,im_dz,re_dzbar,im_dzbar,flag\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        os << format_double(f.grid[k].r()) << ',' << format_double(f.grid[k].theta()) << ','
           << format_double(f.dtheta[k].real()) << ',' << format_double(f.dtheta[k].imag()) << ','
           << format_double(f.dr[k].real()) << ',' << format_double(f.dr[k].imag()) << ','
           << format_double(f.dz[k].real()) << ',' << format_double(f.dz[k].imag()) << ','
           << format_double(f.dzbar[k].real()) << ',' << format_double(f.dzbar[k].imag()) << ',' << f.flags[k]
           << '\n';
    }
}

// --- finite-difference verification -----------------------------------------

struct FdResult {
    double residual = 0.0;
    DerivPoint analytic;
    cplx fd_dtheta, fd_dr, fd_dz, fd_dzbar;
};

inline FdResult fd_check_detail(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, double h,
                                const QuadSpec& q) {
    if (!(h >= 1e-7 && h <= 1e-3)) throw DomainError("fd_check: step h must lie in [1e-7, 1e-3]");
    if (!(z.r() + h <= q.r_max)) throw DomainError("fd_check: requires |z| + h <= r_max");
    // one node count across the stencil so that FD differences the same rule
    const std::size_t n = q.nodes_for(z.r() + h);
    FdResult res;
    res.analytic = derivatives_nodes(a, F, z, n, q.spectral_derivative);
    auto f = [&](cplx w) { return poisson_integral_nodes(a, F, ComplexPoint(w), n); };
    const cplx z0 = z.z();
    const cplx fx = (f(z0 + h) - f(z0 - h)) / (2.0 * h);
    const cplx fy = (f(z0 + cplx(0.0, h)) - f(z0 - cplx(0.0, h))) / (2.0 * h);
    const cplx i(0.0, 1.0);
    res.fd_dz = 0.5 * (fx - i * fy);
    res.fd_dzbar = 0.5 * (fx + i * fy);
    const cplx u = std::polar(1.0, z.theta());
    const double r = z.r();
    res.fd_dr = (f((r + h) * u) - f((r - h) * u)) / (2.0 * h);
    res.fd_dtheta = (f(std::polar(r, z.theta() + h)) - f(std::polar(r, z.theta() - h))) / (2.0 * h);
    const auto& an = res.analytic;
    double scale = std::max({1.0, std::abs(an.dtheta), std::abs(an.dr), std::abs(an.dz), std::abs(an.dzbar)});
    res.residual = std::max({std::abs(an.dtheta - res.fd_dtheta), std::abs(an.dr - res.fd_dr),
                             std::abs(an.dz - res.fd_dz), std::abs(an.dzbar - res.fd_dzbar)}) /
                   scale;
    return res;
}

inline double fd_check(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z, double h,
                       const QuadSpec& q) {
    return fd_check_detail(a, F, z, h, q).residual;
}

// --- closed-form radial quantity ----------------------------------------------

// (1-r^2)^alpha * integral over [0, 2 pi] of r|sin t| / |1 - r e^{it}|^{alpha+2}.
inline double b_alpha1_quadrature(double alpha, double r) {
    if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("r must lie in [0, 1)");
    if (r == 0.0) return 0.0;
    static const auto rule = quad::gauss_legendre(24);
    const double e = 0.5 * (alpha + 2.0);
    auto g = [&](double t) { return r * std::sin(t) / std::pow(dist2(r, t), e); };
    // |sin t| is symmetric about pi; the peak sits at t = 0 with width 1 - r
    double half = quad::graded_integral(g, 0.0, std::numbers::pi, 1e-3 * (1.0 - r), rule);
    return std::pow(1.0 - r * r, alpha) * 2.0 * half;
}

inline double b_alpha1_closed_form(double alpha, double r) {
    if (alpha == 0.0) return 2.0 * std::log((1.0 + r) / (1.0 - r));
    return 2.0 / alpha * (std::pow(1.0 + r, alpha) - std::pow(1.0 - r, alpha));
}

} // namespace wpk
