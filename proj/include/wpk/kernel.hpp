#pragma once

#include <wpk/error.hpp>
#include <wpk/fft.hpp>
#include <wpk/specfun.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace wpk {

using cplx = std::complex<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Point of the disk with Cartesian and polar views.
class ComplexPoint {
public:
    ComplexPoint() = default;
    ComplexPoint(cplx z) : re_(z.real()), im_(z.imag()), r_(std::abs(z)), theta_(std::arg(z)) {}
    ComplexPoint(double re, double im) : ComplexPoint(cplx(re, im)) {}
    static ComplexPoint polar(double r, double theta) {
        ComplexPoint p;
        p.re_ = r * std::cos(theta);
        p.im_ = r * std::sin(theta);
        p.r_ = r;
        p.theta_ = theta;
        return p;
    }
    double re() const { return re_; }
    double im() const { return im_; }
    double r() const { return r_; }
    double theta() const { return theta_; }
    cplx z() const { return {re_, im_}; }

private:
    double re_ = 0.0, im_ = 0.0, r_ = 0.0, theta_ = 0.0;
};

inline double c_alpha(double alpha) {
    if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
    double g = specfun::gamma(1.0 + 0.5 * alpha);
    return g * g / specfun::gamma(1.0 + alpha);
}

class AlphaParam {
public:
    explicit AlphaParam(double alpha) : alpha_(alpha), c_(c_alpha(alpha)) {}
    double alpha() const { return alpha_; }
    double c() const { return c_; }

private:
    double alpha_;
    double c_;
};

// |1 - r e^{i phi}|^2 without cancellation near phi = 0.
inline double dist2(double r, double phi) {
    double s = std::sin(0.5 * phi);
    return (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
}

inline double kernel_K(const AlphaParam& a, const ComplexPoint& z) {
    const double r = z.r();
    if (!(r < 1.0)) throw DomainError("kernel_K: |z| must be < 1");
    const double al = a.alpha();
    return a.c() * std::pow(1.0 - r * r, al + 1.0) / std::pow(dist2(r, z.theta()), 0.5 * (al + 2.0));
}

// ---------------------------------------------------------------------------
// Boundary data

class BoundaryData {
public:
    using Eval = std::function<cplx(double)>;
    using Coefficients = std::vector<std::pair<long, cplx>>;

    static BoundaryData from_samples(std::vector<cplx> samples) {
        check_size(samples.size());
        BoundaryData b;
        b.samples_ = std::move(samples);
        return b;
    }

    // Sampled from closed forms. `corners` lists angles where dF is one-sided.
    static BoundaryData from_function(Eval f, std::size_t n, Eval df = {},
                                      std::vector<double> corners = {}) {
        check_size(n);
        BoundaryData b;
        b.f_ = std::move(f);
        b.df_ = std::move(df);
        b.corners_ = std::move(corners);
        b.samples_ = b.evaluate_grid(b.f_, n);
        return b;
    }

    // Trigonometric polynomial sum_k c_k e^{ikt}.
    static BoundaryData from_fourier(Coefficients coeffs, std::size_t n) {
        check_size(n);
        BoundaryData b;
        b.fourier_ = std::make_shared<Coefficients>(std::move(coeffs));
        auto c = b.fourier_;
        b.f_ = [c](double t) {
            cplx s = 0.0;
            for (auto& [k, v] : *c) s += v * std::polar(1.0, static_cast<double>(k) * t);
            return s;
        };
        b.df_ = [c](double t) {
            cplx s = 0.0;
            for (auto& [k, v] : *c)
                s += cplx(0.0, static_cast<double>(k)) * v * std::polar(1.0, static_cast<double>(k) * t);
            return s;
        };
        b.samples_ = b.fold(false, n);
        return b;
    }

    std::size_t size() const { return samples_.size(); }
    const std::vector<cplx>& samples() const { return samples_; }
    double theta(std::size_t j) const { return two_pi * static_cast<double>(j) / static_cast<double>(size()); }
    bool has_closed_form() const { return static_cast<bool>(f_); }
    bool has_closed_form_deriv() const { return static_cast<bool>(df_); }
    bool is_fourier() const { return static_cast<bool>(fourier_); }
    const Coefficients* coefficients() const { return fourier_.get(); }
    const std::vector<double>& corners() const { return corners_; }

    cplx eval(double t) const {
        if (!f_) throw MissingDerivativeError("boundary data has no closed form");
        return f_(t);
    }
    cplx eval_deriv(double t) const {
        if (!df_) throw MissingDerivativeError("boundary data has no derivative channel");
        return df_(t);
    }

    // F on the uniform m-point grid.
    std::shared_ptr<const std::vector<cplx>> values_on_grid(std::size_t m) const {
        return cached(m, false, [&] {
            if (m == size()) return samples_;
            if (fourier_) return fold(false, m);
            if (f_) return evaluate_grid(f_, m);
            return resample(samples_, m);
        });
    }

    // dF on the uniform m-point grid; spectral differentiation of the samples
    // only when allowed.
    std::shared_ptr<const std::vector<cplx>> derivatives_on_grid(std::size_t m, bool allow_spectral) const {
        if (!fourier_ && !df_ && !allow_spectral)
            throw MissingDerivativeError(
                "boundary data has no derivative channel and spectral differentiation is disabled");
        return cached(m, true, [&] {
            if (fourier_) return fold(true, m);
            if (df_) return evaluate_grid(df_, m);
            return resample(spectral_derivative(samples_), m);
        });
    }

    // Indices of grid nodes (m-point grid) sitting on a corner angle.
    std::vector<std::size_t> corner_nodes(std::size_t m) const {
        std::vector<std::size_t> out;
        for (double c : corners_) {
            double u = c / two_pi * static_cast<double>(m);
            u -= std::floor(u / static_cast<double>(m)) * static_cast<double>(m);
            double k = std::round(u);
            if (std::fabs(u - k) < 1e-9) out.push_back(static_cast<std::size_t>(k) % m);
        }
        return out;
    }

    // Fraction of sample energy in frequencies |k| >= 3N/8.
    double top_energy_ratio() const {
        auto X = fft::forward(samples_);
        const long n = static_cast<long>(size());
        double top = 0.0, total = 0.0;
        for (long k = 0; k < n; ++k) {
            long kk = k <= n / 2 ? k : k - n;
            double e = std::norm(X[static_cast<std::size_t>(k)]);
            total += e;
            if (8 * std::labs(kk) >= 3 * n) top += e;
        }
        return total > 0.0 ? top / total : 0.0;
    }

    // Spectral derivative of periodic samples (Nyquist mode dropped).
    static std::vector<cplx> spectral_derivative(const std::vector<cplx>& s) {
        auto X = fft::forward(s);
        const long n = static_cast<long>(s.size());
        for (long k = 0; k < n; ++k) {
            long kk = k < n / 2 ? k : k - n;
            if (2 * k == n) kk = 0;
            X[static_cast<std::size_t>(k)] *= cplx(0.0, static_cast<double>(kk)) / static_cast<double>(n);
        }
        return fft::inverse(X);
    }

    // Trigonometric interpolant of s resampled on m points.
    static std::vector<cplx> resample(const std::vector<cplx>& s, std::size_t m) {
        const std::size_t n = s.size();
        if (m == n) return s;
        if (m < n) {
            if (n % m != 0)
                throw DomainError("resample: target grid must divide or extend the sample grid");
            std::vector<cplx> out(m);
            for (std::size_t i = 0; i < m; ++i) out[i] = s[i * (n / m)];
            return out;
        }
        auto X = fft::forward(s);
        std::vector<cplx> Y(m, 0.0);
        const std::size_t h = n / 2;
        for (std::size_t k = 0; k < h; ++k) Y[k] = X[k];
        for (std::size_t k = h + 1; k < n; ++k) Y[m - n + k] = X[k];
        Y[h] = 0.5 * X[h]; // split Nyquist
        Y[m - h] += 0.5 * X[h];
        auto y = fft::inverse(Y);
        for (auto& v : y) v /= static_cast<double>(n);
        return y;
    }

private:
    static void check_size(std::size_t n) {
        if (n < 16 || n % 2 != 0) throw DomainError("boundary grid needs N >= 16 and N even");
    }

    std::vector<cplx> evaluate_grid(const Eval& g, std::size_t m) const {
        std::vector<cplx> out(m);
        for (std::size_t j = 0; j < m; ++j) out[j] = g(two_pi * static_cast<double>(j) / static_cast<double>(m));
        return out;
    }

    // Exact samples of the trigonometric polynomial by folding modulo m.
    std::vector<cplx> fold(bool deriv, std::size_t m) const {
        std::vector<cplx> a(m, 0.0);
        const long mm = static_cast<long>(m);
        for (auto& [k, v] : *fourier_) {
            long idx = ((k % mm) + mm) % mm;
            a[static_cast<std::size_t>(idx)] += deriv ? cplx(0.0, static_cast<double>(k)) * v : v;
        }
        return fft::inverse(a);
    }

    struct Cache {
        std::mutex m;
        std::map<std::pair<std::size_t, bool>, std::shared_ptr<const std::vector<cplx>>> grids;
    };

    template <class Make>
    std::shared_ptr<const std::vector<cplx>> cached(std::size_t m, bool deriv, Make&& make) const {
        auto key = std::make_pair(m, deriv);
        {
            std::lock_guard<std::mutex> lk(cache_->m);
            auto it = cache_->grids.find(key);
            if (it != cache_->grids.end()) return it->second;
        }
        auto v = std::make_shared<const std::vector<cplx>>(make());
        std::lock_guard<std::mutex> lk(cache_->m);
        return cache_->grids.emplace(key, v).first->second;
    }

    std::vector<cplx> samples_;
    Eval f_, df_;
    std::shared_ptr<Coefficients> fourier_;
    std::vector<double> corners_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct DerivativeWarning {
    bool aliasing = false;
    double top_energy_ratio = 0.0;
};

// Boundary derivative as its own boundary data. Closed forms are preferred;
// sampled data is differentiated spectrally.
inline BoundaryData boundary_derivative(const BoundaryData& F, DerivativeWarning* warn = nullptr) {
    if (warn) {
        warn->top_energy_ratio = F.top_energy_ratio();
        warn->aliasing = warn->top_energy_ratio > 1e-8;
    }
    if (F.is_fourier()) {
        BoundaryData::Coefficients d;
        for (auto& [k, v] : *F.coefficients())
            if (k != 0) d.emplace_back(k, cplx(0.0, static_cast<double>(k)) * v);
        return BoundaryData::from_fourier(std::move(d), F.size());
    }
    if (F.has_closed_form_deriv()) {
        return BoundaryData::from_function([F](double t) { return F.eval_deriv(t); }, F.size());
    }
    return BoundaryData::from_samples(BoundaryData::spectral_derivative(F.samples()));
}

// F(e^{i(t - phi)}).
inline BoundaryData rotate(const BoundaryData& F, double phi) {
    if (F.is_fourier()) {
        BoundaryData::Coefficients c;
        for (auto& [k, v] : *F.coefficients()) c.emplace_back(k, v * std::polar(1.0, -static_cast<double>(k) * phi));
        return BoundaryData::from_fourier(std::move(c), F.size());
    }
    if (F.has_closed_form()) {
        BoundaryData::Eval df;
        if (F.has_closed_form_deriv()) df = [F, phi](double t) { return F.eval_deriv(t - phi); };
        std::vector<double> corners;
        for (double c : F.corners()) corners.push_back(c + phi);
        return BoundaryData::from_function([F, phi](double t) { return F.eval(t - phi); }, F.size(), df, corners);
    }
    const double steps = phi / two_pi * static_cast<double>(F.size());
    const double k = std::round(steps);
    if (std::fabs(steps - k) > 1e-9)
        throw DomainError("rotate: sampled data can only rotate by grid multiples");
    const long n = static_cast<long>(F.size());
    const long s = ((static_cast<long>(k) % n) + n) % n;
    std::vector<cplx> out(F.size());
    for (long j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = F.samples()[static_cast<std::size_t>((j - s + n) % n)];
    return BoundaryData::from_samples(std::move(out));
}

inline BoundaryData conjugate(const BoundaryData& F) {
    if (F.is_fourier()) {
        BoundaryData::Coefficients c;
        for (auto& [k, v] : *F.coefficients()) c.emplace_back(-k, std::conj(v));
        return BoundaryData::from_fourier(std::move(c), F.size());
    }
    if (F.has_closed_form()) {
        BoundaryData::Eval df;
        if (F.has_closed_form_deriv()) df = [F](double t) { return std::conj(F.eval_deriv(t)); };
        return BoundaryData::from_function([F](double t) { return std::conj(F.eval(t)); }, F.size(), df,
                                           F.corners());
    }
    std::vector<cplx> out(F.samples());
    for (auto& v : out) v = std::conj(v);
    return BoundaryData::from_samples(std::move(out));
}

// ---------------------------------------------------------------------------
// Quadrature configuration

struct QuadSpec {
    std::size_t angular_nodes = 2048;
    std::vector<double> radial_grid; // empty: boundary-refined default
    double r_max = 0.999;
    double tol = 1e-14;
    std::size_t radial_nodes = 64;
    bool refine = true;               // grow N so that N(1-r) >= 32
    bool spectral_derivative = false; // permit differentiating samples
    std::size_t max_nodes = std::size_t(1) << 22;

    // r_k = 1 - (1 - r_max)^{k/(count-1)}: geometric in 1 - r, from 0 to r_max.
    static std::vector<double> boundary_refined_grid(double r_max, std::size_t count) {
        std::vector<double> g(count);
        const double s = 1.0 - r_max;
        for (std::size_t k = 0; k < count; ++k)
            g[k] = 1.0 - std::pow(s, static_cast<double>(k) / static_cast<double>(count - 1));
        g.front() = 0.0;
        g.back() = r_max;
        return g;
    }

    void validate() const {
        if (angular_nodes < 16 || angular_nodes % 2 != 0)
            throw DomainError("angular_nodes must be even and >= 16");
        if (!(r_max > 0.0) || !(r_max <= 1.0 - 1e-6)) throw DomainError("r_max must lie in (0, 1 - 1e-6]");
        if (radial_grid.empty() && radial_nodes < 2) throw DomainError("radial grid needs >= 2 nodes");
        for (std::size_t i = 0; i < radial_grid.size(); ++i) {
            if (radial_grid[i] < 0.0 || radial_grid[i] > r_max)
                throw DomainError("radial grid must lie in [0, r_max]");
            if (i > 0 && !(radial_grid[i] > radial_grid[i - 1]))
                throw DomainError("radial grid must be strictly increasing");
        }
    }

    std::vector<double> radii() const {
        return radial_grid.empty() ? boundary_refined_grid(r_max, radial_nodes) : radial_grid;
    }

    // Node count used on the circle of radius r.
    std::size_t nodes_for(double r) const {
        std::size_t n = angular_nodes;
        if (!refine) return n;
        while (static_cast<double>(n) * (1.0 - r) < 32.0 && n * 2 <= max_nodes) n *= 2;
        return n;
    }

    static bool under_resolved(std::size_t n, double r) { return static_cast<double>(n) < 8.0 / (1.0 - r); }
};

struct KernelValue {
    cplx value;
    std::size_t nodes = 0;
    bool under_resolved = false;
};

namespace detail {

// Trapezoid sum (1/n) sum_j k(theta - t_j) G_j with a real kernel of the angle
// difference, evaluated at one point.
template <class Kern>
cplx direct_sum(const std::vector<cplx>& G, double theta, Kern&& k) {
    const std::size_t n = G.size();
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double phi = theta - two_pi * static_cast<double>(j) / static_cast<double>(n);
        s += k(phi) * G[j];
    }
    return s / static_cast<double>(n);
}

inline void check_point(const ComplexPoint& z, const QuadSpec& q) {
    if (!(z.r() <= q.r_max)) throw DomainError("evaluation point outside |z| <= r_max");
}

} // namespace detail

// K_alpha[F](z) by the trapezoid rule on n boundary nodes.
inline cplx poisson_integral_nodes(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z,
                                   std::size_t n) {
    const double r = z.r();
    if (!(r < 1.0)) throw DomainError("poisson_integral: |z| must be < 1");
    auto G = F.values_on_grid(n);
    const double pref = a.c() * std::pow(1.0 - r * r, a.alpha() + 1.0);
    const double e = 0.5 * (a.alpha() + 2.0);
    return detail::direct_sum(*G, z.theta(), [&](double phi) { return pref / std::pow(dist2(r, phi), e); });
}

inline KernelValue poisson_integral(const AlphaParam& a, const BoundaryData& F, const ComplexPoint& z,
                                    const QuadSpec& q) {
    detail::check_point(z, q);
    const std::size_t n = q.nodes_for(z.r());
    return {poisson_integral_nodes(a, F, z, n), n, QuadSpec::under_resolved(n, z.r())};
}

// Kernel samples k(2 pi m / n), m = 0..n-1, as complex for convolution.
template <class Kern>
std::vector<cplx> kernel_samples(std::size_t n, Kern&& k) {
    std::vector<cplx> v(n);
    for (std::size_t m = 0; m < n; ++m) v[m] = k(two_pi * static_cast<double>(m) / static_cast<double>(n));
    return v;
}

// Transform of the trapezoid weights k(2 pi m / n) / n, ready for
// fft::cyclic_convolution_hat.
template <class Kern>
std::vector<cplx> trapezoid_kernel_hat(std::size_t n, Kern&& k) {
    auto v = kernel_samples(n, std::forward<Kern>(k));
    for (auto& x : v) x /= static_cast<double>(n);
    return fft::forward(v);
}

struct CircleValues {
    double r = 0.0;
    std::size_t nodes = 0;
    bool under_resolved = false;
    std::vector<cplx> values; // at theta_i = 2 pi i / nodes
};

// K_alpha[F] on the whole circle of radius r at once (same trapezoid rule,
// evaluated as a cyclic convolution).
inline CircleValues poisson_circle(const AlphaParam& a, const BoundaryData& F, double r, const QuadSpec& q) {
    if (!(r >= 0.0) || !(r <= q.r_max)) throw DomainError("radius outside [0, r_max]");
    CircleValues out;
    out.r = r;
    out.nodes = q.nodes_for(r);
    out.under_resolved = QuadSpec::under_resolved(out.nodes, r);
    const double pref = a.c() * std::pow(1.0 - r * r, a.alpha() + 1.0);
    const double e = 0.5 * (a.alpha() + 2.0);
    auto kh = trapezoid_kernel_hat(out.nodes, [&](double phi) { return pref / std::pow(dist2(r, phi), e); });
    out.values = fft::cyclic_convolution_hat(kh, *F.values_on_grid(out.nodes));
    return out;
}

// ---------------------------------------------------------------------------
// CSV boundary files: header theta,re,im; uniform theta from 0.

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_boundary_csv(std::ostream& os, const BoundaryData& F) {
    os << "theta,re,im\n";
    for (std::size_t j = 0; j < F.size(); ++j) {
        os << format_double(F.theta(j)) << ',' << format_double(F.samples()[j].real()) << ','
           << format_double(F.samples()[j].imag()) << '\n';
    }
}

inline BoundaryData read_boundary_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("boundary csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "theta,re,im") throw FormatError("boundary csv: header must be theta,re,im");
    std::vector<double> th;
    std::vector<cplx> vals;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v[3];
        const char* p = line.c_str();
        for (int i = 0; i < 3; ++i) {
            char* end = nullptr;
            v[i] = std::strtod(p, &end);
            if (end == p) throw FormatError("boundary csv: bad number on line " + std::to_string(lineno));
            p = end;
            if (i < 2) {
                if (*p != ',') throw FormatError("boundary csv: expected 3 columns on line " + std::to_string(lineno));
                ++p;
            }
        }
        if (*p != '\0') throw FormatError("boundary csv: trailing data on line " + std::to_string(lineno));
        th.push_back(v[0]);
        vals.emplace_back(v[1], v[2]);
    }
    const std::size_t n = vals.size();
    if (n < 16 || n % 2 != 0) throw FormatError("boundary csv: need an even number >= 16 of rows");
    if (th[0] != 0.0) throw FormatError("boundary csv: theta_0 must be 0");
    for (std::size_t j = 0; j < n; ++j) {
        double expect = two_pi * static_cast<double>(j) / static_cast<double>(n);
        if (std::fabs(th[j] - expect) > 1e-12)
            throw FormatError("boundary csv: theta grid is not uniform at row " + std::to_string(j));
    }
    return BoundaryData::from_samples(std::move(vals));
}

} // namespace wpk
