#pragma once

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace wpk::fft {

using cplx = std::complex<double>;

namespace detail {

// FFTW planning is not thread-safe; execution of distinct plans is.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

inline std::vector<cplx> transform(std::span<const cplx> in, int sign) {
    const std::size_t n = in.size();
    std::vector<cplx> out(n);
    if (n == 0) return out;
    std::vector<cplx> buf(in.begin(), in.end());
    auto* ip = reinterpret_cast<fftw_complex*>(buf.data());
    auto* op = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), ip, op, sign,
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    if (!plan) throw std::runtime_error("fft: plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lk(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace detail

// X_k = sum_j x_j exp(-2 pi i jk/n), unnormalized.
inline std::vector<cplx> forward(std::span<const cplx> x) {
    return detail::transform(x, FFTW_FORWARD);
}

// x_j = sum_k X_k exp(+2 pi i jk/n), unnormalized.
inline std::vector<cplx> inverse(std::span<const cplx> x) {
    return detail::transform(x, FFTW_BACKWARD);
}

// (a * b)_i = sum_j a_{(i-j) mod n} b_j
inline std::vector<cplx> cyclic_convolution(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cyclic_convolution: size mismatch");
    auto A = forward(a);
    auto B = forward(b);
    for (std::size_t k = 0; k < A.size(); ++k) A[k] *= B[k];
    auto c = inverse(A);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (auto& v : c) v *= inv;
    return c;
}

// Same, with the kernel already transformed.
inline std::vector<cplx> cyclic_convolution_hat(std::span<const cplx> a_hat, std::span<const cplx> b) {
    if (a_hat.size() != b.size()) throw std::invalid_argument("cyclic_convolution: size mismatch");
    auto B = forward(b);
    for (std::size_t k = 0; k < B.size(); ++k) B[k] *= a_hat[k];
    auto c = inverse(B);
    const double inv = 1.0 / static_cast<double>(b.size());
    for (auto& v : c) v *= inv;
    return c;
}

} // namespace wpk::fft
