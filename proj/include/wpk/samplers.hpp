#pragma once

#include <wpk/derivs.hpp>
#include <wpk/error.hpp>
#include <wpk/examples.hpp>
#include <wpk/kernel.hpp>
#include <wpk/norms.hpp>

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace wpk {

// Wirtinger derivatives of K_alpha[F] on m angles of the circle r. The circle
// node count must be a multiple of m.
inline WirtingerCircle kernel_circle(const AlphaParam& a, const BoundaryData& F, const QuadSpec& q) {
    return [a, F, q](double r, std::size_t m) {
        std::vector<cplx> dz(m), dzb(m);
        if (r == 0.0) {
            auto d = derivatives_nodes(a, F, ComplexPoint(0.0, 0.0), q.nodes_for(0.0), q.spectral_derivative);
            std::fill(dz.begin(), dz.end(), d.dz);
            std::fill(dzb.begin(), dzb.end(), d.dzbar);
            return std::make_pair(std::move(dz), std::move(dzb));
        }
        auto c = derivatives_circle(a, F, r, q);
        if (c.nodes % m != 0) throw DomainError("kernel_circle: angle count must divide the node count");
        const std::size_t step = c.nodes / m;
        for (std::size_t j = 0; j < m; ++j) {
            dz[j] = c.dz[j * step];
            dzb[j] = c.dzbar[j * step];
        }
        return std::make_pair(std::move(dz), std::move(dzb));
    };
}

// One partial of K_alpha[F] on every node of the circle (node count from q).
inline CircleSampler kernel_partial_sampler(const AlphaParam& a, const BoundaryData& F, const QuadSpec& q,
                                            Partial which) {
    return [a, F, q, which](double r) {
        if (r == 0.0) {
            const std::size_t n = q.nodes_for(0.0);
            auto d = derivatives_nodes(a, F, ComplexPoint(0.0, 0.0), n, q.spectral_derivative);
            std::vector<cplx> v(n);
            for (std::size_t j = 0; j < n; ++j) {
                const cplx u = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
                switch (which) {
                case Partial::dz: v[j] = d.dz; break;
                case Partial::dzbar: v[j] = d.dzbar; break;
                case Partial::dr: v[j] = d.dz * u + d.dzbar * std::conj(u); break;
                case Partial::dtheta: v[j] = 0.0; break;
                }
            }
            return v;
        }
        auto c = derivatives_circle(a, F, r, q);
        switch (which) {
        case Partial::dz: return c.dz;
        case Partial::dzbar: return c.dzbar;
        case Partial::dr: return c.dr;
        case Partial::dtheta: return c.dtheta;
        }
        return c.dr;
    };
}

// f itself on the circle.
inline CircleSampler kernel_value_sampler(const AlphaParam& a, const BoundaryData& F, const QuadSpec& q) {
    return [a, F, q](double r) { return poisson_circle(a, F, r, q).values; };
}

} // namespace wpk
