#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "heatsg/field.hpp"
#include "heatsg/kernel.hpp"

namespace heatsg::fields {

/// exp(-|x|^2 / c), replicated over m components.
inline Field gaussian(const Grid& g, double c = 1.0, int m = 1) {
    return sample(g, m, [c](std::span<const double> x, std::span<cplx> out) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        for (auto& o : out) o = std::exp(-r2 / c);
    });
}

/// Closed-form G(zeta) applied to gaussian(g, c): (c/(c+4 zeta))^{n/2} exp(-|x|^2/(c+4 zeta)).
inline Field gaussian_evolved(const Grid& g, cplx zeta, double c = 1.0, int m = 1) {
    const cplx denom = c + 4.0 * zeta;
    const cplx pre = std::exp(0.5 * g.dim() * std::log(c / denom));
    return sample(g, m, [&](std::span<const double> x, std::span<cplx> out) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        for (auto& o : out) o = pre * std::exp(-r2 / denom);
    });
}

inline Field kernel(const Grid& g, const ComplexTime& s) {
    return sample(g, [&](std::span<const double> x) { return kernel_eval(s, x); });
}

inline Field kernel_dzeta(const Grid& g, const ComplexTime& s) {
    return sample(g, [&](std::span<const double> x) { return heatsg::kernel_dzeta(s, x); });
}

inline Field constant(const Grid& g, cplx c, int m = 1) {
    return sample(g, m, [c](std::span<const double>, std::span<cplx> out) {
        for (auto& o : out) o = c;
    });
}

/// Lipschitz tent max(0, 1 - |x|/radius).
inline Field tent(const Grid& g, double radius = 1.0) {
    return sample(g, [radius](std::span<const double> x) -> cplx {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return std::max(0.0, 1.0 - std::sqrt(r2) / radius);
    });
}

/// Bounded non-decaying sample cos(freq * x_1).
inline Field cosine(const Grid& g, double freq = 1.0) {
    return sample(g, [freq](std::span<const double> x) -> cplx { return std::cos(freq * x[0]); });
}

struct BumpParams {
    int count = 4;
    double min_width = 0.5;
    double max_width = 1.2;
    // Centres drawn in [-centre_extent, centre_extent]^n.
    double centre_extent = 3.0;
    // Rescale coefficients so sum of |a_i| (per component) is 1.
    bool normalize = false;
};

/**
 * Seeded mixture sum_i a_i exp(-|x - c_i|^2 / (2 sigma_i^2)) with complex
 * coefficients a_i in C^m.
 */
inline Field random_bumps(const Grid& g, std::uint64_t seed, int m = 1, const BumpParams& p = {}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), width(p.min_width, p.max_width),
        centre(-p.centre_extent, p.centre_extent);
    struct Bump {
        std::vector<double> c;
        double s2;
        std::vector<cplx> a;
    };
    std::vector<Bump> bumps(static_cast<std::size_t>(p.count));
    std::vector<double> total(static_cast<std::size_t>(m), 0.0);
    for (auto& b : bumps) {
        b.c.resize(static_cast<std::size_t>(g.dim()));
        for (auto& v : b.c) v = centre(rng);
        const double s = width(rng);
        b.s2 = 2.0 * s * s;
        b.a.resize(static_cast<std::size_t>(m));
        for (std::size_t c = 0; c < b.a.size(); ++c) {
            const double re = unit(rng);
            const double im = unit(rng);
            b.a[c] = cplx(re, im);
            total[c] += std::abs(b.a[c]);
        }
    }
    if (p.normalize) {
        for (auto& b : bumps) {
            for (std::size_t c = 0; c < b.a.size(); ++c) b.a[c] /= total[c];
        }
    }
    return sample(g, m, [&](std::span<const double> x, std::span<cplx> out) {
        for (auto& o : out) o = 0.0;
        for (const auto& b : bumps) {
            double r2 = 0.0;
            for (std::size_t d = 0; d < x.size(); ++d) r2 += (x[d] - b.c[d]) * (x[d] - b.c[d]);
            const double e = std::exp(-r2 / b.s2);
            for (std::size_t c = 0; c < out.size(); ++c) out[c] += b.a[c] * e;
        }
    });
}

/// Seeded i.i.d. complex values in the unit square, one per point and component.
inline Field random_noise(const Grid& g, std::uint64_t seed, int m = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Field f(g, m);
    for (auto& v : f.values()) {
        const double re = unit(rng);
        const double im = unit(rng);
        v = cplx(re, im);
    }
    return f;
}

/// Bump parameters whose mixtures stay below ~1e-12 at the grid boundary.
inline BumpParams boundary_negligible_bumps(const Grid& g, int count = 4) {
    BumpParams p;
    p.count = count;
    p.centre_extent = g.half_extent() / 4.0;
    p.max_width = std::min(1.2, 0.1 * g.half_extent());
    p.min_width = std::min(p.min_width, 0.5 * p.max_width);
    return p;
}

/// Wide, normalized bumps with small second derivatives.
inline BumpParams lipschitz_bumps(const Grid& g, int count = 3) {
    BumpParams p;
    p.count = count;
    p.centre_extent = g.half_extent() / 8.0;
    p.min_width = 1.5;
    p.max_width = 2.0;
    p.normalize = true;
    return p;
}

}  // namespace heatsg::fields
