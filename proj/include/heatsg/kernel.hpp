#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "heatsg/complex_time.hpp"
#include "heatsg/grid.hpp"

namespace heatsg {

namespace detail {

inline double norm_sq(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

// Principal-branch (4 pi zeta)^{-n/2}; arg zeta in (-pi/2, pi/2) keeps this single valued.
inline cplx kernel_prefactor(cplx zeta, int n) {
    return std::exp(-0.5 * static_cast<double>(n) * std::log(4.0 * std::numbers::pi * zeta));
}

}  // namespace detail

/// One-dimensional factor (4 pi zeta)^{-1/2} exp(-s^2 / 4 zeta); the n-dimensional
/// kernel is the product of n such factors.
inline cplx kernel_factor(const ComplexTime& zeta, double s) {
    require_positive(zeta);
    const cplx z = zeta.value();
    return detail::kernel_prefactor(z, 1) * std::exp(-s * s / (4.0 * z));
}

/// Second derivative in s of kernel_factor.
inline cplx kernel_factor_dss(const ComplexTime& zeta, double s) {
    const cplx z = zeta.value();
    return kernel_factor(zeta, s) * (s * s / (4.0 * z * z) - 1.0 / (2.0 * z));
}

/// chi_zeta(x) = (4 pi zeta)^{-n/2} exp(-|x|^2 / 4 zeta), n = x.size().
inline cplx kernel_eval(const ComplexTime& zeta, std::span<const double> x) {
    require_positive(zeta);
    const cplx z = zeta.value();
    const int n = static_cast<int>(x.size());
    return detail::kernel_prefactor(z, n) * std::exp(-detail::norm_sq(x) / (4.0 * z));
}

inline cplx kernel_eval(const ComplexTime& zeta, std::span<const double> x, int n) {
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("point dimension does not match kernel dimension");
    return kernel_eval(zeta, x);
}

/**
 * d chi_zeta / d zeta, which coincides with the spatial Laplacian of chi_zeta:
 * chi_zeta(x) * (|x|^2 / (4 zeta^2) - n / (2 zeta)).
 */
inline cplx kernel_dzeta(const ComplexTime& zeta, std::span<const double> x) {
    const cplx z = zeta.value();
    const double n = static_cast<double>(x.size());
    return kernel_eval(zeta, x) * (detail::norm_sq(x) / (4.0 * z * z) - n / (2.0 * z));
}

/// Riemann sum of chi_zeta over all points of g.
inline cplx kernel_mass(const ComplexTime& zeta, const Grid& g) {
    require_positive(zeta);
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.point(i);
        acc += kernel_eval(zeta, x);
    }
    return acc * g.cell_volume();
}

/// Riemann sum of w_k |chi_zeta| over all points of g.
inline double weighted_kernel_mass(const ComplexTime& zeta, double k, const Grid& g) {
    require_positive(zeta);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = std::sqrt(g.norm_sq(i));
        const double w = k == 0.0 ? 1.0 : std::pow(1.0 + r, k);
        acc += w * std::abs(kernel_eval(zeta, g.point(i)));
    }
    return acc * g.cell_volume();
}

/// Fourier symbol exp(-zeta |xi|^2) under the convention hat f(xi) = int f(x) e^{-i x.xi} dx.
inline cplx kernel_fourier(const ComplexTime& zeta, std::span<const double> xi) {
    return std::exp(-zeta.value() * detail::norm_sq(xi));
}

namespace detail {

inline void require_sector(const ComplexTime& zeta, double alpha) {
    require_positive(zeta);
    if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) throw std::invalid_argument("sector angle must lie in (0, pi/2)");
    if (!zeta.is_real() && !(std::abs(zeta.arg()) < alpha)) {
        throw std::invalid_argument("complex time " + zeta.to_string() + " lies outside the sector");
    }
}

// int_{|x|>R} |x|^j (4 pi r)^{-n/2} exp(-|x|^2 cos(alpha) / 4r) dx, via the upper incomplete gamma.
inline double radial_majorant_moment(double r, double cos_alpha, double R, int n, double j) {
    const double a = cos_alpha / (4.0 * r);
    const double s = 0.5 * (static_cast<double>(n) + j);
    // surface(S^{n-1}) * (4 pi r)^{-n/2} * 1/2 * a^{-s} * Gamma(s, a R^2)
    const double log_scale = 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n) -
                             0.5 * n * std::log(4.0 * std::numbers::pi * r) - s * std::log(a) + std::lgamma(s);
    const double q = R <= 0.0 ? 1.0 : boost::math::gamma_q(s, a * R * R);
    return std::exp(log_scale) * q;
}

}  // namespace detail

/**
 * Upper bound for int_{|x|>R} |chi_zeta(x)| dx from the uniform sector majorant
 * (4 pi r)^{-n/2} exp(-|x|^2 cos(alpha) / 4r). Equals (cos alpha)^{-n/2} Q(n/2, a R^2).
 */
inline double kernel_tail_bound(const ComplexTime& zeta, double alpha, double R, int n) {
    detail::require_sector(zeta, alpha);
    if (R < 0.0) throw std::invalid_argument("tail radius must be >= 0");
    const double c = zeta.is_real() ? 1.0 : std::cos(alpha);
    return detail::radial_majorant_moment(zeta.modulus(), c, R, n, 0.0);
}

/// Same as kernel_tail_bound with the weight w_k inside, using (1+r)^k <= 2^k (1 + r^k).
inline double weighted_kernel_tail_bound(const ComplexTime& zeta, double alpha, double R, int n, double k) {
    if (k == 0.0) return kernel_tail_bound(zeta, alpha, R, n);
    detail::require_sector(zeta, alpha);
    const double c = zeta.is_real() ? 1.0 : std::cos(alpha);
    const double r = zeta.modulus();
    return std::pow(2.0, k) *
           (detail::radial_majorant_moment(r, c, R, n, 0.0) + detail::radial_majorant_moment(r, c, R, n, k));
}

/// Smallest radius (to bisection accuracy) with weighted tail bound <= tol.
inline double truncation_radius(const ComplexTime& zeta, double alpha, int n, double tol, double k = 0.0) {
    if (!(tol > 0.0)) throw std::invalid_argument("tail tolerance must be positive");
    double lo = 0.0, hi = 1.0;
    while (weighted_kernel_tail_bound(zeta, alpha, hi, n, k) > tol) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("no truncation radius found");
    }
    for (int it = 0; it < 100 && hi - lo > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (weighted_kernel_tail_bound(zeta, alpha, mid, n, k) > tol ? lo : hi) = mid;
    }
    return hi;
}

/**
 * Grid whose half-extent covers the truncation radius for `tol` and whose
 * spacing does not exceed `spacing`. Never shrinks below `min_half_extent`.
 */
inline Grid grid_for_kernel(const ComplexTime& zeta, double alpha, int n, double spacing, double tol,
                            double min_half_extent = 0.0) {
    const double L = std::max(truncation_radius(zeta, alpha, n, tol), min_half_extent);
    const int N = static_cast<int>(std::ceil(2.0 * L / spacing)) + 1;
    return Grid(n, L, N);
}

}  // namespace heatsg
