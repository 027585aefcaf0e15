#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <future>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsg/complex_time.hpp"
#include "heatsg/detail/convolve.hpp"
#include "heatsg/detail/dft.hpp"
#include "heatsg/field.hpp"
#include "heatsg/kernel.hpp"
#include "heatsg/weights.hpp"

namespace heatsg {

/// Evaluation path for G(zeta) f.
enum class Method {
    automatic,   // spectral for real times, quadrature otherwise
    quadrature,  // zero-filled discrete convolution with sampled chi_zeta
    spectral,    // DFT, multiply by the symbol, inverse DFT (periodic)
};

inline std::string to_string(Method m) {
    switch (m) {
        case Method::automatic: return "automatic";
        case Method::quadrature: return "quadrature";
        case Method::spectral: return "spectral";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    if (s == "automatic" || s == "auto") return Method::automatic;
    if (s == "quadrature") return Method::quadrature;
    if (s == "spectral") return Method::spectral;
    throw std::invalid_argument("unknown method '" + s + "' (expected quadrature, spectral or automatic)");
}

/// Spectral multiplier as a function of (zeta, |xi|^2).
using Symbol = std::function<cplx(cplx zeta, double xi_sq)>;

inline cplx heat_symbol(cplx zeta, double xi_sq) { return std::exp(-zeta * xi_sq); }

struct ApplyOptions {
    Method method = Method::automatic;
    Symbol symbol = heat_symbol;
    // Sector used for the uniform tail estimates of complex times.
    double sector = std::numbers::pi / 3;
    // Truncation budget above which a provenance warning is recorded.
    double budget_tolerance = 1e-10;
    Window window{0.25};
};

struct Provenance {
    Method method = Method::automatic;
    double truncation_budget = 0.0;
    std::vector<std::string> warnings;
};

inline Method resolve_method(const ComplexTime& zeta, const ApplyOptions& opts) {
    if (opts.method != Method::automatic) return opts.method;
    return zeta.is_real() ? Method::spectral : Method::quadrature;
}

namespace detail {

inline std::vector<cplx> factor_taps(const ComplexTime& zeta, const Grid& g, bool second_derivative) {
    const int N = g.points_per_axis();
    std::vector<cplx> taps(static_cast<std::size_t>(2 * N - 1));
    for (int o = -(N - 1); o <= N - 1; ++o) {
        const double s = static_cast<double>(o) * g.spacing();
        taps[static_cast<std::size_t>(o + N - 1)] = second_derivative ? kernel_factor_dss(zeta, s) : kernel_factor(zeta, s);
    }
    return taps;
}

inline double sector_for(const ComplexTime& zeta, double sector) {
    const double a = std::abs(zeta.arg());
    return a < sector ? sector : 0.5 * (a + std::numbers::pi / 2);
}

/**
 * Estimated truncation error on the interior window: the zero-fill edge jump
 * times the kernel mass, plus for the periodic path the kernel tail beyond the
 * distance separating the window from the nearest periodic image of f's support.
 */
inline double truncation_budget(const ComplexTime& zeta, const Field& f, Method method, const ApplyOptions& opts) {
    const Grid& g = f.grid();
    double edge = 0.0, sup = 0.0, support = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = f.modulus(i);
        sup = std::max(sup, v);
        if (g.boundary_distance(i) == 0) edge = std::max(edge, v);
    }
    if (sup == 0.0) return 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (f.modulus(i) > 1e-12 * sup) support = std::max(support, std::sqrt(g.norm_sq(i)));
    }
    double line_mass = 0.0;
    for (const auto& t : factor_taps(zeta, g, false)) line_mass += std::abs(t) * g.spacing();
    double budget = edge * std::pow(line_mass, g.dim());
    if (method == Method::spectral) {
        const double period = g.points_per_axis() * g.spacing();
        const double gap = std::max(0.0, period - support - opts.window.outer_radius(g));
        budget += sup * 2.0 * g.dim() * kernel_tail_bound(zeta, sector_for(zeta, opts.sector), gap, g.dim());
    }
    return budget;
}

inline Field apply_quadrature(const ComplexTime& zeta, const Field& f) {
    const auto taps = factor_taps(zeta, f.grid(), false);
    Field out = f;
    for (int d = 0; d < f.grid().dim(); ++d) out = detail::convolve_axis(out, d, taps);
    return out;
}

inline Field apply_multiplier(const Field& f, const std::function<cplx(double)>& multiplier) {
    const Grid& g = f.grid();
    const auto xi_sq = frequency_norm_sq(g);
    std::vector<cplx> symbol(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) symbol[i] = multiplier(xi_sq[i]);
    Field out(g, f.components());
    Dft dft(g);
    auto buf = dft.data();
    const auto m = static_cast<std::size_t>(f.components());
    const double scale = 1.0 / static_cast<double>(g.size());
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < g.size(); ++i) buf[i] = f.values()[i * m + c];
        dft.forward();
        for (std::size_t i = 0; i < g.size(); ++i) buf[i] *= symbol[i];
        dft.backward();
        for (std::size_t i = 0; i < g.size(); ++i) out.values()[i * m + c] = buf[i] * scale;
    }
    return out;
}

}  // namespace detail

/**
 * G(zeta) f. zeta = 0 returns f unchanged. The provenance (if requested)
 * records the path used and the estimated truncation budget.
 */
inline Field apply(const ComplexTime& zeta, const Field& f, const ApplyOptions& opts = {},
                   Provenance* provenance = nullptr) {
    if (zeta.is_zero()) {
        if (provenance) *provenance = Provenance{opts.method, 0.0, {}};
        return f;
    }
    const Method method = resolve_method(zeta, opts);
    if (provenance) {
        provenance->method = method;
        provenance->truncation_budget = detail::truncation_budget(zeta, f, method, opts);
        provenance->warnings.clear();
        if (provenance->truncation_budget > opts.budget_tolerance) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "truncation budget %.3g exceeds %.3g at zeta=%s", provenance->truncation_budget,
                          opts.budget_tolerance, zeta.to_string().c_str());
            provenance->warnings.emplace_back(buf);
        }
    }
    if (method == Method::quadrature) return detail::apply_quadrature(zeta, f);
    const cplx z = zeta.value();
    return detail::apply_multiplier(f, [&](double xi_sq) { return opts.symbol(z, xi_sq); });
}

inline Field apply(const ComplexTime& zeta, const Field& f, Method method) {
    ApplyOptions opts;
    opts.method = method;
    return apply(zeta, f, opts);
}

/// (d/d zeta) G(zeta) f = chi'_zeta * f by zero-filled quadrature.
/// chi' = sum_d (second derivative of the factor on axis d) x (factors elsewhere).
inline Field apply_dzeta(const ComplexTime& zeta, const Field& f) {
    require_positive(zeta);
    const Grid& g = f.grid();
    const auto plain = detail::factor_taps(zeta, g, false);
    const auto curved = detail::factor_taps(zeta, g, true);
    Field total(g, f.components());
    for (int d = 0; d < g.dim(); ++d) {
        Field term = f;
        for (int e = 0; e < g.dim(); ++e) term = detail::convolve_axis(term, e, e == d ? curved : plain);
        total += term;
    }
    return total;
}

/**
 * M_k(zeta) = h^n sum_y w_k(y) |chi_zeta(y)| over the difference lattice the
 * quadrature path uses (offsets up to (N-1) h per axis). For every field,
 * weighted_norm(apply(zeta, f, quadrature)) <= M_k(zeta) * weighted_norm(f).
 */
inline double operator_bound(const ComplexTime& zeta, double k, const Grid& g) {
    require_positive(zeta);
    const Weight w(k);
    const int N = g.points_per_axis();
    const int n = g.dim();
    std::vector<double> factor(static_cast<std::size_t>(2 * N - 1));
    for (int o = -(N - 1); o <= N - 1; ++o) {
        factor[static_cast<std::size_t>(o + N - 1)] = std::abs(kernel_factor(zeta, o * g.spacing()));
    }
    const auto M = static_cast<std::size_t>(2 * N - 1);
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) total *= M;
    double acc = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        double r2 = 0.0, mag = 1.0;
        for (int d = 0; d < n; ++d) {
            const std::size_t j = rest % M;
            rest /= M;
            const double y = (static_cast<double>(j) - (N - 1)) * g.spacing();
            r2 += y * y;
            mag *= factor[j];
        }
        acc += w.radial(std::sqrt(r2)) * mag;
    }
    return acc * g.cell_volume();
}

/// States u(t_i) = G(t_i) f for strictly increasing real times.
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;
};

inline Trajectory trajectory(const Field& f, const std::vector<double>& times, const ApplyOptions& opts = {},
                             bool concurrent = false) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw std::invalid_argument("trajectory times must be finite and >= 0");
        if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("trajectory times must be strictly increasing");
    }
    Trajectory traj;
    traj.times = times;
    traj.states.reserve(times.size());
    if (!concurrent) {
        for (double t : times) traj.states.push_back(apply(ComplexTime(t), f, opts));
        return traj;
    }
    std::vector<std::future<Field>> pending;
    pending.reserve(times.size());
    for (double t : times) {
        pending.push_back(std::async(std::launch::async, [&f, &opts, t] { return apply(ComplexTime(t), f, opts); }));
    }
    for (auto& p : pending) traj.states.push_back(p.get());
    return traj;
}

}  // namespace heatsg
