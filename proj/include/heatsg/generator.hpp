#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsg/field.hpp"
#include "heatsg/semigroup.hpp"
#include "heatsg/weights.hpp"

namespace heatsg {

enum class LaplacianMethod {
    finite_difference,  // 2nd-order central differences, zero-filled
    spectral,           // DFT multiplier -|xi|^2
};

inline std::string to_string(LaplacianMethod m) {
    return m == LaplacianMethod::spectral ? "spectral" : "finite_difference";
}

inline LaplacianMethod parse_laplacian_method(const std::string& s) {
    if (s == "finite_difference" || s == "fd") return LaplacianMethod::finite_difference;
    if (s == "spectral") return LaplacianMethod::spectral;
    throw std::invalid_argument("unknown Laplacian method '" + s + "'");
}

inline Field discrete_laplacian(const Field& f, LaplacianMethod method = LaplacianMethod::finite_difference) {
    const Grid& g = f.grid();
    if (method == LaplacianMethod::spectral) {
        return detail::apply_multiplier(f, [](double xi_sq) { return cplx(-xi_sq, 0.0); });
    }
    const int N = g.points_per_axis();
    if (N < 3) throw std::invalid_argument("finite-difference Laplacian needs N >= 3");
    const auto m = static_cast<std::size_t>(f.components());
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    Field out(g, f.components());
    const auto in = f.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto j = g.multi_index(i);
        for (std::size_t c = 0; c < m; ++c) {
            const cplx centre = in[i * m + c];
            cplx acc(0.0, 0.0);
            for (int d = 0; d < g.dim(); ++d) {
                const std::size_t s = g.stride(d);
                const int jd = j[static_cast<std::size_t>(d)];
                const cplx up = jd + 1 < N ? in[(i + s) * m + c] : cplx(0.0, 0.0);
                const cplx down = jd > 0 ? in[(i - s) * m + c] : cplx(0.0, 0.0);
                acc += up - 2.0 * centre + down;
            }
            dst[i * m + c] = acc * inv_h2;
        }
    }
    return out;
}

/// Knobs shared by the generator-side residuals.
struct GeneratorOptions {
    ApplyOptions apply{};
    LaplacianMethod laplacian = LaplacianMethod::finite_difference;
    SpaceSpec space{};
    Window window{0.25};
};

struct GeneratorResiduals {
    double r1;  // || dG(t)f/dt - Delta G(t)f ||
    double r2;  // || Delta G(t)f - G(t) Delta f ||
    double r3;  // || dG(t)f/dt - chi'_t * f ||
};

inline GeneratorResiduals generator_residuals(const Field& f, double t, double dt, const GeneratorOptions& opts = {}) {
    if (!(dt > 0.0) || !(t - dt > 0.0)) throw std::invalid_argument("generator residuals need 0 < dt < t");
    const Field ahead = apply(ComplexTime(t + dt), f, opts.apply);
    const Field behind = apply(ComplexTime(t - dt), f, opts.apply);
    const Field now = apply(ComplexTime(t), f, opts.apply);
    const Field ddt = (ahead - behind) * cplx(1.0 / (2.0 * dt));
    const Field lap_now = discrete_laplacian(now, opts.laplacian);
    const Field now_lap = apply(ComplexTime(t), discrete_laplacian(f, opts.laplacian), opts.apply);
    const Field kernel_side = apply_dzeta(ComplexTime(t), f);
    return {weighted_norm(ddt - lap_now, opts.space, opts.window),
            weighted_norm(lap_now - now_lap, opts.space, opts.window),
            weighted_norm(ddt - kernel_side, opts.space, opts.window)};
}

/// || (G(h)f - f)/h - Delta f || on the window.
inline double difference_quotient_residual(const Field& f, double h, const GeneratorOptions& opts = {}) {
    if (!(h > 0.0)) throw std::invalid_argument("difference quotient step must be positive");
    const Field q = (apply(ComplexTime(h), f, opts.apply) - f) * cplx(1.0 / h);
    return weighted_norm(q - discrete_laplacian(f, opts.laplacian), opts.space, opts.window);
}

/**
 * Trapezoid nodes on [eps, t]. For eps = 0 the first uniform panel [0, t/steps]
 * is refined geometrically (ratio 2) over `grading_levels` extra nodes.
 */
inline std::vector<double> time_nodes(double t, double eps, int steps, int grading_levels = 10) {
    if (steps < 2) throw std::invalid_argument("time integral needs at least 2 steps");
    if (!(t > 0.0) || !(eps >= 0.0) || !(eps < t)) throw std::invalid_argument("time integral needs 0 <= eps < t");
    std::vector<double> nodes;
    const double d = (t - eps) / steps;
    nodes.push_back(eps);
    if (eps == 0.0) {
        for (int j = grading_levels; j >= 1; --j) nodes.push_back(std::ldexp(d, -j));
    }
    for (int i = 1; i < steps; ++i) nodes.push_back(eps + i * d);
    nodes.push_back(t);
    return nodes;
}

/// Composite trapezoid approximation of int_eps^t G(s) f ds.
inline Field time_integral(const Field& f, double t, double eps, int steps, const ApplyOptions& opts = {},
                           int grading_levels = 10) {
    const auto nodes = time_nodes(t, eps, steps, grading_levels);
    Field acc(f.grid(), f.components());
    Field prev = apply(ComplexTime(nodes.front()), f, opts);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        Field cur = apply(ComplexTime(nodes[i]), f, opts);
        const double w = 0.5 * (nodes[i] - nodes[i - 1]);
        acc += (prev + cur) * cplx(w);
        prev = std::move(cur);
    }
    return acc;
}

/// || Delta int_eps^t G(s)f ds - (G(t)f - G(eps)f) || on the window; eps = 0 is the mild identity.
inline double mild_identity_residual(const Field& f, double t, double eps, int steps, const GeneratorOptions& opts = {},
                                     int grading_levels = 10) {
    const Field integral = time_integral(f, t, eps, steps, opts.apply, grading_levels);
    const Field rhs = apply(ComplexTime(t), f, opts.apply) - apply(ComplexTime(eps), f, opts.apply);
    return weighted_norm(discrete_laplacian(integral, opts.laplacian) - rhs, opts.space, opts.window);
}

inline double mild_identity_residual(const Field& f, double t, int steps, const GeneratorOptions& opts = {}) {
    return mild_identity_residual(f, t, 0.0, steps, opts);
}

/**
 * max over window points and interior positive times of
 * | (u(t+dt) - u(t-dt)) / 2dt - Delta u(t) |, for uniformly spaced positive times.
 */
inline double classical_residual(const Trajectory& traj,
                                 LaplacianMethod laplacian = LaplacianMethod::finite_difference,
                                 const Window& window = Window(0.25)) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] > 0.0) idx.push_back(i);
    }
    if (idx.size() < 3) throw std::invalid_argument("classical residual needs at least 3 positive times");
    const double dt = traj.times[idx[1]] - traj.times[idx[0]];
    for (std::size_t a = 1; a < idx.size(); ++a) {
        const double step = traj.times[idx[a]] - traj.times[idx[a - 1]];
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, dt)) throw std::invalid_argument("classical residual needs uniformly spaced times");
    }
    double worst = 0.0;
    for (std::size_t a = 1; a + 1 < idx.size(); ++a) {
        const Field& u = traj.states[idx[a]];
        const Field ddt = (traj.states[idx[a + 1]] - traj.states[idx[a - 1]]) * cplx(1.0 / (2.0 * dt));
        const Field r = ddt - discrete_laplacian(u, laplacian);
        const Grid& g = r.grid();
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (window.contains(g, i)) worst = std::max(worst, r.modulus(i));
        }
    }
    return worst;
}

}  // namespace heatsg
