#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heatsg/complex_time.hpp"
#include "heatsg/detail/dft.hpp"
#include "heatsg/field.hpp"
#include "heatsg/fields.hpp"
#include "heatsg/generator.hpp"
#include "heatsg/kernel.hpp"
#include "heatsg/semigroup.hpp"
#include "heatsg/weights.hpp"

namespace heatsg {

// ---------------------------------------------------------------------------
// Individual residual checks
// ---------------------------------------------------------------------------

struct LawResidual {
    double absolute;   // || G(z1+z2)f - G(z1)G(z2)f ||
    double reference;  // || G(z1+z2)f ||
    double relative() const { return reference > 0.0 ? absolute / reference : absolute; }
};

inline LawResidual semigroup_law_residual(const ComplexTime& z1, const ComplexTime& z2, const Field& f,
                                          const SpaceSpec& s, const ApplyOptions& opts = {}) {
    const Field joint = apply(z1 + z2, f, opts);
    const Field composed = apply(z1, apply(z2, f, opts), opts);
    return {weighted_norm(joint - composed, s, opts.window), weighted_norm(joint, s, opts.window)};
}

struct ContinuityRow {
    double ray;
    double radius;
    double residual;
};

/// || G(r e^{i phi}) f - f || on the window for every ray phi and radius r, ordered by (ray, radius).
inline std::vector<ContinuityRow> continuity_scan(const Field& f, const SpaceSpec& s, double alpha,
                                                  const std::vector<double>& rays, const std::vector<double>& radii,
                                                  const ApplyOptions& opts = {}) {
    if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) throw std::invalid_argument("sector angle must lie in (0, pi/2)");
    for (double phi : rays) {
        if (!(std::abs(phi) < alpha)) throw std::invalid_argument("ray angle outside the sector");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw std::invalid_argument("continuity radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("continuity radii must be strictly decreasing");
    }
    std::vector<ContinuityRow> rows;
    for (double phi : rays) {
        for (double r : radii) {
            const ComplexTime zeta = phi == 0.0 ? ComplexTime(r) : ComplexTime::polar(r, phi);
            rows.push_back({phi, r, weighted_norm(apply(zeta, f, opts) - f, s, opts.window)});
        }
    }
    return rows;
}

struct HolomorphyResiduals {
    double cauchy_riemann;    // || (D_x U + i D_y U) / 2 ||, the discrete d/d(conj zeta)
    double derivative_match;  // || D_x U - chi'_zeta * f ||
};

/// Central differences of U(zeta) = G(zeta) f along the real and imaginary directions.
inline HolomorphyResiduals holomorphy_residuals(const Field& f, const ComplexTime& zeta, double h, const SpaceSpec& s,
                                                ApplyOptions opts = {}) {
    if (!(h > 0.0)) throw std::invalid_argument("holomorphy step must be positive");
    if (!(zeta.real() - h > 0.0)) throw std::invalid_argument("holomorphy stencil leaves the right half-plane");
    if (opts.method == Method::automatic) opts.method = Method::quadrature;
    const cplx z = zeta.value();
    const Field dx = (apply(ComplexTime(z + h), f, opts) - apply(ComplexTime(z - h), f, opts)) * cplx(1.0 / (2.0 * h));
    const Field dy = (apply(ComplexTime(z + cplx(0.0, h)), f, opts) - apply(ComplexTime(z - cplx(0.0, h)), f, opts)) *
                     cplx(1.0 / (2.0 * h));
    const Field dbar = (dx + dy * cplx(0.0, 1.0)) * cplx(0.5);
    return {weighted_norm(dbar, s, opts.window), weighted_norm(dx - apply_dzeta(zeta, f), s, opts.window)};
}

/// Weighted norm of the m-node trapezoid approximation to the contour integral of G(zeta) f.
inline double contour_residual(const Field& f, const ComplexTime& center, double radius, int m, const SpaceSpec& s,
                               ApplyOptions opts = {}) {
    if (m < 8) throw std::invalid_argument("contour needs at least 8 nodes");
    if (!(radius > 0.0) || !(center.real() - radius > 0.0)) throw std::invalid_argument("contour disk leaves the right half-plane");
    if (opts.method == Method::automatic) opts.method = Method::quadrature;
    Field acc(f.grid(), f.components());
    for (int j = 0; j < m; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / m;
        const cplx dz = cplx(0.0, radius) * std::polar(1.0, theta) * (2.0 * std::numbers::pi / m);
        acc += apply(ComplexTime(center.value() + std::polar(radius, theta)), f, opts) * dz;
    }
    return weighted_norm(acc, s, opts.window);
}

/**
 * Max |h^n e^{i L sum xi} DFT(chi_zeta)(xi) - symbol(zeta, |xi|^2)| over the
 * lowest half of the frequency range (|k_d| <= N/4).
 */
inline double fourier_symbol_residual(const ComplexTime& zeta, const Grid& g, const Symbol& symbol = heat_symbol) {
    require_positive(zeta);
    detail::Dft dft(g);
    auto buf = dft.data();
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] = kernel_eval(zeta, g.point(i));
    dft.forward();
    const int N = g.points_per_axis();
    const double vol = g.cell_volume();
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t rest = i;
        double xi_sum = 0.0, xi_sq = 0.0;
        bool low = true;
        for (int d = 0; d < g.dim(); ++d) {
            const int j = static_cast<int>(rest % static_cast<std::size_t>(N));
            rest /= static_cast<std::size_t>(N);
            if (std::abs(detail::dft_index(j, N)) > N / 4) low = false;
            const double xi = detail::dft_frequency(j, N, g.spacing());
            xi_sum += xi;
            xi_sq += xi * xi;
        }
        if (!low) continue;
        const cplx continuous = vol * std::polar(1.0, g.half_extent() * xi_sum) * buf[i];
        worst = std::max(worst, std::abs(continuous - symbol(zeta.value(), xi_sq)));
    }
    return worst;
}

/// Least-squares slope of log(error) against log(step).
inline double observed_order(const std::vector<double>& steps, const std::vector<double>& errors) {
    if (steps.size() != errors.size() || steps.size() < 2) throw std::invalid_argument("order fit needs >= 2 samples");
    double mx = 0.0, my = 0.0;
    const double k = static_cast<double>(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        mx += std::log(steps[i]) / k;
        my += std::log(errors[i]) / k;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double dx = std::log(steps[i]) - mx;
        sxy += dx * (std::log(errors[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    std::string anchor;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
    double truncation_budget = 0.0;
};

class VerificationReport {
public:
    void add(CheckResult r) { checks_.push_back(std::move(r)); }

    void add(std::string name, std::string anchor, double residual, double tolerance, std::string note = {},
             double budget = 0.0) {
        const bool ok = std::isfinite(residual) && residual >= 0.0 && residual <= tolerance;
        checks_.push_back({std::move(name), std::move(anchor), residual, tolerance, ok, std::move(note), budget});
    }

    const std::vector<CheckResult>& checks() const { return checks_; }
    bool all_pass() const {
        for (const auto& c : checks_) {
            if (!c.pass) return false;
        }
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks_) n += c.pass ? 0 : 1;
        return n;
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "check,anchor,residual,tolerance,pass\n";
        for (const auto& c : checks_) {
            os << c.name << ',' << c.anchor << ',' << fmt(c.residual) << ',' << fmt(c.tolerance) << ','
               << (c.pass ? "true" : "false") << '\n';
        }
        return os.str();
    }

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& c : checks_) {
            os << (c.pass ? "PASS " : "FAIL ") << c.name << "\n    " << c.anchor << "\n    residual " << fmt(c.residual)
               << "  tolerance " << fmt(c.tolerance) << "  truncation budget " << fmt(c.truncation_budget) << '\n';
            if (!c.note.empty()) os << "    " << c.note << '\n';
        }
        os << checks_.size() - failures() << '/' << checks_.size() << " checks passed\n";
        return os.str();
    }

private:
    static std::string fmt(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6e", v);
        return buf;
    }
    std::vector<CheckResult> checks_;
};

inline const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names = {
        "weight_inequality", "kernel_mass", "fourier_symbol", "gaussian_closed_form", "semigroup_law",
        "path_equivalence",  "continuity",  "holomorphy",     "generator",            "mild_identity",
        "operator_bound",    "classical"};
    return names;
}

inline std::map<std::string, double> default_tolerances() {
    return {
        {"weight_inequality", 1e-12},
        {"kernel_mass_real", 1e-8},
        {"kernel_mass_complex", 1e-6},
        {"fourier_symbol", 1e-4},
        {"gaussian_closed_form", 1e-6},
        {"kernel_convolution", 1e-6},
        {"semigroup_law", 1e-5},
        {"path_equivalence", 1e-5},
        {"continuity_monotone", 1e-9},
        {"continuity_final", 1e-3},
        {"holomorphy_ratio", 0.5},  // half-width of the admissible band around 4
        {"contour", 1e-8},
        {"generator", 1e-4},
        {"difference_quotient", 0.5},  // error contraction per halving, 2^{-order}
        {"mild_identity", 1e-4},
        {"mild_refinement", 0.5},
        {"operator_bound", 1e-10},
        {"classical_refinement", 1.0 / 3.0},
    };
}

struct SuiteConfig {
    int n = 1;
    double L = 12.0;
    int N = 1025;
    SpaceSpec space = SpaceSpec::buc(0.0);
    double alpha = 5.0 * std::numbers::pi / 12.0;
    std::uint64_t seed = 20240601;
    double margin = 0.25;
    LaplacianMethod laplacian = LaplacianMethod::finite_difference;
    std::vector<std::string> checks = all_check_names();
    std::map<std::string, double> tol = default_tolerances();
    // Spectral multiplier; replaced only to seed deliberate defects.
    Symbol symbol = heat_symbol;

    std::vector<ComplexTime> mass_zetas = {ComplexTime(0.25),
                                           ComplexTime(1.0),
                                           ComplexTime(4.0),
                                           ComplexTime::polar(1.0, std::numbers::pi / 4),
                                           ComplexTime::polar(1.0, -std::numbers::pi / 4),
                                           ComplexTime::polar(0.5, std::numbers::pi / 3)};
    double mass_tail = 1e-10;
    std::vector<ComplexTime> fourier_zetas = {ComplexTime(1.0), ComplexTime(1.0, 1.0)};
    std::vector<double> closed_form_times = {0.1, 1.0, 5.0};
    std::vector<std::pair<ComplexTime, ComplexTime>> law_pairs = {
        {ComplexTime(0.3), ComplexTime(0.7)},
        {ComplexTime::polar(0.5, std::numbers::pi / 4), ComplexTime::polar(0.5, -std::numbers::pi / 4)},
        {ComplexTime::polar(0.2, std::numbers::pi / 6), ComplexTime(0.5)}};
    std::vector<double> law_weights = {0.0, 1.0, 2.0};
    std::vector<ComplexTime> path_zetas = {ComplexTime(0.1), ComplexTime(1.0), ComplexTime::polar(0.5, std::numbers::pi / 4),
                                           ComplexTime::polar(0.5, std::numbers::pi / 3), ComplexTime(1.0, 1.0)};
    std::vector<double> continuity_weights = {0.0, 2.0};
    std::vector<double> continuity_rays = {-std::numbers::pi / 4, 0.0, std::numbers::pi / 4};
    int continuity_levels = 10;
    std::vector<double> generator_weights = {0.0, 1.0};
    std::vector<double> bound_weights = {0.0, 1.0, 2.0};
    std::vector<ComplexTime> bound_zetas = {ComplexTime(1.0), ComplexTime::polar(1.0, std::numbers::pi / 4)};
    int bound_fields = 100;
    std::vector<double> weight_exponents = {0.0, 0.5, 1.0, 1.5, 2.0, 3.7};
    int weight_draws = 10000;
    int components = 1;

    Grid grid() const { return Grid(n, L, N); }
    double tolerance(const std::string& key) const {
        auto it = tol.find(key);
        if (it == tol.end()) throw std::invalid_argument("no tolerance named '" + key + "'");
        return it->second;
    }
    ApplyOptions apply_options() const {
        ApplyOptions o;
        o.symbol = symbol;
        o.sector = alpha;
        o.window = Window(margin);
        return o;
    }
};

namespace detail {

inline std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string fmt_time(const ComplexTime& z) {
    if (z.is_real()) return fmt_num(z.real());
    return fmt_num(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_num(std::abs(z.imag())) + "i";
}

inline void validate(const SuiteConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < std::numbers::pi / 2)) throw std::invalid_argument("sector.alpha must lie in (0, pi/2)");
    (void)Window(cfg.margin);
    (void)cfg.grid();
    for (const auto& name : cfg.checks) {
        bool known = false;
        for (const auto& k : all_check_names()) known = known || k == name;
        if (!known) throw std::invalid_argument("unknown check '" + name + "'");
    }
}

struct SuiteContext {
    const SuiteConfig& cfg;
    Grid grid;
    ApplyOptions opts;
    Window window;
    VerificationReport& report;

    SpaceSpec space(double k) const { return cfg.space.with_weight(k); }

    Field bumps(std::uint64_t salt) const {
        return fields::random_bumps(grid, cfg.seed + salt, cfg.components, fields::boundary_negligible_bumps(grid));
    }

    Field tracked_apply(const ComplexTime& z, const Field& f, double& budget, Method method = Method::automatic) const {
        ApplyOptions o = opts;
        if (method != Method::automatic) o.method = method;
        Provenance p;
        Field out = apply(z, f, o, &p);
        budget = std::max(budget, p.truncation_budget);
        return out;
    }
};

inline void check_weight_inequality(const SuiteContext& ctx) {
    std::mt19937_64 rng(ctx.cfg.seed);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    const auto n = static_cast<std::size_t>(ctx.cfg.n);
    for (double k : ctx.cfg.weight_exponents) {
        double worst = 0.0;
        std::vector<double> x(n), y(n);
        for (int draw = 0; draw < ctx.cfg.weight_draws; ++draw) {
            for (auto& v : x) v = coord(rng);
            for (auto& v : y) v = coord(rng);
            const auto s = weight_inequality_check(k, x, y);
            // Slack relative to the magnitude of the compared terms.
            const Weight w(k);
            const double scale = 1.0 + w(x) * w(y) * (1.0 + w(y));
            worst = std::max(worst, -s.min() / scale);
        }
        ctx.report.add("weight_inequality{k=" + fmt_num(k) + "}", "weight bounds 1<=w(x+y)<=w(x)w(y) and companions",
                       std::max(0.0, worst), ctx.cfg.tolerance("weight_inequality"),
                       std::to_string(ctx.cfg.weight_draws) + " random pairs");
    }
}

inline void check_kernel_mass(const SuiteContext& ctx) {
    for (const auto& z : ctx.cfg.mass_zetas) {
        const double alpha = sector_for(z, ctx.cfg.alpha);
        const Grid g = grid_for_kernel(z, alpha, ctx.cfg.n, ctx.grid.spacing(), ctx.cfg.mass_tail, ctx.grid.half_extent());
        const double err = std::abs(kernel_mass(z, g) - 1.0);
        const double tol = ctx.cfg.tolerance(z.is_real() ? "kernel_mass_real" : "kernel_mass_complex");
        ctx.report.add("kernel_mass{zeta=" + fmt_time(z) + ";n=" + std::to_string(ctx.cfg.n) + "}",
                       "unit mass of chi_zeta on the right half-plane", err, tol,
                       "L=" + fmt_num(g.half_extent()) + " N=" + std::to_string(g.points_per_axis()),
                       kernel_tail_bound(z, alpha, g.half_extent(), ctx.cfg.n));
    }
}

// The DFT box must hold chi_zeta: a kernel cut off at the box edge aliases into
// the low frequencies. Boxes grow (at the reference spacing) until the tail
// bound is two orders below the tolerance.
inline void check_fourier_symbol(const SuiteContext& ctx) {
    const double tol = ctx.cfg.tolerance("fourier_symbol");
    for (const auto& z : ctx.cfg.fourier_zetas) {
        const double alpha = sector_for(z, ctx.cfg.alpha);
        const Grid g = grid_for_kernel(z, alpha, ctx.cfg.n, ctx.grid.spacing(), 1e-2 * tol, ctx.grid.half_extent());
        ctx.report.add("fourier_symbol{zeta=" + fmt_time(z) + ";n=" + std::to_string(ctx.cfg.n) + "}",
                       "Fourier transform of chi_zeta is exp(-zeta|xi|^2)", fourier_symbol_residual(z, g, ctx.cfg.symbol), tol,
                       "L=" + fmt_num(g.half_extent()) + " N=" + std::to_string(g.points_per_axis()),
                       kernel_tail_bound(z, alpha, g.half_extent(), ctx.cfg.n));
    }
}

inline double interior_max_diff(const Field& a, const Field& b, const Window& w) {
    return weighted_norm(a - b, SpaceSpec::buc(0.0), w);
}

inline void check_gaussian_closed_form(const SuiteContext& ctx) {
    const int m = ctx.cfg.components;
    const Field f = fields::gaussian(ctx.grid, 1.0, m);
    for (double t : ctx.cfg.closed_form_times) {
        double budget = 0.0;
        const Field got = ctx.tracked_apply(ComplexTime(t), f, budget);
        ctx.report.add("gaussian_closed_form{t=" + fmt_num(t) + "}", "G(t)exp(-x^2) = (1+4t)^(-n/2) exp(-x^2/(1+4t))",
                       interior_max_diff(got, fields::gaussian_evolved(ctx.grid, t, 1.0, m), ctx.window),
                       ctx.cfg.tolerance("gaussian_closed_form"), {}, budget);
    }
    double budget = 0.0;
    const Field conv = ctx.tracked_apply(ComplexTime(0.5), fields::kernel(ctx.grid, 0.5), budget);
    ctx.report.add("kernel_convolution{s=0.5;t=0.5}", "chi_s * chi_t = chi_(s+t)",
                   interior_max_diff(conv, fields::kernel(ctx.grid, 1.0), ctx.window),
                   ctx.cfg.tolerance("kernel_convolution"), {}, budget);
}

inline void check_semigroup_law(const SuiteContext& ctx) {
    const std::vector<std::pair<std::string, Field>> inputs = {{"gaussian", fields::gaussian(ctx.grid, 1.0, ctx.cfg.components)},
                                                               {"bumps", ctx.bumps(1)}};
    for (const auto& [z1, z2] : ctx.cfg.law_pairs) {
        for (const auto& [label, f] : inputs) {
            double budget = 0.0;
            const Field joint = ctx.tracked_apply(z1 + z2, f, budget);
            const Field inner = ctx.tracked_apply(z2, f, budget);
            const Field composed = ctx.tracked_apply(z1, inner, budget);
            for (double k : ctx.cfg.law_weights) {
                const SpaceSpec s = ctx.space(k);
                const double rel = weighted_norm(joint - composed, s, ctx.window) / weighted_norm(joint, s, ctx.window);
                ctx.report.add("semigroup_law{z1=" + fmt_time(z1) + ";z2=" + fmt_time(z2) + ";k=" + fmt_num(k) + ";" + label + "}",
                               "G(z1+z2) = G(z1)G(z2)", rel, ctx.cfg.tolerance("semigroup_law"), "relative weighted norm",
                               budget);
            }
        }
    }
}

inline void check_path_equivalence(const SuiteContext& ctx) {
    const std::vector<std::pair<std::string, Field>> inputs = {{"gaussian", fields::gaussian(ctx.grid, 1.0, ctx.cfg.components)},
                                                               {"bumps", ctx.bumps(2)},
                                                               {"kernel", fields::kernel(ctx.grid, 0.5)}};
    const SpaceSpec s = ctx.cfg.space;
    for (const auto& z : ctx.cfg.path_zetas) {
        for (const auto& [label, f] : inputs) {
            double budget = 0.0;
            const Field q = ctx.tracked_apply(z, f, budget, Method::quadrature);
            const Field p = ctx.tracked_apply(z, f, budget, Method::spectral);
            const double rel = weighted_norm(q - p, s, ctx.window) / weighted_norm(q, s, ctx.window);
            ctx.report.add("path_equivalence{zeta=" + fmt_time(z) + ";" + label + "}",
                           "convolution with chi_zeta = multiplication by its symbol", rel,
                           ctx.cfg.tolerance("path_equivalence"), "relative weighted norm", budget);
        }
    }
}

inline void check_continuity(const SuiteContext& ctx) {
    const std::vector<std::pair<std::string, Field>> inputs = {
        {"gaussian", fields::gaussian(ctx.grid, 8.0, ctx.cfg.components)},
        {"lipschitz_bumps", fields::random_bumps(ctx.grid, ctx.cfg.seed + 3, ctx.cfg.components, fields::lipschitz_bumps(ctx.grid))}};
    std::vector<double> radii;
    for (int j = 1; j <= ctx.cfg.continuity_levels; ++j) radii.push_back(std::ldexp(1.0, -j));
    for (double k : ctx.cfg.continuity_weights) {
        for (const auto& [label, f] : inputs) {
            const auto rows = continuity_scan(f, ctx.space(k), ctx.cfg.alpha, ctx.cfg.continuity_rays, radii, ctx.opts);
            for (double ray : ctx.cfg.continuity_rays) {
                double rise = 0.0, last = 0.0, prev = std::numeric_limits<double>::infinity();
                for (const auto& row : rows) {
                    if (row.ray != ray) continue;
                    if (std::isfinite(prev)) rise = std::max(rise, row.residual - prev);
                    prev = row.residual;
                    last = row.residual;
                }
                const std::string tag = "{ray=" + fmt_num(ray) + ";k=" + fmt_num(k) + ";" + label + "}";
                ctx.report.add("continuity_monotone" + tag, "G(zeta)f -> f as zeta -> 0 inside the sector", std::max(0.0, rise),
                               ctx.cfg.tolerance("continuity_monotone"), "largest increase between consecutive radii");
                ctx.report.add("continuity_final" + tag, "G(zeta)f -> f as zeta -> 0 inside the sector", last,
                               ctx.cfg.tolerance("continuity_final"), "residual at radius " + fmt_num(radii.back()));
            }
        }
    }
}

inline void check_holomorphy(const SuiteContext& ctx) {
    const Field f = fields::gaussian(ctx.grid, 1.0, ctx.cfg.components);
    const SpaceSpec s = ctx.cfg.space;
    const ComplexTime z(1.0);
    const auto coarse = holomorphy_residuals(f, z, 1e-2, s, ctx.opts);
    const auto fine = holomorphy_residuals(f, z, 5e-3, s, ctx.opts);
    const double dm_ratio = coarse.derivative_match / fine.derivative_match;
    const double cr_ratio = coarse.cauchy_riemann / fine.cauchy_riemann;
    const double band = ctx.cfg.tolerance("holomorphy_ratio");
    ctx.report.add("holomorphy_derivative_order{zeta=1}", "G'(zeta)f = chi'_zeta * f", std::abs(dm_ratio - 4.0), band,
                   "ratio " + fmt_num(dm_ratio) + " (h=1e-2 vs 5e-3); residuals " + fmt_num(coarse.derivative_match) + ", " +
                       fmt_num(fine.derivative_match));
    ctx.report.add("holomorphy_cauchy_riemann_order{zeta=1}", "zeta -> G(zeta)f is holomorphic", std::abs(cr_ratio - 4.0), band,
                   "ratio " + fmt_num(cr_ratio) + " (h=1e-2 vs 5e-3); residuals " + fmt_num(coarse.cauchy_riemann) + ", " +
                       fmt_num(fine.cauchy_riemann));
    ctx.report.add("contour{center=1;radius=0.25;m=64}", "closed contour integrals of G(zeta)f vanish",
                   contour_residual(f, z, 0.25, 64, s, ctx.opts), ctx.cfg.tolerance("contour"));
}

inline void check_generator(const SuiteContext& ctx) {
    const Field f = fields::gaussian(ctx.grid, 1.0, ctx.cfg.components);
    for (double k : ctx.cfg.generator_weights) {
        GeneratorOptions g{ctx.opts, ctx.cfg.laplacian, ctx.space(k), ctx.window};
        const auto r = generator_residuals(f, 0.5, 1e-3, g);
        const std::string tag = "{t=0.5;dt=1e-3;k=" + fmt_num(k) + "}";
        const double tol = ctx.cfg.tolerance("generator");
        ctx.report.add("generator_r1" + tag, "dG(t)f/dt = Delta G(t)f", r.r1, tol);
        ctx.report.add("generator_r2" + tag, "Delta G(t)f = G(t) Delta f", r.r2, tol);
        ctx.report.add("generator_r3" + tag, "dG(t)f/dt = chi'_t * f", r.r3, tol);
    }
    GeneratorOptions g{ctx.opts, ctx.cfg.laplacian, ctx.cfg.space, ctx.window};
    const std::vector<double> steps = {1e-2, 5e-3, 2.5e-3};
    std::vector<double> errs;
    for (double h : steps) errs.push_back(difference_quotient_residual(f, h, g));
    const double order = observed_order(steps, errs);
    ctx.report.add("difference_quotient_order", "(G(h)f - f)/h -> Delta f", std::pow(2.0, -order),
                   ctx.cfg.tolerance("difference_quotient"),
                   "observed order " + fmt_num(order) + "; residuals " + fmt_num(errs[0]) + ", " + fmt_num(errs[1]) + ", " +
                       fmt_num(errs[2]));
}

inline void check_mild_identity(const SuiteContext& ctx) {
    const int m = ctx.cfg.components;
    GeneratorOptions g{ctx.opts, ctx.cfg.laplacian, ctx.cfg.space, ctx.window};
    const double coarse = mild_identity_residual(fields::gaussian(ctx.grid, 1.0, m), 1.0, 256, g);
    ctx.report.add("mild_identity{t=1;steps=256}", "Delta int_0^t G(s)f ds = G(t)f - f", coarse,
                   ctx.cfg.tolerance("mild_identity"));
    const Grid fine_grid(ctx.cfg.n, ctx.cfg.L, 2 * ctx.cfg.N - 1);
    const double fine = mild_identity_residual(fields::gaussian(fine_grid, 1.0, m), 1.0, 512, g);
    ctx.report.add("mild_refinement{steps=256->512;h->h/2}", "Delta int_0^t G(s)f ds = G(t)f - f", fine / coarse,
                   ctx.cfg.tolerance("mild_refinement"), "residuals " + fmt_num(coarse) + " -> " + fmt_num(fine));
}

inline void check_operator_bound(const SuiteContext& ctx) {
    ApplyOptions o = ctx.opts;
    o.method = Method::quadrature;
    for (const auto& z : ctx.cfg.bound_zetas) {
        std::vector<Field> outputs, inputs;
        for (int i = 0; i < ctx.cfg.bound_fields; ++i) {
            const std::uint64_t salt = 1000 + static_cast<std::uint64_t>(i);
            inputs.push_back(i % 2 == 0 ? ctx.bumps(salt) : fields::random_noise(ctx.grid, ctx.cfg.seed + salt, ctx.cfg.components));
            outputs.push_back(apply(z, inputs.back(), o));
        }
        for (double k : ctx.cfg.bound_weights) {
            const double M = operator_bound(z, k, ctx.grid);
            const SpaceSpec s = ctx.space(k);
            double excess = 0.0;
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                excess = std::max(excess, weighted_norm(outputs[i], s) - M * weighted_norm(inputs[i], s) * (1.0 + 1e-8));
            }
            ctx.report.add("operator_bound{zeta=" + fmt_time(z) + ";k=" + fmt_num(k) + "}",
                           "||chi_zeta * f||_wX <= ||w chi_zeta||_L1 ||f||_wX", std::max(0.0, excess),
                           ctx.cfg.tolerance("operator_bound"),
                           "M_k=" + fmt_num(M) + " over " + std::to_string(ctx.cfg.bound_fields) + " fields");
        }
    }
}

inline void check_classical(const SuiteContext& ctx) {
    auto residual = [&](const Grid& g, double dt) {
        std::vector<double> times;
        const int count = static_cast<int>(std::lround(1.0 / dt));
        for (int i = 0; i <= count; ++i) times.push_back(0.5 + i * dt);
        const auto traj = trajectory(fields::gaussian(g, 1.0, ctx.cfg.components), times, ctx.opts);
        return classical_residual(traj, ctx.cfg.laplacian, ctx.window);
    };
    const double coarse = residual(ctx.grid, 1e-2);
    const double fine = residual(Grid(ctx.cfg.n, ctx.cfg.L, 2 * ctx.cfg.N - 1), 5e-3);
    ctx.report.add("classical_refinement{t=0.5..1.5;dt=1e-2->5e-3;h->h/2}", "du/dt = Delta u pointwise", fine / coarse,
                   ctx.cfg.tolerance("classical_refinement"), "residuals " + fmt_num(coarse) + " -> " + fmt_num(fine));
}

}  // namespace detail

/**
 * Runs every enabled check in registration order. A check that throws is
 * recorded as a failure with infinite residual; the suite continues.
 */
inline VerificationReport run_suite(const SuiteConfig& cfg) {
    detail::validate(cfg);
    VerificationReport report;
    const detail::SuiteContext ctx{cfg, cfg.grid(), cfg.apply_options(), Window(cfg.margin), report};
    using CheckFn = void (*)(const detail::SuiteContext&);
    const std::vector<std::pair<std::string, CheckFn>> registry = {
        {"weight_inequality", detail::check_weight_inequality},
        {"kernel_mass", detail::check_kernel_mass},
        {"fourier_symbol", detail::check_fourier_symbol},
        {"gaussian_closed_form", detail::check_gaussian_closed_form},
        {"semigroup_law", detail::check_semigroup_law},
        {"path_equivalence", detail::check_path_equivalence},
        {"continuity", detail::check_continuity},
        {"holomorphy", detail::check_holomorphy},
        {"generator", detail::check_generator},
        {"mild_identity", detail::check_mild_identity},
        {"operator_bound", detail::check_operator_bound},
        {"classical", detail::check_classical},
    };
    for (const auto& [name, fn] : registry) {
        bool enabled = false;
        for (const auto& c : cfg.checks) enabled = enabled || c == name;
        if (!enabled) continue;
        try {
            fn(ctx);
        } catch (const std::exception& e) {
            report.add(CheckResult{name, "check aborted", std::numeric_limits<double>::infinity(), 0.0, false,
                                   std::string("error: ") + e.what(), 0.0});
        }
    }
    return report;
}

}  // namespace heatsg
