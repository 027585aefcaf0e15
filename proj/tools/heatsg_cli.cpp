// heatsg: evolve fields under the complex-time heat semigroup, run the
// verification suite, and emit convergence tables.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatsg/heatsg.hpp"

namespace fs = std::filesystem;
using namespace heatsg;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

Field initial_field(const RunConfig& cfg) {
    const std::string input = cfg.get("field.input");
    if (!input.empty()) return read_field_csv(fs::path(input));
    const Grid g = cfg.grid();
    const int m = static_cast<int>(cfg.integer("field.components"));
    const std::string rule = cfg.get("field.rule");
    const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
    if (rule == "gaussian") return fields::gaussian(g, cfg.real("field.width"), m);
    if (rule == "kernel") return fields::kernel(g, ComplexTime(cfg.real("field.s")));
    if (rule == "bumps") return fields::random_bumps(g, seed, m, fields::boundary_negligible_bumps(g));
    if (rule == "lipschitz_bumps") return fields::random_bumps(g, seed, m, fields::lipschitz_bumps(g));
    if (rule == "tent") return fields::tent(g, cfg.real("field.width"));
    if (rule == "cosine") return fields::cosine(g, cfg.real("field.width"));
    if (rule == "constant") return fields::constant(g, cfg.real("field.value"), m);
    if (rule == "noise") return fields::random_noise(g, seed, m);
    throw ConfigError("unknown field.rule '" + rule + "'");
}

void write_provenance(const fs::path& out, const RunConfig& cfg) {
    fs::create_directories(out);
    std::ofstream os(out / "run.cfg");
    cfg.serialize(os);
}

ApplyOptions apply_options(const RunConfig& cfg) {
    ApplyOptions o = cfg.suite().apply_options();
    o.method = parse_method(cfg.get("evolve.method"));
    return o;
}

int run_evolve(const RunConfig& cfg, const fs::path& out) {
    write_provenance(out, cfg);
    const Field f = initial_field(cfg);
    const ApplyOptions opts = apply_options(cfg);
    const auto times = cfg.reals("evolve.times");
    if (!times.empty()) {
        write_trajectory(out, trajectory(f, times, opts));
        return 0;
    }
    const ComplexTime zeta(cplx(cfg.real("evolve.zeta.re"), cfg.real("evolve.zeta.im")));
    Provenance prov;
    const Field u = apply(zeta, f, opts, &prov);
    write_field_csv(out / "initial.csv", f);
    write_field_csv(out / "evolved.csv", u);
    for (const auto& w : prov.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}

int run_verify(const RunConfig& cfg, const fs::path& out) {
    write_provenance(out, cfg);
    const VerificationReport report = run_suite(cfg.suite());
    std::ofstream(out / "report.csv") << report.to_csv();
    const std::string text = report.to_text();
    std::ofstream(out / "report.txt") << text;
    std::cout << text;
    return report.all_pass() ? 0 : kExitFailure;
}

int run_table(const RunConfig& cfg, const fs::path& out) {
    write_provenance(out, cfg);
    const std::string check = cfg.get("table.check");
    const SuiteConfig suite = cfg.suite();
    const ApplyOptions opts = suite.apply_options();
    std::ofstream os(out / (check + ".csv"));
    if (check == "continuity") {
        std::vector<double> radii;
        for (int j = 1; j <= suite.continuity_levels; ++j) radii.push_back(std::ldexp(1.0, -j));
        const auto rows = continuity_scan(initial_field(cfg), suite.space, suite.alpha, suite.continuity_rays, radii, opts);
        os << "ray,radius,residual\n";
        for (const auto& r : rows) {
            os << RunConfig::format(r.ray) << ',' << RunConfig::format(r.radius) << ',' << RunConfig::format(r.residual) << '\n';
        }
    } else if (check == "generator") {
        const Field f = initial_field(cfg);
        GeneratorOptions g{opts, suite.laplacian, suite.space, Window(suite.margin)};
        os << "dt,r1,r2,r3\n";
        for (double dt : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
            const auto r = generator_residuals(f, 0.5, dt, g);
            os << RunConfig::format(dt) << ',' << RunConfig::format(r.r1) << ',' << RunConfig::format(r.r2) << ','
               << RunConfig::format(r.r3) << '\n';
        }
    } else if (check == "mild") {
        RunConfig level = cfg;
        GeneratorOptions g{opts, suite.laplacian, suite.space, Window(suite.margin)};
        os << "steps,N,residual\n";
        const int N0 = suite.N;
        for (int j = 0; j < 4; ++j) {
            const int div = 1 << (3 - j);
            const int N = (N0 - 1) % div == 0 ? (N0 - 1) / div + 1 : N0;
            const int steps = 64 << j;
            level.set("grid.N", std::to_string(N));
            const double r = mild_identity_residual(initial_field(level), 1.0, steps, g);
            os << steps << ',' << N << ',' << RunConfig::format(r) << '\n';
        }
    } else {
        throw ConfigError("unknown table check '" + check + "' (expected continuity, generator or mild)");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complex-time heat semigroup on weighted spaces: evolve, verify, tabulate"};
    app.require_subcommand(1);

    std::string config_path, out_dir, zeta_text, times_text, method, check;

    auto* evolve = app.add_subcommand("evolve", "Apply G(zeta) or compute a trajectory");
    evolve->add_option("--config", config_path, "Config file")->required();
    auto* zeta_opt = evolve->add_option("--zeta", zeta_text, "Complex time a+bi");
    auto* times_opt = evolve->add_option("--times", times_text, "Comma-separated real times");
    zeta_opt->excludes(times_opt);
    evolve->add_option("--method", method, "quadrature | spectral | automatic");
    evolve->add_option("--out", out_dir, "Output directory")->required();

    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--config", config_path, "Config file")->required();
    verify->add_option("--out", out_dir, "Output directory")->required();

    auto* table = app.add_subcommand("table", "Write a refinement or scan table");
    table->add_option("--config", config_path, "Config file")->required();
    table->add_option("--check", check, "continuity | generator | mild (default: table.check)");
    table->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        cfg = RunConfig::load(config_path);
        if (!zeta_text.empty()) {
            const cplx z = parse_complex(zeta_text);
            cfg.set("evolve.zeta.re", RunConfig::format(z.real()));
            cfg.set("evolve.zeta.im", RunConfig::format(z.imag()));
            cfg.set("evolve.times", "");
        }
        if (!times_text.empty()) cfg.set("evolve.times", times_text);
        if (!method.empty()) cfg.set("evolve.method", method);
        if (!check.empty()) cfg.set("table.check", check);
        (void)cfg.suite();
        (void)parse_method(cfg.get("evolve.method"));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*evolve) return run_evolve(cfg, out_dir);
        if (*verify) return run_verify(cfg, out_dir);
        return run_table(cfg, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
