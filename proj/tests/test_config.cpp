#include "catch_amalgamated.hpp"

#include <sstream>

#include "heatsg/config.hpp"

using namespace heatsg;
using Catch::Approx;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream is(text);
    return RunConfig::parse(is);
}

int error_line(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("complex literals") {
    CHECK(parse_complex("1+1i") == cplx(1.0, 1.0));
    CHECK(parse_complex("0.5-2i") == cplx(0.5, -2.0));
    CHECK(parse_complex("3") == cplx(3.0, 0.0));
    CHECK(parse_complex("-2i") == cplx(0.0, -2.0));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("1e-3+2e+1i") == cplx(1e-3, 20.0));
    CHECK(parse_complex(" 1-i ") == cplx(1.0, -1.0));
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+xi"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("one"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("nan"), std::invalid_argument);
}

TEST_CASE("real lists") {
    CHECK(parse_real_list("0.1, 1,5") == std::vector<double>{0.1, 1.0, 5.0});
    CHECK(parse_real_list("  ").empty());
    CHECK_THROWS_AS(parse_real_list("1,,2"), std::invalid_argument);
}

TEST_CASE("defaults describe the reference run") {
    const RunConfig cfg;
    const Grid g = cfg.grid();
    CHECK(g.dim() == 1);
    CHECK(g.half_extent() == 12.0);
    CHECK(g.points_per_axis() == 1025);
    const SuiteConfig s = cfg.suite();
    CHECK(s.checks == all_check_names());
    CHECK(s.alpha == Approx(5 * std::numbers::pi / 12));
    CHECK(s.seed == 20240601u);
    CHECK(s.tolerance("semigroup_law") == 1e-5);
}

TEST_CASE("parsing values, comments and overrides") {
    const RunConfig cfg = parse(
        "# reference in two dimensions\n"
        "grid.n = 2\n"
        "grid.L = 8   # half extent\n"
        "\n"
        "grid.N = 257\n"
        "space.kind = Lp\n"
        "space.p = 2\n"
        "space.k = 1.5\n"
        "checks = kernel_mass, semigroup_law\n"
        "tol.semigroup_law = 1e-6\n");
    CHECK(cfg.grid().dim() == 2);
    CHECK(cfg.grid().points_per_axis() == 257);
    CHECK(cfg.space().kind() == SpaceKind::Lp);
    CHECK(cfg.space().weight().exponent() == 1.5);
    const SuiteConfig s = cfg.suite();
    CHECK(s.checks == std::vector<std::string>{"kernel_mass", "semigroup_law"});
    CHECK(s.tolerance("semigroup_law") == 1e-6);
}

TEST_CASE("errors carry the line number") {
    CHECK(error_line("grid.n = 1\nbogus.key = 3\n") == 2);
    CHECK(error_line("grid.n = 1\n\n# c\ngrid.N = many\n") == 4);
    CHECK(error_line("grid.n = 1.5\n") == 1);
    CHECK(error_line("grid.L\n") == 1);
    CHECK(error_line("tol.nothing = 1\n") == 1);
    CHECK(error_line("suite.closed_form_times = 1, x\n") == 1);
    CHECK(error_line("grid.L = inf\n") == 1);
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("set validates against the schema") {
    RunConfig cfg;
    CHECK_THROWS_AS(cfg.set("grid.Q", "1"), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get("grid.Q"), std::invalid_argument);
    cfg.set("evolve.times", "0, 0.5");
    CHECK(cfg.reals("evolve.times") == std::vector<double>{0.0, 0.5});
}

TEST_CASE("serialized configs reproduce themselves") {
    RunConfig cfg = parse("grid.L = 6.25\nseed = 7\nfield.rule = bumps\ntol.contour = 3e-9\n");
    std::ostringstream first;
    cfg.serialize(first);
    const RunConfig back = parse(first.str());
    std::ostringstream second;
    back.serialize(second);
    CHECK(first.str() == second.str());
    CHECK(back.real("grid.L") == 6.25);
    CHECK(back.integer("seed") == 7);
    CHECK(back.get("field.rule") == "bumps");
    CHECK(back.suite().tolerance("contour") == 3e-9);
    // Every effective key is written, tolerances included.
    CHECK(first.str().find("tol.operator_bound = ") != std::string::npos);
    CHECK(first.str().find("sector.alpha = ") != std::string::npos);
}

TEST_CASE("formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 5 * std::numbers::pi / 12, 1e-300}) {
        CHECK(std::stod(RunConfig::format(v)) == v);
    }
}
