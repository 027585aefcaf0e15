#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heatsg/fields.hpp"
#include "heatsg/semigroup.hpp"

using namespace heatsg;
using Catch::Approx;
using std::numbers::pi;

namespace {

const Grid ref(1, 12.0, 1025);
const Window mid(0.25);

double interior_diff(const Field& a, const Field& b) { return weighted_norm(a - b, SpaceSpec::buc(0.0), mid); }

cplx quad(const std::function<cplx(double)>& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double re = GK::integrate([&](double y) { return f(y).real(); }, a, b, 20, 1e-14);
    const double im = GK::integrate([&](double y) { return f(y).imag(); }, a, b, 20, 1e-14);
    return {re, im};
}

}  // namespace

TEST_CASE("method names") {
    CHECK(parse_method("quadrature") == Method::quadrature);
    CHECK(parse_method("spectral") == Method::spectral);
    CHECK(parse_method("automatic") == Method::automatic);
    CHECK_THROWS_AS(parse_method("euler"), std::invalid_argument);
    CHECK(to_string(Method::spectral) == "spectral");
    CHECK(resolve_method(ComplexTime(1.0), {}) == Method::spectral);
    CHECK(resolve_method(ComplexTime(1.0, 0.5), {}) == Method::quadrature);
}

TEST_CASE("zero time is the identity") {
    const Field f = fields::random_noise(ref, 4, 2);
    CHECK(apply(ComplexTime(0.0), f) == f);
    CHECK(apply(ComplexTime(0.0), f, Method::quadrature) == f);
}

TEST_CASE("gaussian closed form agrees with direct integration") {
    const Grid g(1, 2.0, 5);  // nodes -2..2
    for (const cplx z : {cplx(0.5, 0.0), cplx(1.0, 1.0), cplx(0.2, -0.6)}) {
        const Field closed = fields::gaussian_evolved(g, z);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.coordinate(static_cast<int>(i));
            const cplx integral = quad(
                [&](double y) { return kernel_factor(ComplexTime(z), x - y) * std::exp(-y * y); }, -40.0, 40.0);
            CHECK(std::abs(closed.values()[i] - integral) < 1e-12);
        }
    }
}

TEST_CASE("both paths reproduce the gaussian closed form") {
    const Field f = fields::gaussian(ref);
    for (double t : {0.1, 1.0, 5.0}) {
        CHECK(interior_diff(apply(ComplexTime(t), f, Method::spectral), fields::gaussian_evolved(ref, t)) <= 1e-6);
    }
    for (double t : {0.1, 1.0}) {
        CHECK(interior_diff(apply(ComplexTime(t), f, Method::quadrature), fields::gaussian_evolved(ref, t)) <= 1e-6);
    }
    for (const cplx z : {cplx(1.0, 1.0), std::polar(0.5, pi / 3)}) {
        for (Method m : {Method::quadrature, Method::spectral}) {
            CHECK(interior_diff(apply(ComplexTime(z), f, m), fields::gaussian_evolved(ref, z)) <= 1e-6);
        }
    }
}

TEST_CASE("separable quadrature equals the full direct sum") {
    const Grid g(2, 3.0, 21);
    const Field f = fields::random_noise(g, 9, 2);
    const ComplexTime z(0.4, 0.3);
    const Field got = apply(z, f, Method::quadrature);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.point(i);
        for (int c = 0; c < 2; ++c) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j) {
                const auto y = g.point(j);
                const std::vector<double> d = {x[0] - y[0], x[1] - y[1]};
                acc += kernel_eval(z, d) * f.at(j)[static_cast<std::size_t>(c)];
            }
            acc *= g.cell_volume();
            worst = std::max(worst, std::abs(acc - got.at(i)[static_cast<std::size_t>(c)]));
        }
    }
    CHECK(worst <= 1e-13 * f.sup_modulus());
}

TEST_CASE("constants are fixed points") {
    const Field one = fields::constant(ref, cplx(2.0, -1.0));
    // Periodic multiplier: only the zero frequency is present.
    CHECK(interior_diff(apply(ComplexTime(1.0), one, Method::spectral), one) <= 1e-12);
    // Zero-filled quadrature: exact up to the kernel mass outside the window gap.
    CHECK(interior_diff(apply(ComplexTime(0.25), one, Method::quadrature), one) <= 1e-10);
}

TEST_CASE("real-time evolution preserves positivity and the maximum principle") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Field f = fields::random_bumps(ref, seed);
        for (auto& v : f.values()) v = std::abs(v);
        const Field u = apply(ComplexTime(0.3), f, Method::quadrature);
        double sup_f = 0.0;
        for (const auto& v : f.values()) sup_f = std::max(sup_f, v.real());
        for (const auto& v : u.values()) {
            REQUIRE(v.real() >= 0.0);
            REQUIRE(v.real() <= sup_f * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("time derivative of the action") {
    const ComplexTime s(0.5), z(0.5, 0.25);
    const Field chi = fields::kernel(ref, s);
    // chi_z * chi_s = chi_{z+s}, so the derivative is chi'_{z+s}.
    CHECK(interior_diff(apply_dzeta(z, chi), fields::kernel_dzeta(ref, ComplexTime(z.value() + s.value()))) <= 1e-8);
    const Field f = fields::random_bumps(ref, 3);
    const double h = 1e-3;
    const Field fd = (apply(ComplexTime(z.value() + h), f, Method::quadrature) -
                      apply(ComplexTime(z.value() - h), f, Method::quadrature)) *
                     cplx(1.0 / (2.0 * h));
    CHECK(interior_diff(fd, apply_dzeta(z, f)) <= 1e-4 * f.sup_modulus());
    CHECK_THROWS_AS(apply_dzeta(ComplexTime(0.0), f), std::invalid_argument);
}

TEST_CASE("operator bound values") {
    CHECK(operator_bound(ComplexTime(1.0), 0.0, ref) == Approx(1.0).epsilon(1e-10));
    const double theta = pi / 4;
    CHECK(operator_bound(ComplexTime::polar(1.0, theta), 0.0, ref) == Approx(std::pow(std::cos(theta), -0.5)).epsilon(1e-9));
    // int (1+|y|)^2 chi_1(y) dy = 3 + 4/sqrt(pi); the kink at 0 limits the lattice sum to O(h^2).
    CHECK(operator_bound(ComplexTime(1.0), 2.0, ref) == Approx(3.0 + 4.0 / std::sqrt(pi)).epsilon(2e-5));
    CHECK(operator_bound(ComplexTime(1.0), 2.0, ref) > operator_bound(ComplexTime(1.0), 1.0, ref));
}

TEST_CASE("operator bound holds on random inputs") {
    const Grid g(1, 6.0, 257);
    for (double k : {0.0, 1.5}) {
        const ComplexTime z = ComplexTime::polar(0.7, pi / 5);
        const double M = operator_bound(z, k, g);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Field f = fields::random_noise(g, seed);
            const SpaceSpec s = SpaceSpec::buc(k);
            CHECK(weighted_norm(apply(z, f, Method::quadrature), s) <= M * weighted_norm(f, s) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("semigroup law on a complex pair") {
    const Field f = fields::random_bumps(ref, 21, 2);
    const ComplexTime a = ComplexTime::polar(0.5, pi / 4), b = ComplexTime::polar(0.5, -pi / 4);
    for (Method m : {Method::quadrature, Method::spectral}) {
        const Field joint = apply(a + b, f, m);
        const Field comp = apply(a, apply(b, f, m), m);
        CHECK(interior_diff(joint, comp) <= 1e-10 * joint.sup_modulus());
    }
}

TEST_CASE("trajectory states match single applications") {
    const Field f = fields::gaussian(ref);
    const std::vector<double> times = {0.0, 0.5, 1.0, 2.0};
    const auto traj = trajectory(f, times);
    REQUIRE(traj.states.size() == times.size());
    CHECK(traj.states[0] == f);
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(traj.states[i] == apply(ComplexTime(times[i]), f));
    const auto par = trajectory(f, times, {}, true);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(par.states[i] == traj.states[i]);
    CHECK_THROWS_AS(trajectory(f, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(trajectory(f, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(trajectory(f, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("provenance records method and truncation budget") {
    Provenance p;
    (void)apply(ComplexTime(0.1), fields::gaussian(ref), {}, &p);
    CHECK(p.method == Method::spectral);
    CHECK(p.warnings.empty());
    CHECK(p.truncation_budget <= 1e-10);

    const Grid small(1, 2.0, 65);
    (void)apply(ComplexTime(1.0, 0.5), fields::constant(small, 1.0), {}, &p);
    CHECK(p.method == Method::quadrature);
    CHECK(p.truncation_budget > 1e-10);
    REQUIRE(p.warnings.size() == 1);
    CHECK(p.warnings[0].find("truncation budget") != std::string::npos);
}
