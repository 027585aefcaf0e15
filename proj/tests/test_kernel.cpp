#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "heatsg/kernel.hpp"

using namespace heatsg;
using Catch::Approx;
using std::numbers::pi;

namespace {

cplx kernel_50(cplx zeta, double x) {
    using boost::multiprecision::cpp_complex_50;
    using real50 = boost::multiprecision::cpp_bin_float_50;
    const real50 pi50 = boost::math::constants::pi<real50>();
    const cpp_complex_50 z(zeta.real(), zeta.imag());
    const cpp_complex_50 v = exp(-real50(x) * real50(x) / (real50(4) * z)) / sqrt(real50(4) * pi50 * z);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace

TEST_CASE("kernel at the unit-mass time") {
    const std::vector<double> origin = {0.0};
    CHECK(kernel_eval(ComplexTime(1.0 / (4.0 * pi)), origin).real() == Approx(1.0).epsilon(1e-15));
    const std::vector<double> origin3 = {0.0, 0.0, 0.0};
    CHECK(std::abs(kernel_eval(ComplexTime(1.0 / (4.0 * pi)), origin3) - 1.0) < 1e-14);
}

TEST_CASE("kernel agrees with a 50-digit evaluation") {
    const std::vector<std::pair<cplx, double>> cases = {
        {{1.0, 1.0}, 2.0}, {{0.3, -0.5}, 0.7}, {{2.0, 0.0}, 3.0}, {{0.1, 1.2}, -1.5}, {{5.0, 4.0}, 6.0}};
    for (const auto& [z, x] : cases) {
        const std::vector<double> pt = {x};
        const cplx got = kernel_eval(ComplexTime(z), pt);
        const cplx want = kernel_50(z, x);
        CHECK(std::abs(got - want) <= 1e-14 * std::abs(want));
    }
}

TEST_CASE("kernel modulus formula") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(0.05, 3.0), im(-3.0, 3.0), coord(-4.0, 4.0);
    for (int trial = 0; trial < 500; ++trial) {
        const cplx z(re(rng), im(rng));
        const int n = 1 + trial % 3;
        std::vector<double> x(n);
        double r2 = 0.0;
        for (auto& v : x) {
            v = coord(rng);
            r2 += v * v;
        }
        const double want = std::pow(4.0 * pi * std::abs(z), -0.5 * n) * std::exp(-r2 * (1.0 / (4.0 * z)).real());
        const double got = std::abs(kernel_eval(ComplexTime(z), x));
        REQUIRE(std::abs(got - want) <= 1e-13 * want);
    }
}

TEST_CASE("kernel is a product of one-dimensional factors") {
    const ComplexTime z(0.7, -0.4);
    const std::vector<double> x = {0.3, -1.1, 2.0};
    const cplx prod = kernel_factor(z, x[0]) * kernel_factor(z, x[1]) * kernel_factor(z, x[2]);
    CHECK(std::abs(kernel_eval(z, x) - prod) <= 1e-15 * std::abs(prod));
}

TEST_CASE("kernel rejects the left half-plane and dimension mismatch") {
    CHECK_THROWS_AS(ComplexTime(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ComplexTime(0.0, 1.0), std::invalid_argument);
    const std::vector<double> x = {0.0, 1.0};
    CHECK_THROWS_AS(kernel_eval(ComplexTime(0.0), x), std::invalid_argument);
    CHECK_THROWS_AS(kernel_eval(ComplexTime(1.0), x, 3), std::invalid_argument);
}

TEST_CASE("time derivative vanishes where |x|^2 = 2 n t") {
    const std::vector<double> x = {std::sqrt(2.0)};
    CHECK(std::abs(kernel_dzeta(ComplexTime(1.0), x)) < 1e-16);
    const std::vector<double> x2 = {1.0, 1.0};  // |x|^2 = 2 = 2 * 2 * 0.5
    CHECK(std::abs(kernel_dzeta(ComplexTime(0.5), x2)) < 1e-16);
}

TEST_CASE("time derivative matches central differences in both directions") {
    const ComplexTime z(0.8, 0.5);
    const std::vector<double> x = {0.6, -1.3};
    const cplx exact = kernel_dzeta(z, x);
    for (const cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
        auto err = [&](double h) {
            const cplx d = (kernel_eval(ComplexTime(z.value() + h * dir), x) - kernel_eval(ComplexTime(z.value() - h * dir), x)) /
                           (2.0 * h * dir);
            return std::abs(d - exact);
        };
        const double ratio = err(1e-2) / err(5e-3);
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
    }
}

TEST_CASE("time derivative equals the spatial Laplacian") {
    const ComplexTime z(0.5, -0.3);
    const double h = 1e-3;
    for (double x0 : {-1.2, 0.0, 0.4, 2.5}) {
        const std::vector<double> xm = {x0 - h}, x = {x0}, xp = {x0 + h};
        const cplx lap = (kernel_eval(z, xp) - 2.0 * kernel_eval(z, x) + kernel_eval(z, xm)) / (h * h);
        CHECK(std::abs(lap - kernel_dzeta(z, x)) < 1e-5);
        CHECK(std::abs(kernel_factor_dss(z, x0) - kernel_dzeta(z, x)) < 1e-13);
    }
}

TEST_CASE("kernel mass on the reference lattice") {
    const Grid g(1, 12.0, 1025);
    for (double t : {0.25, 1.0}) CHECK(std::abs(kernel_mass(ComplexTime(t), g) - 1.0) <= 1e-8);
    for (const ComplexTime& z : {ComplexTime::polar(1.0, pi / 4), ComplexTime::polar(1.0, -pi / 4), ComplexTime::polar(0.5, pi / 3)}) {
        CHECK(std::abs(kernel_mass(z, g) - 1.0) <= 1e-6);
    }
    const Grid g2(2, 12.0, 193);
    CHECK(std::abs(kernel_mass(ComplexTime(1.0), g2) - 1.0) <= 1e-8);
    CHECK(std::abs(kernel_mass(ComplexTime::polar(1.0, pi / 4), g2) - 1.0) <= 1e-6);
}

TEST_CASE("weighted kernel mass with k = 0 is the absolute mass") {
    const Grid g(1, 12.0, 1025);
    CHECK(weighted_kernel_mass(ComplexTime(1.0), 0.0, g) == Approx(1.0).epsilon(1e-10));
    // int |chi_zeta| = (cos arg zeta)^{-1/2} in one dimension.
    const ComplexTime z = ComplexTime::polar(1.0, pi / 4);
    CHECK(weighted_kernel_mass(z, 0.0, g) == Approx(std::pow(std::cos(pi / 4), -0.5)).epsilon(1e-9));
    // (1+|x|) moment of the real kernel: 1 + 2 sqrt(t/pi). |x| has a kink at 0,
    // so the lattice sum is only second order in h.
    CHECK(weighted_kernel_mass(ComplexTime(1.0), 1.0, g) == Approx(1.0 + 2.0 / std::sqrt(pi)).epsilon(2e-5));
}

TEST_CASE("fourier symbol values") {
    const std::vector<double> zero = {0.0, 0.0};
    CHECK(kernel_fourier(ComplexTime(1.0, 1.0), zero) == cplx(1.0, 0.0));
    const std::vector<double> xi = {1.0};
    CHECK(std::abs(kernel_fourier(ComplexTime(1.0), xi) - std::exp(-1.0)) < 1e-16);
    CHECK(std::abs(kernel_fourier(ComplexTime(1.0, 1.0), xi) - std::exp(cplx(-1.0, -1.0))) < 1e-16);
}

TEST_CASE("tail bound basics") {
    const ComplexTime z = ComplexTime::polar(1.0, pi / 4);
    CHECK(kernel_tail_bound(z, pi / 3, 0.0, 1) >= 1.0);
    CHECK(kernel_tail_bound(ComplexTime(1.0), pi / 3, 0.0, 2) == Approx(1.0));
    double prev = INFINITY;
    for (double R = 0.0; R <= 20.0; R += 0.5) {
        const double b = kernel_tail_bound(z, pi / 3, R, 2);
        CHECK(b <= prev);
        prev = b;
    }
    CHECK_THROWS_AS(kernel_tail_bound(ComplexTime::polar(1.0, 1.2), pi / 3, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(kernel_tail_bound(z, pi / 2, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(kernel_tail_bound(z, pi / 3, -1.0, 1), std::invalid_argument);
}

TEST_CASE("tail bound is tight at the sector edge") {
    const double alpha = pi / 3;
    for (double R : {1.0, 3.0, 6.0}) {
        const ComplexTime z = ComplexTime::polar(1.5, alpha * (1.0 - 1e-9));
        boost::math::quadrature::exp_sinh<double> integrator;
        const double tail =
            2.0 * integrator.integrate([&](double s) { return std::abs(kernel_factor(z, R + s)); });
        const double bound = kernel_tail_bound(z, alpha, R, 1);
        CHECK(bound >= tail * (1.0 - 1e-9));
        CHECK(bound <= tail * 1.01);
    }
    // Two dimensions, real time: the tail is exactly exp(-R^2 / 4t).
    CHECK(kernel_tail_bound(ComplexTime(2.0), alpha, 3.0, 2) == Approx(std::exp(-9.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("weighted tail bound dominates the weighted tail") {
    const ComplexTime z = ComplexTime::polar(1.0, pi / 5);
    boost::math::quadrature::exp_sinh<double> integrator;
    for (double k : {1.0, 2.0}) {
        for (double R : {2.0, 5.0}) {
            const double tail = 2.0 * integrator.integrate([&](double s) {
                return std::pow(1.0 + R + s, k) * std::abs(kernel_factor(z, R + s));
            });
            CHECK(weighted_kernel_tail_bound(z, pi / 3, R, 1, k) >= tail);
        }
    }
}

TEST_CASE("truncation radius meets the tolerance") {
    const ComplexTime z = ComplexTime::polar(1.0, pi / 4);
    const double R = truncation_radius(z, pi / 3, 1, 1e-10);
    CHECK(kernel_tail_bound(z, pi / 3, R, 1) <= 1e-10);
    CHECK(kernel_tail_bound(z, pi / 3, 0.99 * R, 1) > 1e-10);
    const Grid g = grid_for_kernel(ComplexTime(4.0), pi / 3, 1, 0.0234375, 1e-10, 12.0);
    CHECK(g.half_extent() > 12.0);
    CHECK(g.spacing() <= 0.0234375);
    CHECK(std::abs(kernel_mass(ComplexTime(4.0), g) - 1.0) <= 1e-8);
}
