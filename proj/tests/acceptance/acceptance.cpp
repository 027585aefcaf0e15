// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Criteria aggregate the reference suite (n = 1), the two-dimensional spot
// suite, and a deliberately broken multiplier that must be caught.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "heatsg/heatsg.hpp"

using namespace heatsg;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> prefixes;
    bool include_2d;
};

bool matches(const std::string& name, const std::vector<std::string>& prefixes) {
    return std::any_of(prefixes.begin(), prefixes.end(), [&](const std::string& p) { return name.rfind(p, 0) == 0; });
}

std::string group_of(const std::string& name) { return name.substr(0, name.find('{')); }

SuiteConfig spot_2d() {
    SuiteConfig cfg;
    cfg.n = 2;
    cfg.L = 8.0;
    cfg.N = 257;
    cfg.checks = {"kernel_mass", "fourier_symbol", "gaussian_closed_form", "semigroup_law", "path_equivalence"};
    cfg.closed_form_times = {0.1, 1.0};
    return cfg;
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    const VerificationReport ref = run_suite(SuiteConfig{});
    const VerificationReport two = run_suite(spot_2d());

    SuiteConfig broken;
    broken.symbol = [](cplx z, double xi_sq) { return std::exp(-2.0 * z * xi_sq); };
    const VerificationReport mutated = run_suite(broken);

    const double seconds = std::chrono::duration<double>(clock::now() - start).count();

    const std::vector<Criterion> criteria = {
        {1, "kernel mass", {"kernel_mass"}, true},
        {2, "Fourier symbol", {"fourier_symbol"}, true},
        {3, "semigroup law", {"semigroup_law"}, true},
        {4, "Gaussian closed form", {"gaussian_closed_form", "kernel_convolution"}, true},
        {5, "sector continuity", {"continuity"}, false},
        {6, "holomorphy", {"holomorphy", "contour"}, false},
        {7, "generator identities", {"generator", "difference_quotient"}, false},
        {8, "mild identity", {"mild_"}, false},
        {9, "path equivalence", {"path_equivalence"}, true},
        {10, "operator bound", {"operator_bound"}, false},
        {11, "classical solution", {"classical"}, false},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::size_t total = 0, passed = 0;
        double worst = 0.0;
        std::string worst_name;
        auto scan = [&](const VerificationReport& rep) {
            for (const auto& chk : rep.checks()) {
                if (!matches(chk.name, c.prefixes)) continue;
                ++total;
                passed += chk.pass ? 1 : 0;
                const double share = chk.tolerance > 0.0 ? chk.residual / chk.tolerance : INFINITY;
                if (worst_name.empty() || share > worst) {
                    worst = share;
                    worst_name = chk.name;
                }
            }
        };
        scan(ref);
        if (c.include_2d) scan(two);
        const bool ok = total > 0 && passed == total;
        failed += ok ? 0 : 1;
        std::printf("criterion %2d %-22s %s  (%zu/%zu checks; worst residual/tolerance %.3g at %s)\n", c.id, c.title.c_str(),
                    ok ? "PASS" : "FAIL", passed, total, worst, worst_name.c_str());
    }

    std::set<std::string> caught;
    for (const auto& chk : mutated.checks()) {
        if (!chk.pass) caught.insert(group_of(chk.name));
    }
    const bool mutation_ok = mutated.failures() >= 2;
    failed += mutation_ok ? 0 : 1;
    std::string list;
    for (const auto& g : caught) list += (list.empty() ? "" : ", ") + g;
    std::printf("criterion 12 %-22s %s  (%zu failing checks under exp(-2 zeta |xi|^2): %s)\n", "mutation sensitivity",
                mutation_ok ? "PASS" : "FAIL", mutated.failures(), list.c_str());

    std::size_t other = 0;
    for (const auto& chk : ref.checks()) {
        bool claimed = false;
        for (const auto& c : criteria) claimed = claimed || matches(chk.name, c.prefixes);
        if (!claimed && !chk.pass) ++other;
    }
    std::printf("reference suite: %zu/%zu checks passed; 2-d spot suite: %zu/%zu; %zu unassigned failures; %.1f s\n",
                ref.checks().size() - ref.failures(), ref.checks().size(), two.checks().size() - two.failures(),
                two.checks().size(), other, seconds);
    std::printf("%s\n", failed == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
    return failed == 0 && other == 0 ? 0 : 1;
}
