#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsg/field.hpp"
#include "heatsg/grid.hpp"

namespace heatsg {

/// Polynomial weight w_k(x) = (1 + |x|)^k, k >= 0.
class Weight {
public:
    explicit Weight(double k = 0.0) : k_(k) {
        if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("weight exponent must be finite and >= 0");
    }

    double exponent() const { return k_; }

    double operator()(std::span<const double> x) const {
        double s = 0.0;
        for (double v : x) s += v * v;
        return radial(std::sqrt(s));
    }

    double radial(double r) const { return k_ == 0.0 ? 1.0 : std::pow(1.0 + r, k_); }

private:
    double k_;
};

inline double weight_eval(double k, std::span<const double> x) { return Weight(k)(x); }

enum class SpaceKind { BUC, C0, Lp };

inline std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::BUC: return "BUC";
        case SpaceKind::C0: return "C0";
        case SpaceKind::Lp: return "Lp";
    }
    return "?";
}

inline SpaceKind parse_space_kind(const std::string& s) {
    if (s == "BUC") return SpaceKind::BUC;
    if (s == "C0") return SpaceKind::C0;
    if (s == "Lp") return SpaceKind::Lp;
    throw std::invalid_argument("unknown space kind '" + s + "' (expected BUC, C0 or Lp)");
}

/**
 * Declares the weighted space wX. The kind is a declaration only: BUC and C0
 * share the discrete sup norm, Lp uses a Riemann sum with the cell volume.
 */
class SpaceSpec {
public:
    SpaceSpec() = default;
    SpaceSpec(Weight weight, SpaceKind kind, double p = 0.0) : weight_(weight), kind_(kind), p_(p) {
        if (kind == SpaceKind::Lp) {
            if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("Lp exponent must satisfy 1 <= p < inf");
        } else {
            p_ = 0.0;
        }
    }

    static SpaceSpec buc(double k) { return {Weight(k), SpaceKind::BUC}; }
    static SpaceSpec c0(double k) { return {Weight(k), SpaceKind::C0}; }
    static SpaceSpec lp(double k, double p) { return {Weight(k), SpaceKind::Lp, p}; }

    const Weight& weight() const { return weight_; }
    SpaceKind kind() const { return kind_; }
    double p() const { return p_; }

    SpaceSpec with_weight(double k) const { return SpaceSpec(Weight(k), kind_, kind_ == SpaceKind::Lp ? p_ : 0.0); }

private:
    Weight weight_{0.0};
    SpaceKind kind_ = SpaceKind::BUC;
    double p_ = 0.0;
};

/// Signed slacks of the four weight relations; each must be >= 0.
struct WeightSlacks {
    double lower;          // w(x+y) - 1
    double submultiplicative;  // w(x)w(y) - w(x+y)
    double reverse;        // w(x-y)w(x) - w(y)
    double ratio;          // w(y)(w(y)-1) - |w(x+y)/w(x) - 1|

    double min() const { return std::min(std::min(lower, submultiplicative), std::min(reverse, ratio)); }
};

inline WeightSlacks weight_inequality_check(double k, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("points of different dimension");
    const Weight w(k);
    std::vector<double> sum(x.size()), diff(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
        sum[d] = x[d] + y[d];
        diff[d] = x[d] - y[d];
    }
    const double wx = w(x), wy = w(y), wsum = w(sum), wdiff = w(diff);
    return {wsum - 1.0, wx * wy - wsum, wdiff * wx - wy, wy * (wy - 1.0) - std::abs(wsum / wx - 1.0)};
}

/// Discrete ||f||_wX = ||f/w||_X restricted to the points of `window`.
inline double weighted_norm(const Field& f, const SpaceSpec& s, const Window& window) {
    const Grid& g = f.grid();
    if (g.size() == 0) throw std::invalid_argument("empty grid");
    const Weight& w = s.weight();
    if (s.kind() == SpaceKind::Lp) {
        const double p = s.p();
        double acc = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!window.contains(g, i)) continue;
            const double v = f.modulus(i) / w.radial(std::sqrt(g.norm_sq(i)));
            acc += p == 2.0 ? v * v : std::pow(v, p);
        }
        return std::pow(acc * g.cell_volume(), 1.0 / p);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!window.contains(g, i)) continue;
        best = std::max(best, f.modulus(i) / w.radial(std::sqrt(g.norm_sq(i))));
    }
    return best;
}

inline double weighted_norm(const Field& f, const SpaceSpec& s) { return weighted_norm(f, s, Window::full()); }

}  // namespace heatsg
