#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "heatsg/complex_time.hpp"
#include "heatsg/grid.hpp"

namespace heatsg {

/**
 * A sampled function R^n -> C^m on a Grid. Values are point-major:
 * component c at flat point i lives at values()[i * m + c].
 */
class Field {
public:
    Field(Grid grid, int m) : grid_(std::move(grid)), m_(m) {
        if (m < 1) throw std::invalid_argument("field codomain dimension must be >= 1");
        values_.assign(grid_.size() * static_cast<std::size_t>(m), cplx(0.0, 0.0));
    }

    Field(Grid grid, int m, std::vector<cplx> values) : grid_(std::move(grid)), m_(m), values_(std::move(values)) {
        if (m < 1) throw std::invalid_argument("field codomain dimension must be >= 1");
        if (values_.size() != grid_.size() * static_cast<std::size_t>(m)) {
            throw std::invalid_argument("field value array length must equal N^n * m");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
                throw std::invalid_argument("field contains non-finite value at flat index " +
                                            std::to_string(i / static_cast<std::size_t>(m)));
            }
        }
    }

    const Grid& grid() const { return grid_; }
    int components() const { return m_; }
    std::size_t points() const { return grid_.size(); }

    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }

    std::span<const cplx> at(std::size_t point) const {
        return std::span<const cplx>(values_).subspan(point * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_));
    }
    std::span<cplx> at(std::size_t point) {
        return std::span<cplx>(values_).subspan(point * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_));
    }

    // Euclidean norm of the C^m value at a point.
    double modulus(std::size_t point) const {
        double s = 0.0;
        for (const auto& v : at(point)) s += std::norm(v);
        return std::sqrt(s);
    }

    double sup_modulus() const {
        double s = 0.0;
        for (std::size_t i = 0; i < points(); ++i) s = std::max(s, modulus(i));
        return s;
    }

    bool same_shape(const Field& o) const { return grid_ == o.grid_ && m_ == o.m_; }

    Field& operator+=(const Field& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    Field& operator*=(cplx c) {
        for (auto& v : values_) v *= c;
        return *this;
    }

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(cplx c, Field a) { return a *= c; }
    friend Field operator*(Field a, cplx c) { return a *= c; }

    friend bool operator==(const Field& a, const Field& b) {
        return a.same_shape(b) && a.values_ == b.values_;
    }

    void require_same_shape(const Field& o) const {
        if (!same_shape(o)) throw std::invalid_argument("fields live on different grids or codomains");
    }

private:
    Grid grid_;
    int m_;
    std::vector<cplx> values_;
};

// Pointwise rule R^n -> C^m; writes m components into `out`.
using PointRule = std::function<void(std::span<const double> x, std::span<cplx> out)>;
using ScalarRule = std::function<cplx(std::span<const double> x)>;

inline Field sample(const Grid& g, int m, const PointRule& rule) {
    Field f(g, m);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.point(i);
        auto out = f.at(i);
        rule(x, out);
        for (const auto& v : out) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                std::ostringstream msg;
                msg << "sampling rule returned a non-finite value at x = (";
                for (std::size_t d = 0; d < x.size(); ++d) msg << (d ? ", " : "") << x[d];
                msg << ")";
                throw std::invalid_argument(msg.str());
            }
        }
    }
    return f;
}

inline Field sample(const Grid& g, const ScalarRule& rule) {
    return sample(g, 1, [&](std::span<const double> x, std::span<cplx> out) { out[0] = rule(x); });
}

/**
 * Lattice translation f_s(x) = f(x + s h). Points whose source falls outside
 * the box are zero-filled.
 */
inline Field translate(const Field& f, std::span<const int> shift) {
    const Grid& g = f.grid();
    const int N = g.points_per_axis();
    if (static_cast<int>(shift.size()) != g.dim()) throw std::invalid_argument("shift dimension mismatch");
    for (int s : shift) {
        if (std::abs(s) >= N) throw std::invalid_argument("shift exceeds grid size");
    }
    Field out(g, f.components());
    const auto m = static_cast<std::size_t>(f.components());
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t rest = i, src = 0;
        bool inside = true;
        for (int d = g.dim() - 1; d >= 0; --d) {
            const int j = static_cast<int>(rest % static_cast<std::size_t>(N));
            rest /= static_cast<std::size_t>(N);
            const int js = j + shift[static_cast<std::size_t>(d)];
            if (js < 0 || js >= N) {
                inside = false;
                break;
            }
            src += static_cast<std::size_t>(js) * g.stride(d);
        }
        if (!inside) continue;
        for (std::size_t c = 0; c < m; ++c) out.values()[i * m + c] = f.values()[src * m + c];
    }
    return out;
}

/**
 * Scalar field vanishing on the outermost `layers` lattice layers; the discrete
 * stand-in for a compactly supported test function.
 */
class TestFunction {
public:
    TestFunction(Field phi, int layers = 2) : phi_(std::move(phi)), layers_(layers) {
        if (layers < 2) throw std::invalid_argument("test function needs at least 2 vanishing boundary layers");
        if (phi_.components() != 1) throw std::invalid_argument("test function must be scalar valued");
        const Grid& g = phi_.grid();
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.boundary_distance(i) < layers && phi_.values()[i] != cplx(0.0, 0.0)) {
                throw std::invalid_argument("test function support reaches the boundary layers");
            }
        }
    }

    const Field& field() const { return phi_; }
    int layers() const { return layers_; }

private:
    Field phi_;
    int layers_;
};

/// Smooth bump (1 - r^2)^{-1}-type exponential cutoff of radius `radius`
/// around `center`, multiplied by an optional scalar rule.
inline TestFunction bump_test_function(const Grid& g, std::span<const double> center, double radius,
                                       const ScalarRule& factor = nullptr) {
    Field phi = sample(g, [&](std::span<const double> x) -> cplx {
        double r2 = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
        const double s = r2 / (radius * radius);
        if (s >= 1.0) return 0.0;
        cplx v = std::exp(1.0 - 1.0 / (1.0 - s));
        if (factor) v *= factor(x);
        return v;
    });
    return TestFunction(std::move(phi));
}

/// Discrete integral sum_x f(x) phi(x) h^n, one entry per component of f.
inline std::vector<cplx> pair(const Field& f, const TestFunction& phi) {
    if (!(f.grid() == phi.field().grid())) throw std::invalid_argument("pairing requires a common grid");
    const auto m = static_cast<std::size_t>(f.components());
    std::vector<cplx> acc(m, cplx(0.0, 0.0));
    const auto pv = phi.field().values();
    for (std::size_t i = 0; i < f.points(); ++i) {
        if (pv[i] == cplx(0.0, 0.0)) continue;
        for (std::size_t c = 0; c < m; ++c) acc[c] += f.values()[i * m + c] * pv[i];
    }
    const double vol = f.grid().cell_volume();
    for (auto& a : acc) a *= vol;
    return acc;
}

}  // namespace heatsg
