#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heatsg {

/**
 * Uniform truncated lattice on [-L, L]^n with N points per axis.
 *
 * Points are stored in row-major lattice order: the first coordinate varies
 * slowest. Flat index of (j_0, ..., j_{n-1}) is sum_d j_d * N^(n-1-d).
 */
class Grid {
public:
    Grid(int n, double L, int N) : n_(n), L_(L), N_(N) {
        if (n < 1) throw std::invalid_argument("grid dimension must be >= 1");
        if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid half-extent must be positive");
        if (N < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
        h_ = 2.0 * L / static_cast<double>(N - 1);
        size_ = 1;
        for (int d = 0; d < n; ++d) size_ *= static_cast<std::size_t>(N);
    }

    int dim() const { return n_; }
    double half_extent() const { return L_; }
    int points_per_axis() const { return N_; }
    double spacing() const { return h_; }
    double cell_volume() const { return std::pow(h_, n_); }
    std::size_t size() const { return size_; }

    double coordinate(int j) const { return -L_ + static_cast<double>(j) * h_; }

    // Stride of axis d in the flat index.
    std::size_t stride(int d) const {
        std::size_t s = 1;
        for (int e = d + 1; e < n_; ++e) s *= static_cast<std::size_t>(N_);
        return s;
    }

    std::vector<int> multi_index(std::size_t flat) const {
        std::vector<int> j(static_cast<std::size_t>(n_));
        for (int d = n_ - 1; d >= 0; --d) {
            j[static_cast<std::size_t>(d)] = static_cast<int>(flat % static_cast<std::size_t>(N_));
            flat /= static_cast<std::size_t>(N_);
        }
        return j;
    }

    std::vector<double> point(std::size_t flat) const {
        auto j = multi_index(flat);
        std::vector<double> x(j.size());
        for (std::size_t d = 0; d < j.size(); ++d) x[d] = coordinate(j[d]);
        return x;
    }

    double norm_sq(std::size_t flat) const {
        double s = 0.0;
        for (int d = n_ - 1; d >= 0; --d) {
            double x = coordinate(static_cast<int>(flat % static_cast<std::size_t>(N_)));
            s += x * x;
            flat /= static_cast<std::size_t>(N_);
        }
        return s;
    }

    // Lattice distance in layers from the nearest face of the box.
    int boundary_distance(std::size_t flat) const {
        int best = N_;
        for (int d = 0; d < n_; ++d) {
            int j = static_cast<int>(flat % static_cast<std::size_t>(N_));
            flat /= static_cast<std::size_t>(N_);
            best = std::min(best, std::min(j, N_ - 1 - j));
        }
        return best;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n_ == b.n_ && a.L_ == b.L_ && a.N_ == b.N_;
    }

private:
    int n_;
    double L_;
    int N_;
    double h_;
    std::size_t size_;
};

inline Grid make_grid(int n, double L, int N) { return Grid(n, L, N); }

/**
 * Interior sub-window: excludes the outer `margin` fraction of the index
 * range on each side of every axis. margin = 0.25 keeps [-L/2, L/2]^n.
 */
class Window {
public:
    Window() = default;
    explicit Window(double margin) : margin_(margin) {
        if (!(margin >= 0.0 && margin < 0.5)) throw std::invalid_argument("window margin must lie in [0, 0.5)");
    }

    static Window full() { return Window(0.0); }

    double margin() const { return margin_; }

    int lo(const Grid& g) const {
        return static_cast<int>(std::ceil(margin_ * (g.points_per_axis() - 1) - 1e-9));
    }
    int hi(const Grid& g) const { return g.points_per_axis() - 1 - lo(g); }

    bool contains(const Grid& g, std::size_t flat) const {
        const int a = lo(g), b = hi(g);
        const auto N = static_cast<std::size_t>(g.points_per_axis());
        for (int d = 0; d < g.dim(); ++d) {
            int j = static_cast<int>(flat % N);
            flat /= N;
            if (j < a || j > b) return false;
        }
        return true;
    }

    // Euclidean radius of the window's corner, the farthest window point from 0.
    double outer_radius(const Grid& g) const {
        double c = std::abs(g.coordinate(lo(g)));
        return c * std::sqrt(static_cast<double>(g.dim()));
    }

    // Shortest distance from a window point to the grid edge.
    double edge_gap(const Grid& g) const { return lo(g) * g.spacing(); }

private:
    double margin_ = 0.25;
};

}  // namespace heatsg
