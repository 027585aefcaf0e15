#pragma once

#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "heatsg/grid.hpp"

namespace heatsg::detail {

// FFTW's planner is not reentrant; execution on distinct plans is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/**
 * Unnormalized n-dimensional DFT over a Grid's lattice, owning its buffer and
 * forward/backward plans. FFTW_ESTIMATE keeps plans (and results) deterministic.
 */
class Dft {
public:
    explicit Dft(const Grid& g) : size_(g.size()) {
        dims_.assign(static_cast<std::size_t>(g.dim()), g.points_per_axis());
        buf_ = fftw_alloc_complex(size_);
        if (!buf_) throw std::bad_alloc();
        std::lock_guard lock(fftw_planner_mutex());
        fwd_ = fftw_plan_dft(g.dim(), dims_.data(), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft(g.dim(), dims_.data(), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Dft() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;

    std::span<std::complex<double>> data() {
        return {reinterpret_cast<std::complex<double>*>(buf_), size_};
    }

    void forward() { fftw_execute(fwd_); }
    // Unnormalized; divide by size() for the inverse.
    void backward() { fftw_execute(bwd_); }
    std::size_t size() const { return size_; }

private:
    std::size_t size_;
    std::vector<int> dims_;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

/// Angular frequency of DFT index j on N points with spacing h (numpy fftfreq ordering).
inline double dft_frequency(int j, int N, double h) {
    const int k = j <= (N - 1) / 2 ? j : j - N;
    return 2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(N) * h);
}

/// Signed integer frequency index of DFT bin j.
inline int dft_index(int j, int N) { return j <= (N - 1) / 2 ? j : j - N; }

/// |xi|^2 for every DFT bin of the grid, in flat lattice order.
inline std::vector<double> frequency_norm_sq(const Grid& g) {
    const int N = g.points_per_axis();
    std::vector<double> axis(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double xi = dft_frequency(j, N, g.spacing());
        axis[static_cast<std::size_t>(j)] = xi * xi;
    }
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t rest = i;
        double s = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            s += axis[rest % static_cast<std::size_t>(N)];
            rest /= static_cast<std::size_t>(N);
        }
        out[i] = s;
    }
    return out;
}

}  // namespace heatsg::detail
