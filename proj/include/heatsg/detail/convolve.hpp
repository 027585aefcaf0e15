#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "heatsg/field.hpp"

namespace heatsg::detail {

/**
 * Zero-filled discrete convolution of every line of `f` along `axis` with a
 * 1-D kernel sampled at lattice offsets -(N-1)..(N-1):
 *   out[i] = h * sum_j taps[i - j + N - 1] * f[j].
 * Summation order is fixed (increasing j).
 */
inline Field convolve_axis(const Field& f, int axis, std::span<const std::complex<double>> taps) {
    const Grid& g = f.grid();
    const int N = g.points_per_axis();
    const auto m = static_cast<std::size_t>(f.components());
    const std::size_t stride = g.stride(axis) * m;
    const std::size_t line_count = g.size() / static_cast<std::size_t>(N);
    const double h = g.spacing();
    Field out(g, f.components());
    const auto in = f.values();
    auto dst = out.values();
    std::vector<std::complex<double>> line(static_cast<std::size_t>(N));
    const std::size_t block = g.stride(axis);
    for (std::size_t l = 0; l < line_count; ++l) {
        // Decompose line id into (outer, inner) around the convolved axis.
        const std::size_t outer = l / block, inner = l % block;
        const std::size_t base_point = outer * block * static_cast<std::size_t>(N) + inner;
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t base = base_point * m + c;
            for (int j = 0; j < N; ++j) line[static_cast<std::size_t>(j)] = in[base + static_cast<std::size_t>(j) * stride];
            for (int i = 0; i < N; ++i) {
                std::complex<double> acc(0.0, 0.0);
                const std::complex<double>* t = taps.data() + (i + N - 1);
                for (int j = 0; j < N; ++j) acc += t[-j] * line[static_cast<std::size_t>(j)];
                dst[base + static_cast<std::size_t>(i) * stride] = acc * h;
            }
        }
    }
    return out;
}

}  // namespace heatsg::detail
