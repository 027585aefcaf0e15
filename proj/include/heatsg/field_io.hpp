#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsg/field.hpp"
#include "heatsg/semigroup.hpp"

namespace heatsg {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("trailing characters in " + what + " '" + s + "'");
    return v;
}

}  // namespace detail

/// CSV: header x1..xn,re_1,im_1..re_m,im_m; one lattice point per line in row-major order.
inline void write_field_csv(std::ostream& os, const Field& f) {
    const Grid& g = f.grid();
    for (int d = 0; d < g.dim(); ++d) os << (d ? "," : "") << 'x' << d + 1;
    for (int c = 0; c < f.components(); ++c) os << ",re_" << c + 1 << ",im_" << c + 1;
    os << '\n';
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto j = g.multi_index(i);
        for (int d = 0; d < g.dim(); ++d) os << (d ? "," : "") << detail::format_double(g.coordinate(j[static_cast<std::size_t>(d)]));
        for (const auto& v : f.at(i)) os << ',' << detail::format_double(v.real()) << ',' << detail::format_double(v.imag());
        os << '\n';
    }
}

inline Field read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("field CSV is empty");
    const auto header = detail::split(line, ',');
    int n = 0;
    while (n < static_cast<int>(header.size()) && header[static_cast<std::size_t>(n)] == "x" + std::to_string(n + 1)) ++n;
    const int rest = static_cast<int>(header.size()) - n;
    if (n < 1 || rest < 2 || rest % 2 != 0) throw std::invalid_argument("malformed field CSV header: " + line);
    const int m = rest / 2;
    for (int c = 0; c < m; ++c) {
        if (header[static_cast<std::size_t>(n + 2 * c)] != "re_" + std::to_string(c + 1) ||
            header[static_cast<std::size_t>(n + 2 * c + 1)] != "im_" + std::to_string(c + 1)) {
            throw std::invalid_argument("malformed field CSV header: " + line);
        }
    }
    std::vector<std::vector<double>> coords;
    std::vector<cplx> values;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != header.size()) throw std::invalid_argument("field CSV line " + std::to_string(lineno) + " has wrong column count");
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) x[static_cast<std::size_t>(d)] = detail::parse_double(cells[static_cast<std::size_t>(d)], "coordinate");
        coords.push_back(std::move(x));
        for (int c = 0; c < m; ++c) {
            values.emplace_back(detail::parse_double(cells[static_cast<std::size_t>(n + 2 * c)], "value"),
                                detail::parse_double(cells[static_cast<std::size_t>(n + 2 * c + 1)], "value"));
        }
    }
    const auto count = coords.size();
    const int N = static_cast<int>(std::llround(std::pow(static_cast<double>(count), 1.0 / n)));
    std::size_t expect = 1;
    for (int d = 0; d < n; ++d) expect *= static_cast<std::size_t>(N);
    if (N < 2 || expect != count) throw std::invalid_argument("field CSV point count is not N^n");
    const double L = -coords.front()[0];
    Grid g(n, L, N);
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = g.multi_index(i);
        for (int d = 0; d < n; ++d) {
            const double want = g.coordinate(j[static_cast<std::size_t>(d)]);
            if (std::abs(coords[i][static_cast<std::size_t>(d)] - want) > 1e-9 * L) {
                throw std::invalid_argument("field CSV line " + std::to_string(i + 2) + " is not on the uniform lattice");
            }
        }
    }
    return Field(g, m, std::move(values));
}

inline void write_field_csv(const std::filesystem::path& path, const Field& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_field_csv(os, f);
}

inline Field read_field_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    return read_field_csv(is);
}

/// One CSV per state plus index.csv with columns t,filename.
inline void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj) {
    std::filesystem::create_directories(dir);
    std::ofstream index(dir / "index.csv");
    if (!index) throw std::runtime_error("cannot write " + (dir / "index.csv").string());
    index << "t,filename\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "state_%04zu.csv", i);
        write_field_csv(dir / name, traj.states[i]);
        index << detail::format_double(traj.times[i]) << ',' << name << '\n';
    }
}

inline Trajectory read_trajectory(const std::filesystem::path& dir) {
    std::ifstream index(dir / "index.csv");
    if (!index) throw std::runtime_error("cannot read " + (dir / "index.csv").string());
    std::string line;
    std::getline(index, line);
    if (line != "t,filename") throw std::invalid_argument("malformed trajectory index header");
    Trajectory traj;
    while (std::getline(index, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != 2) throw std::invalid_argument("malformed trajectory index line: " + line);
        traj.times.push_back(detail::parse_double(cells[0], "time"));
        traj.states.push_back(read_field_csv(dir / cells[1]));
    }
    return traj;
}

}  // namespace heatsg
