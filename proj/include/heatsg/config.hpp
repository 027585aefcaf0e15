#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsg/complex_time.hpp"
#include "heatsg/verify.hpp"

namespace heatsg {

/// Configuration error carrying the offending line (0 when not tied to a line).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline bool parse_real(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == s.size() && std::isfinite(out);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace detail

/// Parses `a+bi`, `a-bi`, `a`, `bi` (no spaces).
inline cplx parse_complex(const std::string& text) {
    const std::string s = detail::trim(text);
    auto fail = [&] { return std::invalid_argument("cannot parse complex number '" + text + "' (expected a+bi)"); };
    if (s.empty()) throw fail();
    double re = 0.0, im = 0.0;
    if (s.back() != 'i') {
        if (!detail::parse_real(s, re)) throw fail();
        return {re, 0.0};
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_part = [&](const std::string& t) {
        if (t == "" || t == "+") return 1.0;
        if (t == "-") return -1.0;
        double v = 0.0;
        if (!detail::parse_real(t, v)) throw fail();
        return v;
    };
    if (split == std::string::npos) {
        im = imag_part(body);
    } else {
        if (!detail::parse_real(body.substr(0, split), re)) throw fail();
        im = imag_part(body.substr(split));
    }
    return {re, im};
}

inline std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : detail::split_list(s)) {
        double v = 0.0;
        if (!detail::parse_real(item, v)) throw std::invalid_argument("cannot parse number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

/**
 * Flat `key = value` configuration with `#` comments. Keys come from a fixed
 * schema; every key has a default, so serialize() writes the complete
 * effective configuration.
 */
class RunConfig {
public:
    enum class Type { integer, real, text, real_list, text_list };

    RunConfig() {
        for (const auto& [key, entry] : schema()) values_[key] = entry.second;
        for (const auto& [name, tol] : default_tolerances()) values_["tol." + name] = format(tol);
    }

    static RunConfig parse(std::istream& is) {
        RunConfig cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            try {
                cfg.set(key, value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what(), lineno);
            }
        }
        return cfg;
    }

    static RunConfig load(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot open config file '" + path + "'");
        return parse(is);
    }

    /// Validates against the schema; throws std::invalid_argument on unknown keys or bad values.
    void set(const std::string& key, const std::string& value) {
        const Type t = type_of(key);
        switch (t) {
            case Type::integer: {
                double v = 0.0;
                if (!detail::parse_real(value, v) || v != static_cast<double>(static_cast<long long>(v))) {
                    throw std::invalid_argument("key '" + key + "' expects an integer, got '" + value + "'");
                }
                break;
            }
            case Type::real: {
                double v = 0.0;
                if (!detail::parse_real(value, v)) throw std::invalid_argument("key '" + key + "' expects a number, got '" + value + "'");
                break;
            }
            case Type::real_list: (void)parse_real_list(value); break;
            case Type::text:
            case Type::text_list: break;
        }
        values_[key] = value;
    }

    const std::string& get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw std::invalid_argument("unknown config key '" + key + "'");
        return it->second;
    }
    double real(const std::string& key) const { return std::stod(get(key)); }
    long long integer(const std::string& key) const { return static_cast<long long>(std::stod(get(key))); }
    std::vector<double> reals(const std::string& key) const { return parse_real_list(get(key)); }
    std::vector<std::string> texts(const std::string& key) const { return detail::split_list(get(key)); }

    void serialize(std::ostream& os) const {
        for (const auto& [k, v] : values_) os << k << " = " << v << '\n';
    }

    Grid grid() const { return Grid(static_cast<int>(integer("grid.n")), real("grid.L"), static_cast<int>(integer("grid.N"))); }

    SpaceSpec space() const {
        const SpaceKind kind = parse_space_kind(get("space.kind"));
        return SpaceSpec(Weight(real("space.k")), kind, kind == SpaceKind::Lp ? real("space.p") : 0.0);
    }

    SuiteConfig suite() const {
        SuiteConfig s;
        s.n = static_cast<int>(integer("grid.n"));
        s.L = real("grid.L");
        s.N = static_cast<int>(integer("grid.N"));
        s.space = space();
        s.alpha = real("sector.alpha");
        s.seed = static_cast<std::uint64_t>(integer("seed"));
        s.margin = real("window.margin");
        s.laplacian = parse_laplacian_method(get("laplacian"));
        s.checks = texts("checks");
        s.components = static_cast<int>(integer("field.components"));
        s.closed_form_times = reals("suite.closed_form_times");
        s.bound_fields = static_cast<int>(integer("suite.bound_fields"));
        s.weight_draws = static_cast<int>(integer("suite.weight_draws"));
        s.continuity_levels = static_cast<int>(integer("suite.continuity_levels"));
        for (auto& [name, tol] : s.tol) tol = real("tol." + name);
        return s;
    }

    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

private:
    using Schema = std::map<std::string, std::pair<Type, std::string>>;

    static const Schema& schema() {
        static const Schema s = {
            {"grid.n", {Type::integer, "1"}},
            {"grid.L", {Type::real, "12"}},
            {"grid.N", {Type::integer, "1025"}},
            {"space.k", {Type::real, "0"}},
            {"space.kind", {Type::text, "BUC"}},
            {"space.p", {Type::real, "2"}},
            {"sector.alpha", {Type::real, format(5.0 * std::numbers::pi / 12.0)}},
            {"seed", {Type::integer, "20240601"}},
            {"window.margin", {Type::real, "0.25"}},
            {"laplacian", {Type::text, "finite_difference"}},
            {"checks", {Type::text_list, join(all_check_names())}},
            {"suite.closed_form_times", {Type::real_list, "0.1, 1, 5"}},
            {"suite.bound_fields", {Type::integer, "100"}},
            {"suite.weight_draws", {Type::integer, "10000"}},
            {"suite.continuity_levels", {Type::integer, "10"}},
            {"field.rule", {Type::text, "gaussian"}},
            {"field.input", {Type::text, ""}},
            {"field.width", {Type::real, "1"}},
            {"field.s", {Type::real, "0.5"}},
            {"field.value", {Type::real, "1"}},
            {"field.components", {Type::integer, "1"}},
            {"evolve.zeta.re", {Type::real, "1"}},
            {"evolve.zeta.im", {Type::real, "0"}},
            {"evolve.times", {Type::real_list, ""}},
            {"evolve.method", {Type::text, "automatic"}},
            {"table.check", {Type::text, "continuity"}},
        };
        return s;
    }

    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
        return out;
    }

    static Type type_of(const std::string& key) {
        if (key.rfind("tol.", 0) == 0) {
            if (!default_tolerances().count(key.substr(4))) throw std::invalid_argument("unknown tolerance key '" + key + "'");
            return Type::real;
        }
        auto it = schema().find(key);
        if (it == schema().end()) throw std::invalid_argument("unknown config key '" + key + "'");
        return it->second.first;
    }

    std::map<std::string, std::string> values_;
};

}  // namespace heatsg
