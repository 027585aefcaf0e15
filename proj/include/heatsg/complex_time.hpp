#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heatsg {

using cplx = std::complex<double>;

/**
 * A point of the closed evolution domain: either the identity time 0 or a
 * complex time with strictly positive real part.
 */
class ComplexTime {
public:
    constexpr ComplexTime() = default;

    ComplexTime(double re, double im = 0.0) : ComplexTime(cplx(re, im)) {}

    ComplexTime(cplx z) : z_(z) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("complex time must be finite");
        }
        if (!(z.real() > 0.0) && z != cplx(0.0, 0.0)) {
            throw std::invalid_argument("complex time must have Re > 0 or be 0, got " + to_string(z));
        }
    }

    static ComplexTime polar(double r, double phi) { return ComplexTime(std::polar(r, phi)); }

    cplx value() const { return z_; }
    double real() const { return z_.real(); }
    double imag() const { return z_.imag(); }
    double modulus() const { return std::abs(z_); }
    double arg() const { return is_zero() ? 0.0 : std::arg(z_); }
    bool is_zero() const { return z_ == cplx(0.0, 0.0); }
    bool is_real() const { return z_.imag() == 0.0; }

    // Unit direction zeta/|zeta|; undefined at the identity time.
    cplx direction() const {
        if (is_zero()) throw std::domain_error("direction of zero complex time");
        return z_ / std::abs(z_);
    }

    bool in_sector(double alpha) const {
        if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) {
            throw std::invalid_argument("sector angle must lie in (0, pi/2)");
        }
        return !is_zero() && std::abs(arg()) < alpha;
    }

    ComplexTime operator+(const ComplexTime& o) const { return ComplexTime(z_ + o.z_); }

    friend bool operator==(const ComplexTime&, const ComplexTime&) = default;

    static std::string to_string(cplx z) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
        return buf;
    }
    std::string to_string() const { return to_string(z_); }

private:
    cplx z_{0.0, 0.0};
};

// Rejects the identity time for operations that need an actual kernel.
inline void require_positive(const ComplexTime& zeta) {
    if (zeta.is_zero()) throw std::invalid_argument("kernel requires Re(zeta) > 0, got zeta = 0");
}

}  // namespace heatsg
