#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace efl {

using Complex = std::complex<double>;

// Euler's constant, gamma_e = -digamma(1).
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243104;

inline constexpr double pi = 3.14159265358979323846264338327950288419;

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a quadrature fails to converge; carries the partial estimate.
struct QuadratureError : NumericError {
    Complex partial_estimate;
    double error_estimate;
    QuadratureError(const std::string& what, Complex partial, double err)
        : NumericError(what), partial_estimate(partial), error_estimate(err) {}
};

struct PoleError : NumericError {
    using NumericError::NumericError;
};

struct DomainError : NumericError {
    using NumericError::NumericError;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

} // namespace efl
