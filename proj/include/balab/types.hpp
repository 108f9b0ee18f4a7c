#pragma once

#include <complex>
#include <functional>
#include <limits>

namespace balab {

using Complex = std::complex<double>;

// Scalar field on a planar region. Values may be -inf (logarithmic poles);
// +inf never appears except as the Green-function value at its own pole.
using RealField = std::function<double(Complex)>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double neg_inf() { return -std::numeric_limits<double>::infinity(); }
inline double pos_inf() { return std::numeric_limits<double>::infinity(); }

inline Complex rotate(Complex z, double angle) {
    return z * std::polar(1.0, angle);
}

}  // namespace balab
