#pragma once

#include <cmath>

// Closed-form reference values for the built-in charts, used by golden tests
// and by reports to quote expected-vs-computed numbers.  The minors refer to
// the row scaling enabled by the paper-scaling compatibility mode.
namespace darboux::reference {

// Stereographic sphere chart.
inline double sphere_lambda(double u, double v) {
    const double w = u * u + v * v + 1.0;
    return 4.0 / (w * w);
}

// det of the 4x4 minor after dropping columns 3 and 6.
inline double sphere_minor_cols36(double u, double v) {
    const double w = u * u + v * v + 1.0;
    return 4.0 * (u * u + v * v) * w * w;
}

// det of the 4x4 minor after dropping columns 2 and 5.
inline double sphere_minor_cols25(double u, double v) {
    const double w = u * u + v * v + 1.0;
    return w * w * (u * u + (v - 1.0) * (v - 1.0)) * (u * u + (v + 1.0) * (v + 1.0));
}

// Elimination determinant d of the sphere chart.
inline double sphere_d(double u, double v) {
    const double w = u * u + v * v + 1.0;
    return 16.0 * sphere_lambda(u, v) * (u * u + v * v) / (w * w * w * w);
}

// Helicoid-catenoid family.
inline double helicoid_lambda(double v) {
    const double c = std::cosh(v);
    return c * c;
}

inline double helicoid_minor_cols36(double v, double t) {
    const double c = std::cosh(v);
    return -c * c * std::sin(t);
}

// Elimination determinant from its defining formula:
// d = h11 x3v^2 - 2 h12 x3u x3v + h22 x3u^2 with
// h = (-sin t, cos t, sin t) and (x3u, x3v) = (cos t, sin t).
inline double helicoid_d(double t) { return -std::sin(t); }

// A differing closed form quoted for the same quantity; it shares the zero
// set with helicoid_d on (0, pi/2) but not at t = pi/2.  Reports flag the
// mismatch; nothing downstream consumes this value.
inline double helicoid_d_quoted_alternative(double t) {
    const double c = std::cos(t);
    return -2.0 * c * c * std::sin(t);
}

} // namespace darboux::reference
