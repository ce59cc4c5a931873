// Bessel functions J0, J1 via ascending power series (small real arguments).
#pragma once

#include <cmath>

#include "ptqed/errors.hpp"

namespace ptqed {

// Series are used only for |x| <= 6; drive-derived arguments stay below 2.
inline double bessel_j0(double x) {
    if (std::abs(x) > 6.0) throw ValidationError("bessel_j0: argument outside series domain |x| <= 6");
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) return sum;
    }
    throw NumericalError("bessel_j0: series failed to converge");
}

inline double bessel_j1(double x) {
    if (std::abs(x) > 6.0) throw ValidationError("bessel_j1: argument outside series domain |x| <= 6");
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) return 0.5 * x * sum;
    }
    throw NumericalError("bessel_j1: series failed to converge");
}

}  // namespace ptqed
