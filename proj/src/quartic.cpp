#include "ptqed/quartic.hpp"

#include <cmath>
#include <string>

#include "ptqed/errors.hpp"

namespace ptqed {

std::array<cplx, 4> characteristic_polynomial(const Eigen::Matrix4cd& m) {
    const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
    Eigen::Matrix4cd mk = m;
    std::array<cplx, 4> c{};
    c[0] = -mk.trace();
    mk = m * (mk + c[0] * id);
    c[1] = -mk.trace() / 2.0;
    mk = m * (mk + c[1] * id);
    c[2] = -mk.trace() / 3.0;
    mk = m * (mk + c[2] * id);
    c[3] = -mk.trace() / 4.0;
    return c;
}

namespace {

cplx eval_poly(const std::array<cplx, 4>& c, cplx z) {
    return (((z + c[0]) * z + c[1]) * z + c[2]) * z + c[3];
}

cplx eval_deriv(const std::array<cplx, 4>& c, cplx z) {
    return ((4.0 * z + 3.0 * c[0]) * z + 2.0 * c[1]) * z + c[2];
}

}  // namespace

std::array<cplx, 4> solve_quartic(const std::array<cplx, 4>& coeffs) {
    // Cauchy bound keeps every root inside |z| <= radius.
    double radius = 0.0;
    for (const cplx& c : coeffs) radius = std::max(radius, std::abs(c));
    radius += 1.0;

    // Durand-Kerner from non-symmetric starting points.
    std::array<cplx, 4> z;
    const cplx seed(0.4, 0.9);
    cplx pw = 1.0;
    for (int k = 0; k < 4; ++k) {
        pw *= seed;
        z[k] = radius * pw;
    }
    for (int iter = 0; iter < 200; ++iter) {
        double max_step = 0.0;
        for (int k = 0; k < 4; ++k) {
            cplx denom = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (denom == cplx(0.0)) denom = cplx(1e-30, 0.0);
            const cplx step = eval_poly(coeffs, z[k]) / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-16 * (1.0 + radius)) break;
    }

    // Newton polish, guarded against multiple roots where p' degenerates.
    for (int k = 0; k < 4; ++k) {
        for (int it = 0; it < 30; ++it) {
            const cplx p = eval_poly(coeffs, z[k]);
            const cplx dp = eval_deriv(coeffs, z[k]);
            if (std::abs(dp) < 1e-12 * (1.0 + radius * radius * radius)) break;
            const cplx cand = z[k] - p / dp;
            if (std::abs(eval_poly(coeffs, cand)) >= std::abs(p)) break;
            z[k] = cand;
        }
    }

    for (int k = 0; k < 4; ++k) {
        const double mag = std::abs(z[k]);
        const double residual = std::abs(eval_poly(coeffs, z[k])) / std::max(1.0, mag * mag * mag * mag);
        if (!(residual < 1e-12))
            throw NumericalError("solve_quartic: root polish stalled at residual " +
                                 std::to_string(residual));
    }
    return z;
}

}  // namespace ptqed
