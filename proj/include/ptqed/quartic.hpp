// Explicit quartic characteristic-polynomial eigenvalue solver for 4x4
// matrices (independent of library eigensolvers, used as a cross-check).
#pragma once

#include <array>

#include <Eigen/Dense>

#include "ptqed/operators.hpp"

namespace ptqed {

// Coefficients c of p(z) = z^4 + c[0] z^3 + c[1] z^2 + c[2] z + c[3] via the
// Faddeev-LeVerrier recursion.
std::array<cplx, 4> characteristic_polynomial(const Eigen::Matrix4cd& m);

// All four roots of the monic quartic, found with Durand-Kerner iteration and
// a guarded Newton polish. Throws NumericalError if any polished root leaves
// a scaled residual above 1e-12.
std::array<cplx, 4> solve_quartic(const std::array<cplx, 4>& coeffs);

}  // namespace ptqed
