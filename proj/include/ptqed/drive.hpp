// Drive engineering: two-tone gap modulation and the resulting G coefficients.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ptqed/errors.hpp"

namespace ptqed {

// Two-tone drive on one qubit: static gap eps0 modulated at Omega_+/- with
// amplitudes lambda_+/-.
struct DriveParams {
    double eps0 = 5.0;
    double lambda_plus = 2.0;
    double lambda_minus = 2.0;
    double omega_plus = 6.1;
    double omega_minus = 3.9;
};

// Dimensionless sideband weights produced by the drive.
struct GCoefficients {
    double g_plus = 0.0;
    double g_minus = 0.0;
};

// Full two-resonator/two-qubit parameter set (single-resonator setups simply
// ignore the second slot).
struct SystemParams {
    double omega1 = 1.0;
    double omega2 = 1.0;
    double g1 = 0.05;
    double g2 = 0.05;
    double J = 0.0;
    double delta = 0.1;
    double gamma1 = 2.0;
    double gamma2 = 2.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    std::array<DriveParams, 2> drives{};
};

// Omega_+/- = eps0 +/- (omega + delta). Requires eps0 > omega + delta > 0.
std::pair<double, double> drive_frequencies(double eps0, double omega, double delta);

// Convenience: drive with frequencies auto-derived from (eps0, omega, delta).
DriveParams make_drive(double eps0, double lambda_plus, double lambda_minus, double omega,
                       double delta);

// Throws ValidationError unless Omega_+/- > lambda_+/- > 0.
void validate_drive(const DriveParams& drive);

// G_+ = J0(2 lambda_+/Omega_+) J1(2 lambda_-/Omega_-) and the +/- swap for G_-.
GCoefficients bessel_g(const DriveParams& drive);

// Advisory check of the parameter hierarchy eps0 >> gamma >> omega >> g, J,
// delta (a ">>" is a ratio of at least 2) plus Omega_+/- > lambda_+/-.
std::vector<std::string> check_hierarchy(const SystemParams& params);

}  // namespace ptqed
