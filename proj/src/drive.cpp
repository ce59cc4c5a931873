#include "ptqed/drive.hpp"

#include <cmath>

#include "ptqed/bessel.hpp"

namespace ptqed {

std::pair<double, double> drive_frequencies(double eps0, double omega, double delta) {
    const double shift = omega + delta;
    if (!(shift > 0.0))
        throw ValidationError("drive_frequencies: omega + delta must be positive");
    if (!(eps0 > shift))
        throw ValidationError("drive_frequencies: eps0 must exceed omega + delta "
                              "(Omega_- would be non-positive)");
    return {eps0 + shift, eps0 - shift};
}

DriveParams make_drive(double eps0, double lambda_plus, double lambda_minus, double omega,
                       double delta) {
    auto [op, om] = drive_frequencies(eps0, omega, delta);
    DriveParams d;
    d.eps0 = eps0;
    d.lambda_plus = lambda_plus;
    d.lambda_minus = lambda_minus;
    d.omega_plus = op;
    d.omega_minus = om;
    return d;
}

void validate_drive(const DriveParams& drive) {
    if (!(drive.lambda_plus > 0.0) || !(drive.lambda_minus > 0.0))
        throw ValidationError("DriveParams: drive amplitudes must be positive");
    if (!(drive.omega_plus > drive.lambda_plus) || !(drive.omega_minus > drive.lambda_minus))
        throw ValidationError("DriveParams: drive frequencies must exceed their amplitudes");
}

GCoefficients bessel_g(const DriveParams& drive) {
    validate_drive(drive);
    const double xp = 2.0 * drive.lambda_plus / drive.omega_plus;
    const double xm = 2.0 * drive.lambda_minus / drive.omega_minus;
    GCoefficients g;
    g.g_plus = bessel_j0(xp) * bessel_j1(xm);
    g.g_minus = bessel_j0(xm) * bessel_j1(xp);
    return g;
}

std::vector<std::string> check_hierarchy(const SystemParams& params) {
    std::vector<std::string> warnings;
    auto warn = [&](const std::string& msg) { warnings.push_back(msg); };
    auto much_greater = [](double lhs, double rhs) { return lhs >= 2.0 * rhs; };

    const double omegas[2] = {params.omega1, params.omega2};
    const double gs[2] = {params.g1, params.g2};
    const double gammas[2] = {params.gamma1, params.gamma2};

    for (int j = 0; j < 2; ++j) {
        const std::string tag = " (qubit " + std::to_string(j + 1) + ")";
        const DriveParams& d = params.drives[static_cast<size_t>(j)];
        if (!much_greater(d.eps0, gammas[j]))
            warn("hierarchy: eps0 >> gamma violated" + tag);
        if (!much_greater(gammas[j], omegas[j]))
            warn("hierarchy: gamma >> omega violated" + tag);
        if (!much_greater(omegas[j], gs[j]))
            warn("hierarchy: omega >> g violated" + tag);
        if (!much_greater(omegas[j], params.J))
            warn("hierarchy: omega >> J violated" + tag);
        if (!much_greater(omegas[j], std::abs(params.delta)))
            warn("hierarchy: omega >> delta violated" + tag);
        if (!(d.omega_plus > d.lambda_plus))
            warn("hierarchy: Omega_+ > lambda_+ violated" + tag);
        if (!(d.omega_minus > d.lambda_minus))
            warn("hierarchy: Omega_- > lambda_- violated" + tag);
    }
    return warnings;
}

}  // namespace ptqed
