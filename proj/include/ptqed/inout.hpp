// Transmission spectroscopy: analytic rotating-frame response of the coupled
// resonator pair, exact harmonic-balance response of the full moment system,
// input-output assembly, and the (omega_d, J) transmission map.
#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "ptqed/operators.hpp"
#include "ptqed/ptspectrum.hpp"

namespace ptqed {

// Measurement ports: each resonator couples equally and symmetrically to a
// left and a right transmission line.
enum class Port { P1L = 0, P1R = 1, P2L = 2, P2R = 3 };

const char* port_name(Port p);

// Monochromatic tone entering one port. kappa is the flat port leakage rate;
// the same rate also acts as an extra loss channel on every moment component.
struct InputSignal {
    Port port = Port::P1L;
    cplx amplitude{1.0, 0.0};
    double omega_d = 0.0;
    double kappa = 0.0;
};

// Steady drive-harmonic amplitudes of the two resonator fields in the
// rotating-wave model.
struct RwaResponse {
    cplx alpha1{0.0, 0.0};
    cplx alpha2{0.0, 0.0};
};

// Closed-form driven response of the rotating-wave model:
//   alpha1 = i sqrt(kappa) alpha [(delta - omega_d) + i (g2t - kappa)] / (w+ w-)
//   alpha2 = -i sqrt(kappa) alpha J / (w+ w-)
// with
//   w+- = (delta - omega_d) + { i (g2t - g1t - 2 kappa) +- sqrt(4 J^2 - (g1t + g2t)^2) } / 2.
// Fails at an exact pole w+ w- = 0 (drive on an undamped normal mode).
RwaResponse rwa_response(double delta, double omega_d, double J, const EffectiveRates& rates,
                         double kappa, cplx alpha);

// Exact particular solution of the driven first-moment system
//   dv/dt = -i (M - i kappa I) v + F(t),   v = (<a1>, <a1^dag>, <a2>, <a2^dag>),
// where the tone drives the target resonator's <a> row at the e^{-i omega_d t}
// harmonic and its <a^dag> row at the conjugate harmonic. Because M may couple
// daggered to undaggered components, both sidebands respond; the two shifted
// 4x4 blocks (M - i kappa I) -+ omega_d I are assembled into one 8x8 linear
// system and solved exactly. The returned vector holds each component's
// amplitude at the drive harmonic. No stability screening is applied: this is
// the formal particular solution that maps are built from. Fails only when
// the system is singular (drive exactly on an undamped normal mode) or the
// solve cannot reach a small residual near such a pole.
Eigen::Vector4cd harmonic_response(const MomentMatrix& m, const InputSignal& input);

// harmonic_response behind a stability gate: every mode of M - i kappa I must
// have a non-positive growth rate, otherwise the transient never dies and the
// driven system has no steady response.
Eigen::Vector4cd numeric_response(const MomentMatrix& m, const InputSignal& input);

// Input-output assembly: T = <A_out at out_port> / amplitude, with the input
// tone present only on input.port. Requesting the driven port itself returns
// the reflection coefficient 1 - i sqrt(kappa) chi / alpha — documented, not
// an error. Left and right ports of the same resonator couple identically.
cplx transmission(const InputSignal& input, Port out_port, const Eigen::Vector4cd& response);

// Clipping window (natural-log units) applied to map log-power values so that
// poles of the lossless limit stay plottable.
inline constexpr double kLogPowerFloor = -12.0;
inline constexpr double kLogPowerCeiling = 2.0;

struct TransmissionPoint {
    double omega_d = 0.0;
    double J = 0.0;
    // T toward every port, indexed in Port order {1L, 1R, 2L, 2R}; the 1L
    // entry is the reflection coefficient. At an exact pole the coefficients
    // are reported as 0 with log_power pinned to the ceiling.
    std::array<cplx, 4> t_coeffs{};
    double log_power = 0.0;  // log |T_{1L,2R}|^2, clipped to the window above
};

struct TransmissionMap {
    std::vector<double> omega_d_grid;
    std::vector<double> j_grid;
    // Row-major with J outer: points[jj * omega_d_grid.size() + wi].
    std::vector<TransmissionPoint> points;
    std::vector<double> ridge_omega;               // per J: argmax over omega_d
    std::vector<std::vector<double>> ridge_peaks;  // per J: interior local maxima
};

// Map of the 1L -> 2R transmitted log-power over (omega_d, J) for the moment
// system built from (delta, rates, mode), probed with a unit tone. Cells are
// independent; with jobs > 1 they are computed on a fixed strided partition
// and merged in (J, omega_d) lexicographic order, so the result never depends
// on the worker count.
TransmissionMap transmission_map(double delta, const std::vector<double>& omega_d_grid,
                                 const std::vector<double>& j_grid, const EffectiveRates& rates,
                                 double kappa, MMode mode, int jobs = 1);

}  // namespace ptqed
