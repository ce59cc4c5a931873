#include "ptqed/inout.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>

#include "ptqed/errors.hpp"
#include "ptqed/sweep.hpp"

namespace ptqed {
namespace {

constexpr cplx kI{0.0, 1.0};

void validate_input(const InputSignal& input) {
    if (!(input.kappa >= 0.0)) {
        std::ostringstream msg;
        msg << "input signal: kappa must be >= 0, got " << input.kappa;
        throw ValidationError(msg.str());
    }
    if (input.amplitude == cplx(0.0, 0.0))
        throw ValidationError("input signal: amplitude must be nonzero");
    if (!std::isfinite(input.omega_d))
        throw ValidationError("input signal: omega_d must be finite");
}

// Index of the <a_j> component belonging to a port's resonator in the moment
// basis (<a1>, <a1^dag>, <a2>, <a2^dag>).
int field_component(Port p) { return (p == Port::P1L || p == Port::P1R) ? 0 : 2; }

}  // namespace

const char* port_name(Port p) {
    switch (p) {
        case Port::P1L: return "1L";
        case Port::P1R: return "1R";
        case Port::P2L: return "2L";
        case Port::P2R: return "2R";
    }
    throw ValidationError("port_name: unknown port");
}

RwaResponse rwa_response(double delta, double omega_d, double J, const EffectiveRates& rates,
                         double kappa, cplx alpha) {
    InputSignal probe;
    probe.amplitude = alpha;
    probe.omega_d = omega_d;
    probe.kappa = kappa;
    validate_input(probe);
    if (rates.gamma_tilde_1 < 0.0 || rates.gamma_tilde_2 < 0.0)
        throw ValidationError("rwa_response: effective rates must be non-negative");

    const double x = delta - omega_d;
    const double g1 = rates.gamma_tilde_1;
    const double g2 = rates.gamma_tilde_2;
    const cplx mean(x, 0.5 * (g2 - g1 - 2.0 * kappa));
    const cplx half_gap = 0.5 * std::sqrt(cplx(4.0 * J * J - (g1 + g2) * (g1 + g2), 0.0));
    const cplx denom = (mean + half_gap) * (mean - half_gap);
    if (denom == cplx(0.0, 0.0)) {
        std::ostringstream msg;
        msg << "rwa_response: pole w_+ w_- = 0 at omega_d = " << omega_d
            << " (drive on an undamped normal mode)";
        throw NumericalError(msg.str());
    }
    const double root_kappa = std::sqrt(kappa);
    RwaResponse out;
    out.alpha1 = kI * root_kappa * alpha * cplx(x, g2 - kappa) / denom;
    out.alpha2 = -kI * root_kappa * alpha * J / denom;
    return out;
}

Eigen::Vector4cd harmonic_response(const MomentMatrix& m, const InputSignal& input) {
    validate_input(input);
    Eigen::Matrix4cd damped = m.data;
    damped.diagonal().array() -= kI * input.kappa;
    const Eigen::Matrix4cd shift = input.omega_d * Eigen::Matrix4cd::Identity();

    Eigen::Matrix<cplx, 8, 8> system = Eigen::Matrix<cplx, 8, 8>::Zero();
    system.topLeftCorner<4, 4>() = damped - shift;      // e^{-i omega_d t} harmonic
    system.bottomRightCorner<4, 4>() = damped + shift;  // e^{+i omega_d t} harmonic

    const int c = field_component(input.port);
    const double root_kappa = std::sqrt(input.kappa);
    Eigen::Matrix<cplx, 8, 1> rhs = Eigen::Matrix<cplx, 8, 1>::Zero();
    rhs(c) = kI * root_kappa * input.amplitude;
    rhs(4 + c + 1) = kI * root_kappa * std::conj(input.amplitude);

    const Eigen::FullPivLU<Eigen::Matrix<cplx, 8, 8>> lu(system);
    if (!lu.isInvertible()) {
        std::ostringstream msg;
        msg << "harmonic balance: singular response system at omega_d = " << input.omega_d
            << " (drive on an undamped normal mode pole)";
        throw NumericalError(msg.str());
    }
    const Eigen::Matrix<cplx, 8, 1> solution = lu.solve(rhs);
    const double residual = ((system * solution) - rhs).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (!(residual <= 1e-8 * scale)) {
        std::ostringstream msg;
        msg << "harmonic balance: response solve residual " << residual
            << " exceeds tolerance at omega_d = " << input.omega_d << " (near-pole system)";
        throw NumericalError(msg.str());
    }
    return solution.head<4>();
}

Eigen::Vector4cd numeric_response(const MomentMatrix& m, const InputSignal& input) {
    validate_input(input);
    Eigen::Matrix4cd damped = m.data;
    damped.diagonal().array() -= kI * input.kappa;
    const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(damped);
    if (solver.info() != Eigen::Success)
        throw NumericalError("numeric_response: eigenvalue computation failed");
    // Modes evolve as e^{-i mu t}: the growth rate of mode mu is Im(mu).
    const double growth = solver.eigenvalues().imag().maxCoeff();
    if (growth > 1e-12) {
        std::ostringstream msg;
        msg << "numeric_response: unstable driven configuration (fastest mode grows at rate "
            << growth << "); no steady response exists";
        throw ValidationError(msg.str());
    }
    return harmonic_response(m, input);
}

cplx transmission(const InputSignal& input, Port out_port, const Eigen::Vector4cd& response) {
    validate_input(input);
    const cplx chi = response(field_component(out_port));
    const cplx incoming = (out_port == input.port) ? input.amplitude : cplx(0.0, 0.0);
    return (incoming - kI * std::sqrt(input.kappa) * chi) / input.amplitude;
}

TransmissionMap transmission_map(double delta, const std::vector<double>& omega_d_grid,
                                 const std::vector<double>& j_grid, const EffectiveRates& rates,
                                 double kappa, MMode mode, int jobs) {
    if (omega_d_grid.empty() || j_grid.empty())
        throw ValidationError("transmission_map: grids must be non-empty");
    if (kappa < 0.0) throw ValidationError("transmission_map: kappa must be >= 0");
    if (jobs < 1) throw ValidationError("transmission_map: jobs must be >= 1");
    build_m(delta, j_grid.front(), rates, mode);  // fail fast on bad rates

    TransmissionMap map;
    map.omega_d_grid = omega_d_grid;
    map.j_grid = j_grid;
    const std::size_t n_omega = omega_d_grid.size();
    map.points.resize(n_omega * j_grid.size());

    parallel_for(map.points.size(), jobs, [&](std::size_t idx) {
        const std::size_t jj = idx / n_omega;
        const std::size_t wi = idx % n_omega;
        TransmissionPoint& pt = map.points[idx];
        pt.omega_d = omega_d_grid[wi];
        pt.J = j_grid[jj];
        const MomentMatrix moment = build_m(delta, pt.J, rates, mode);
        InputSignal tone;
        tone.port = Port::P1L;
        tone.amplitude = cplx(1.0, 0.0);
        tone.omega_d = pt.omega_d;
        tone.kappa = kappa;
        try {
            const Eigen::Vector4cd response = harmonic_response(moment, tone);
            for (int p = 0; p < 4; ++p)
                pt.t_coeffs[static_cast<std::size_t>(p)] =
                    transmission(tone, static_cast<Port>(p), response);
            const double power = std::norm(pt.t_coeffs[3]);
            pt.log_power = std::clamp(std::log(power), kLogPowerFloor, kLogPowerCeiling);
        } catch (const NumericalError&) {
            // exact pole of the lossless limit: report clipped at the ceiling
            pt.t_coeffs = {};
            pt.log_power = kLogPowerCeiling;
        }
    });

    map.ridge_omega.resize(j_grid.size());
    map.ridge_peaks.resize(j_grid.size());
    for (std::size_t jj = 0; jj < j_grid.size(); ++jj) {
        const TransmissionPoint* row = &map.points[jj * n_omega];
        std::size_t best = 0;
        for (std::size_t wi = 1; wi < n_omega; ++wi)
            if (row[wi].log_power > row[best].log_power) best = wi;
        map.ridge_omega[jj] = omega_d_grid[best];
        for (std::size_t wi = 1; wi + 1 < n_omega; ++wi)
            if (row[wi].log_power > row[wi - 1].log_power &&
                row[wi].log_power > row[wi + 1].log_power)
                map.ridge_peaks[jj].push_back(omega_d_grid[wi]);
    }
    return map;
}

}  // namespace ptqed
