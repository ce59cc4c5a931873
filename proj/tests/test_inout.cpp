// Transmission spectroscopy: closed-form rotating-frame response, harmonic
// balance against independent oracles, input-output assembly, and the
// (omega_d, J) transmission map with its ridge structure.
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptqed/errors.hpp"
#include "ptqed/inout.hpp"
#include "ptqed/sweep.hpp"

using namespace ptqed;

namespace {

std::vector<double> make_grid(double start, double stop, int count) {
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

// Independent scalar evaluation of the driven rotating-frame denominator.
cplx rwa_denominator(double delta, double omega_d, double J, const EffectiveRates& rates,
                     double kappa) {
    const cplx mean(delta - omega_d,
                    0.5 * (rates.gamma_tilde_2 - rates.gamma_tilde_1 - 2.0 * kappa));
    const cplx half_gap =
        0.5 * std::sqrt(cplx(4.0 * J * J -
                                 (rates.gamma_tilde_1 + rates.gamma_tilde_2) *
                                     (rates.gamma_tilde_1 + rates.gamma_tilde_2),
                             0.0));
    return (mean + half_gap) * (mean - half_gap);
}

// Time-domain oracle: RK4 on dv/dt = -i (M - i kappa I) v + F(t) from v = 0,
// then a least-squares fit of the tail onto the two drive harmonics. Shares
// only the ODE definition with the library, not the harmonic-balance solve.
struct TailFit {
    Eigen::Vector4cd at_drive;      // coefficient of e^{-i omega_d t}
    Eigen::Vector4cd at_conjugate;  // coefficient of e^{+i omega_d t}
};

TailFit time_domain_fit(const MomentMatrix& m, const InputSignal& input, double t_end,
                        double dt) {
    const cplx i1(0.0, 1.0);
    Eigen::Matrix4cd damped = m.data;
    damped.diagonal().array() -= i1 * input.kappa;
    const int c = (input.port == Port::P1L || input.port == Port::P1R) ? 0 : 2;
    const double root_kappa = std::sqrt(input.kappa);

    const auto rhs = [&](double t, const Eigen::Vector4cd& v) {
        Eigen::Vector4cd f = -i1 * (damped * v);
        f(c) -= root_kappa * input.amplitude * std::exp(-i1 * input.omega_d * t);
        f(c + 1) -= root_kappa * std::conj(input.amplitude) * std::exp(i1 * input.omega_d * t);
        return f;
    };

    const int n_steps = static_cast<int>(std::lround(t_end / dt));
    const int stride = 20;
    std::vector<double> times;
    std::vector<Eigen::Vector4cd> samples;
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    for (int k = 0; k < n_steps; ++k) {
        const double t = k * dt;
        const Eigen::Vector4cd k1 = rhs(t, v);
        const Eigen::Vector4cd k2 = rhs(t + 0.5 * dt, v + 0.5 * dt * k1);
        const Eigen::Vector4cd k3 = rhs(t + 0.5 * dt, v + 0.5 * dt * k2);
        const Eigen::Vector4cd k4 = rhs(t + dt, v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((k + 1) % stride == 0 && (k + 1) * dt >= 0.75 * t_end) {
            times.push_back((k + 1) * dt);
            samples.push_back(v);
        }
    }

    TailFit fit;
    for (int comp = 0; comp < 4; ++comp) {
        cplx s12(0.0, 0.0), b1(0.0, 0.0), b2(0.0, 0.0);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const cplx u1 = std::exp(-i1 * input.omega_d * times[k]);
            const cplx u2 = std::exp(i1 * input.omega_d * times[k]);
            s12 += std::conj(u1) * u2;
            b1 += std::conj(u1) * samples[k](comp);
            b2 += std::conj(u2) * samples[k](comp);
        }
        const double n = static_cast<double>(times.size());
        Eigen::Matrix2cd gram;
        gram << cplx(n, 0.0), s12, std::conj(s12), cplx(n, 0.0);
        const Eigen::Vector2cd sol = gram.fullPivLu().solve(Eigen::Vector2cd(b1, b2));
        fit.at_drive(comp) = sol(0);
        fit.at_conjugate(comp) = sol(1);
    }
    return fit;
}

}  // namespace

TEST_CASE("rwa_response: decoupling, pinned magnitude, resonance rise, pole") {
    const EffectiveRates rates{0.1, 0.1};
    const double kappa = 0.02;

    // J = 0: no cross-transmission at all
    CHECK(rwa_response(1.0, 0.8, 0.0, rates, kappa, cplx(1.0, 0.0)).alpha2 == cplx(0.0, 0.0));

    // mid-band point: |T_2R| = kappa J / |w+ w-| = 0.006 / 0.0804 = 5/67
    const RwaResponse mid = rwa_response(1.0, 1.0, 0.3, rates, kappa, cplx(1.0, 0.0));
    const double t_mag = std::sqrt(kappa) * std::abs(mid.alpha2);
    CHECK(t_mag == doctest::Approx(5.0 / 67.0).epsilon(1e-12));
    // alpha1 at the same point: i sqrt(k) * i(0.08) / (-0.0804) is real positive
    CHECK(mid.alpha1.real() == doctest::Approx(std::sqrt(kappa) * 0.08 / 0.0804).epsilon(1e-12));
    CHECK(std::abs(mid.alpha1.imag()) < 1e-15);

    // scanning across the band: the normal-mode resonances rise well above mid-band
    double peak = 0.0;
    for (double w : make_grid(0.5, 1.5, 201)) {
        const RwaResponse r = rwa_response(1.0, w, 0.3, rates, kappa, cplx(1.0, 0.0));
        peak = std::max(peak, std::sqrt(kappa) * std::abs(r.alpha2));
    }
    CHECK(peak > 5.0 * t_mag);

    // exact lossless pole: delta - omega_d = -J with J = 1/4 exactly
    CHECK_THROWS_WITH_AS(rwa_response(1.0, 1.25, 0.25, EffectiveRates{0.0, 0.0}, 0.0, cplx(1.0, 0.0)),
                         doctest::Contains("pole"), NumericalError);

    CHECK_THROWS_AS(rwa_response(1.0, 1.0, 0.3, rates, -0.1, cplx(1.0, 0.0)), ValidationError);
    CHECK_THROWS_AS(rwa_response(1.0, 1.0, 0.3, rates, kappa, cplx(0.0, 0.0)), ValidationError);
    CHECK_THROWS_AS(rwa_response(1.0, 1.0, 0.3, EffectiveRates{-0.1, 0.1}, kappa, cplx(1.0, 0.0)),
                    ValidationError);
}

TEST_CASE("harmonic_response: agrees with the closed form on a random rwa grid") {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int draw = 0; draw < 50; ++draw) {
        const double delta = -1.0 + 3.0 * u(gen);
        const double J = u(gen);
        const EffectiveRates rates{0.01 + 0.29 * u(gen), 0.01 + 0.29 * u(gen)};
        const double kappa = 0.005 + 0.095 * u(gen);
        const double omega_d = -1.0 + 4.0 * u(gen);
        const cplx alpha(0.2 + u(gen), u(gen) - 0.5);

        InputSignal tone;
        tone.amplitude = alpha;
        tone.omega_d = omega_d;
        tone.kappa = kappa;
        const Eigen::Vector4cd resp = harmonic_response(build_m(delta, J, rates, MMode::Rwa), tone);
        const RwaResponse closed = rwa_response(delta, omega_d, J, rates, kappa, alpha);
        const double scale = std::max(1.0, std::abs(closed.alpha1));
        CHECK(std::abs(resp(0) - closed.alpha1) < 1e-8 * scale);
        CHECK(std::abs(resp(2) - closed.alpha2) < 1e-8 * scale);
        // rwa drive never reaches the daggered components at this harmonic
        CHECK(std::abs(resp(1)) < 1e-12);
        CHECK(std::abs(resp(3)) < 1e-12);
    }
}

TEST_CASE("harmonic_response: amplitudes vanish with growing port loss") {
    InputSignal tone;
    tone.omega_d = 1.2;
    const EffectiveRates rates{0.1, 0.05};
    std::vector<double> field_mag, cross_mag;
    for (double kappa : {10.0, 100.0, 1000.0}) {
        tone.kappa = kappa;
        const Eigen::Vector4cd resp =
            harmonic_response(build_m(1.0, 0.3, rates, MMode::NonRwa), tone);
        field_mag.push_back(std::abs(resp(0)));
        cross_mag.push_back(std::abs(resp(2)));
    }
    CHECK(field_mag[0] > field_mag[1]);
    CHECK(field_mag[1] > field_mag[2]);
    CHECK(cross_mag[0] > cross_mag[1]);
    CHECK(cross_mag[1] > cross_mag[2]);
    const double field_slope = std::log(field_mag[2] / field_mag[0]) / std::log(100.0);
    const double cross_slope = std::log(cross_mag[2] / cross_mag[0]) / std::log(100.0);
    CHECK(field_slope == doctest::Approx(-0.5).epsilon(0.2));
    CHECK(cross_slope == doctest::Approx(-1.5).epsilon(0.1));
}

TEST_CASE("numeric_response: stability gate, singular pole, stable pass-through") {
    InputSignal tone;
    tone.omega_d = 1.0;
    tone.kappa = 0.05;

    // gain 0.3 against total loss 0.05: fastest mode grows, no steady response
    CHECK_THROWS_WITH_AS(numeric_response(build_m(1.0, 0.0, {0.05, 0.3}, MMode::Rwa), tone),
                         doctest::Contains("unstable"), ValidationError);

    // lossless marginal system probed exactly on a normal mode: singular solve
    InputSignal pole_tone;
    pole_tone.omega_d = 1.25;
    pole_tone.kappa = 0.0;
    CHECK_THROWS_WITH_AS(numeric_response(build_m(1.0, 0.25, {0.0, 0.0}, MMode::Rwa), pole_tone),
                         doctest::Contains("singular"), NumericalError);
    CHECK_THROWS_WITH_AS(harmonic_response(build_m(1.0, 0.25, {0.0, 0.0}, MMode::Rwa), pole_tone),
                         doctest::Contains("singular"), NumericalError);

    // stable configuration: the gate is transparent
    tone.kappa = 0.1;
    const MomentMatrix m = build_m(1.0, 0.3, {0.1, 0.05}, MMode::NonRwa);
    const Eigen::Vector4cd gated = numeric_response(m, tone);
    const Eigen::Vector4cd formal = harmonic_response(m, tone);
    CHECK((gated - formal).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transmission: linearity, symmetric ports, closed limits, closed form") {
    const EffectiveRates rates{0.1, 0.1};
    InputSignal tone;
    tone.amplitude = cplx(0.7, 0.3);
    tone.omega_d = 0.9;
    tone.kappa = 0.02;
    const MomentMatrix m = build_m(1.0, 0.3, rates, MMode::NonRwa);
    const Eigen::Vector4cd resp = harmonic_response(m, tone);

    // T is independent of the input amplitude
    InputSignal doubled = tone;
    doubled.amplitude *= 2.0;
    const Eigen::Vector4cd resp2 = harmonic_response(m, doubled);
    for (Port p : {Port::P1L, Port::P1R, Port::P2L, Port::P2R})
        CHECK(std::abs(transmission(tone, p, resp) - transmission(doubled, p, resp2)) < 1e-12);

    // left and right ports of one resonator transmit identically
    CHECK(transmission(tone, Port::P2L, resp) == transmission(tone, Port::P2R, resp));

    // kappa = 0: decoupled leads — full reflection, no transmission
    InputSignal closed = tone;
    closed.kappa = 0.0;
    const Eigen::Vector4cd silent = harmonic_response(m, closed);
    CHECK(transmission(closed, Port::P1L, silent) == cplx(1.0, 0.0));
    CHECK(std::abs(transmission(closed, Port::P2R, silent)) < 1e-15);

    // J = 0: no path from resonator 1 to resonator 2
    const Eigen::Vector4cd split = harmonic_response(build_m(1.0, 0.0, rates, MMode::Rwa), tone);
    CHECK(std::abs(transmission(tone, Port::P2R, split)) < 1e-15);

    // rotating-wave pipeline against the scalar closed form -kappa J / (w+ w-).
    // (The corresponding printed form carries a stray factor i; magnitudes
    // agree, and the assembled phase is the one the in-out relation fixes.)
    const MomentMatrix m_rwa = build_m(1.0, 0.3, rates, MMode::Rwa);
    for (double w : {0.6, 1.0, 1.37}) {
        InputSignal probe = tone;
        probe.omega_d = w;
        const cplx t_pipeline =
            transmission(probe, Port::P2R, harmonic_response(m_rwa, probe));
        const cplx t_closed = -probe.kappa * 0.3 / rwa_denominator(1.0, w, 0.3, rates, probe.kappa);
        CHECK(std::abs(t_pipeline - t_closed) < 1e-10);
        const RwaResponse ana = rwa_response(1.0, w, 0.3, rates, probe.kappa, probe.amplitude);
        const cplx t_from_alpha =
            -cplx(0.0, 1.0) * std::sqrt(probe.kappa) * ana.alpha2 / probe.amplitude;
        CHECK(std::abs(t_pipeline - t_from_alpha) < 1e-12);
    }

    CHECK(std::string(port_name(Port::P1L)) == "1L");
    CHECK(std::string(port_name(Port::P2R)) == "2R");
}

TEST_CASE("time-domain steady state reproduces the harmonic-balance amplitudes") {
    const MomentMatrix m = build_m(1.0, 0.3, {0.1, 0.05}, MMode::NonRwa);
    InputSignal tone;
    tone.amplitude = cplx(0.8, -0.15);
    tone.omega_d = 1.1;
    tone.kappa = 0.1;

    const Eigen::Vector4cd balance = harmonic_response(m, tone);
    const TailFit fit = time_domain_fit(m, tone, 50.0 / tone.kappa, 0.005);
    for (int c = 0; c < 4; ++c)
        CHECK(std::abs(fit.at_drive(c) - balance(c)) < 1e-4);
    // expectation values stay conjugate-paired across the two sidebands
    CHECK(std::abs(fit.at_conjugate(1) - std::conj(fit.at_drive(0))) < 1e-4);
    CHECK(std::abs(fit.at_conjugate(3) - std::conj(fit.at_drive(2))) < 1e-4);
}

TEST_CASE("transmission_map: geometry, clipping, and validation") {
    const EffectiveRates rates{0.1, 0.1};
    const std::vector<double> omega = make_grid(0.0, 2.0, 41);
    const std::vector<double> js = {0.0, 0.05, 0.2, 0.3, 0.45};
    const TransmissionMap map = transmission_map(1.0, omega, js, rates, 0.02, MMode::NonRwa);

    REQUIRE(map.points.size() == omega.size() * js.size());
    REQUIRE(map.ridge_omega.size() == js.size());
    for (std::size_t jj = 0; jj < js.size(); ++jj) {
        for (std::size_t wi = 0; wi < omega.size(); ++wi) {
            const TransmissionPoint& pt = map.points[jj * omega.size() + wi];
            CHECK(pt.omega_d == omega[wi]);
            CHECK(pt.J == js[jj]);
            CHECK(pt.log_power >= kLogPowerFloor);
            CHECK(pt.log_power <= kLogPowerCeiling);
            CHECK(pt.t_coeffs[2] == pt.t_coeffs[3]);
        }
    }
    // J = 0 row: zero transmission everywhere, clipped at the floor
    for (std::size_t wi = 0; wi < omega.size(); ++wi) {
        const TransmissionPoint& pt = map.points[wi];
        CHECK(std::abs(pt.t_coeffs[3]) < 1e-15);
        CHECK(pt.log_power == kLogPowerFloor);
    }

    CHECK_THROWS_AS(transmission_map(1.0, {}, js, rates, 0.02, MMode::NonRwa), ValidationError);
    CHECK_THROWS_AS(transmission_map(1.0, omega, {}, rates, 0.02, MMode::NonRwa), ValidationError);
    CHECK_THROWS_AS(transmission_map(1.0, omega, js, rates, -0.1, MMode::NonRwa), ValidationError);
    CHECK_THROWS_AS(transmission_map(1.0, omega, js, rates, 0.02, MMode::NonRwa, 0),
                    ValidationError);
}

TEST_CASE("transmission_map: ridges track the mode frequencies and merge") {
    const EffectiveRates rates{0.1, 0.1};
    const std::vector<double> omega = make_grid(0.0, 2.0, 201);  // step 0.01
    const std::vector<double> js = {0.05, 0.2, 0.3, 0.45};
    const TransmissionMap map = transmission_map(1.0, omega, js, rates, 0.02, MMode::NonRwa);
    const double step = omega[1] - omega[0];

    for (std::size_t jj = 1; jj < js.size(); ++jj) {  // inside the exact window
        CHECK(classify(1.0, js[jj], rates, MMode::NonRwa).phase == Phase::ExactPT);
        const auto& peaks = map.ridge_peaks[jj];
        REQUIRE(peaks.size() == 2);
        const auto branches = eigenvalues_closed_form(1.0, js[jj], rates, MMode::NonRwa);
        std::vector<double> expected = {branches[0].real(), branches[1].real()};
        std::sort(expected.begin(), expected.end());
        CHECK(std::abs(peaks[0] - expected[0]) <= step + 1e-9);
        CHECK(std::abs(peaks[1] - expected[1]) <= step + 1e-9);
    }

    // below the first critical coupling the two ridges merge into one
    CHECK(map.ridge_peaks[0].size() == 1);
    CHECK(std::abs(map.ridge_omega[0] - 1.0) <= step + 1e-9);
}

TEST_CASE("transmission_map: balanced rwa symmetry and worker-count invariance") {
    const EffectiveRates rates{0.1, 0.1};
    const std::vector<double> omega = make_grid(0.5, 1.5, 101);
    const TransmissionMap map =
        transmission_map(1.0, omega, {0.3}, rates, 1e-4, MMode::Rwa);
    const std::size_t n = omega.size();
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(map.points[i].log_power - map.points[n - 1 - i].log_power) < 1e-3);

    const std::vector<double> wgrid = make_grid(0.0, 2.0, 41);
    const std::vector<double> js = {0.05, 0.2, 0.3};
    const TransmissionMap serial = transmission_map(1.0, wgrid, js, rates, 0.02, MMode::NonRwa, 1);
    const TransmissionMap threaded =
        transmission_map(1.0, wgrid, js, rates, 0.02, MMode::NonRwa, 4);
    REQUIRE(serial.points.size() == threaded.points.size());
    for (std::size_t i = 0; i < serial.points.size(); ++i) {
        CHECK(serial.points[i].log_power == threaded.points[i].log_power);
        for (int p = 0; p < 4; ++p)
            CHECK(serial.points[i].t_coeffs[static_cast<std::size_t>(p)] ==
                  threaded.points[i].t_coeffs[static_cast<std::size_t>(p)]);
    }
    CHECK(serial.ridge_omega == threaded.ridge_omega);
}

TEST_CASE("parallel_for: full coverage, inline path, deterministic failure") {
    std::vector<std::size_t> out(101, 0);
    parallel_for(out.size(), 7, [&](std::size_t i) { out[i] = i * i; });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);

    std::vector<std::size_t> inline_out(11, 0);
    parallel_for(inline_out.size(), 1, [&](std::size_t i) { inline_out[i] = i + 1; });
    for (std::size_t i = 0; i < inline_out.size(); ++i) CHECK(inline_out[i] == i + 1);

    CHECK_THROWS_WITH_AS(parallel_for(100, 7,
                                      [](std::size_t i) {
                                          if (i == 13 || i == 77)
                                              throw std::runtime_error(std::to_string(i));
                                      }),
                         "13", std::runtime_error);
    CHECK_THROWS_AS(parallel_for(10, 0, [](std::size_t) {}), ValidationError);
}
