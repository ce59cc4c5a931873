// Lindblad engine: generator identities, RK4 invariants and convergence,
// adiabatic resonator-only models, steady states, and the first-moment
// bridge to the 4x4 drift matrix.
#include "doctest.h"

#include <cmath>
#include <random>

#include "ptqed/hamiltonians.hpp"
#include "ptqed/lindblad.hpp"

using namespace ptqed;

namespace {

Matrix random_hermitian(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = cplx(dist(gen), dist(gen));
    return 0.5 * (m + m.adjoint());
}

DensityMatrix random_density(const SpaceLayout& layout, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    const int dim = layout.dim();
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(dist(gen), dist(gen));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix{layout, rho};
}

DensityMatrix basis_state(const SpaceLayout& layout, int index) {
    Matrix rho = Matrix::Zero(layout.dim(), layout.dim());
    rho(index, index) = 1.0;
    return DensityMatrix{layout, rho};
}

// Truncated coherent state |beta> on every resonator factor of the layout.
DensityMatrix coherent_product_state(const SpaceLayout& layout, cplx beta) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
    for (int f = 0; f < layout.factor_count(); ++f) {
        const int n = layout.factor(f).dim;
        Eigen::VectorXcd local(n);
        cplx amp(1.0, 0.0);
        double log_fact = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k > 0) {
                amp *= beta;
                log_fact += 0.5 * std::log(static_cast<double>(k));
            }
            local(k) = amp * std::exp(-log_fact);
        }
        Eigen::VectorXcd next(psi.size() * n);
        for (long i = 0; i < psi.size(); ++i)
            for (int k = 0; k < n; ++k) next(i * n + k) = psi(i) * local(k);
        psi = next;
    }
    psi /= psi.norm();
    return DensityMatrix{layout, psi * psi.adjoint()};
}

Operator number_op(const SpaceLayout& layout, int factor_index) {
    Operator a = annihilation(layout, factor_index);
    return compose(dagger(a), a, ComposeOp::Mul);
}

}  // namespace

TEST_CASE("liouvillian_apply: zero model, trace and Hermiticity preservation") {
    const SpaceLayout layout({resonator(4), qubit()});
    LindbladModel empty = make_model(zero_op(layout));
    const DensityMatrix rho = random_density(layout, 11);
    CHECK(liouvillian_apply(empty, rho.data).cwiseAbs().maxCoeff() == 0.0);

    LindbladModel model =
        make_model(Operator{layout, random_hermitian(layout.dim(), 12)},
                   {{annihilation(layout, 0), 0.4}, {pauli(layout, 1, PauliKind::Minus), 1.3}});
    for (unsigned seed = 0; seed < 10; ++seed) {
        const Matrix out = liouvillian_apply(model, random_density(layout, 20 + seed).data);
        CHECK(std::abs(out.trace()) < 1e-12);
        CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }

    const SpaceLayout other({resonator(3)});
    CHECK_THROWS_AS(liouvillian_apply(model, Matrix::Identity(3, 3)), ValidationError);
    CHECK_THROWS_AS(
        make_model(zero_op(layout), {{annihilation(other, 0), 1.0}}), ValidationError);
    CHECK_THROWS_AS(make_model(zero_op(layout), {{annihilation(layout, 0), -0.1}}),
                    ValidationError);
}

TEST_CASE("liouvillian_apply: pure decay gives d<n>/dt = -r on |1><1|") {
    const SpaceLayout layout({resonator(5)});
    const double rate = 0.7;
    LindbladModel model = make_model(zero_op(layout), {{annihilation(layout, 0), rate}});
    const DensityMatrix one = basis_state(layout, 1);
    const Matrix dn = liouvillian_apply(model, one.data);
    const cplx deriv = (number_op(layout, 0).data * dn).trace();
    CHECK(std::abs(deriv - cplx(-rate, 0.0)) < 1e-12);
}

TEST_CASE("build_liouvillian matches the direct generator") {
    const SpaceLayout layout({resonator(5)});
    const Operator a = annihilation(layout, 0);
    LindbladModel model =
        make_model(Operator{layout, random_hermitian(layout.dim(), 31)},
                   {{a, 0.3}, {compose(a, a, ComposeOp::Mul), 0.1}});
    const Eigen::SparseMatrix<cplx> liou = build_liouvillian(model);
    const int dim = layout.dim();
    for (unsigned seed = 0; seed < 5; ++seed) {
        const DensityMatrix rho = random_density(layout, 40 + seed);
        Eigen::VectorXcd vec(dim * dim);
        Eigen::Map<Matrix>(vec.data(), dim, dim) = rho.data;
        const Eigen::VectorXcd image = liou * vec;
        const Eigen::Map<const Matrix> image_mat(image.data(), dim, dim);
        const Matrix direct = liouvillian_apply(model, rho.data);
        CHECK((image_mat - direct).cwiseAbs().maxCoeff() < 1e-12);
    }

    LindbladModel timed = make_time_dependent_model(
        layout, [dim](double) { return Matrix::Zero(dim, dim); }, {});
    CHECK_THROWS_AS(build_liouvillian(timed), ValidationError);
}

TEST_CASE("full_circuit_model reproduces the generic interaction Hamiltonian") {
    SystemParams params;
    params.g1 = 0.05;
    params.delta = 0.1;

    const SpaceLayout single({resonator(6), qubit()});
    LindbladModel circuit = full_circuit_model(params, single);
    for (double t : {0.0, 0.37, 1.91, 7.3}) {
        const Matrix fast = circuit.hamiltonian_fn(t);
        const Matrix generic = full_interaction_hamiltonian(t, params, single).data;
        CHECK((fast - generic).cwiseAbs().maxCoeff() < 1e-13);
    }
    // gamma1 = gamma2 = 2 by default: one qubit-decay channel on this layout
    CHECK(circuit.dissipators.size() == 1);
    CHECK(circuit.dissipators[0].rate == 2.0);

    params.J = 0.3;
    params.kappa1 = 0.02;
    params.kappa2 = 0.02;
    const SpaceLayout pair_layout({resonator(3), qubit(), resonator(3), qubit()});
    LindbladModel coupled = full_circuit_model(params, pair_layout);
    for (double t : {0.0, 0.53, 2.71}) {
        const Matrix fast = coupled.hamiltonian_fn(t);
        const Matrix generic = full_interaction_hamiltonian(t, params, pair_layout).data;
        CHECK((fast - generic).cwiseAbs().maxCoeff() < 1e-13);
    }
    CHECK(coupled.dissipators.size() == 4);

    params.gamma1 = 0.0;
    params.gamma2 = 0.0;
    params.kappa1 = 0.0;
    params.kappa2 = 0.0;
    CHECK(full_circuit_model(params, pair_layout).dissipators.empty());
    params.gamma1 = -1.0;
    CHECK_THROWS_AS(full_circuit_model(params, pair_layout), ValidationError);
}

TEST_CASE("integrate: unitary limit conserves purity and energy") {
    const SpaceLayout layout({resonator(6)});
    // O(1) spectral radius so dt = 0.01 resolves the fastest phase
    const Operator h{layout, random_hermitian(layout.dim(), 7) / layout.dim()};
    LindbladModel model = make_model(h);
    const DensityMatrix rho0 = coherent_product_state(layout, cplx(0.8, 0.2));

    TrajectoryResult traj =
        integrate(model, rho0, 10.0, 0.01, {{"energy", h}, {"n", number_op(layout, 0)}});
    REQUIRE(traj.times.size() == traj.series[0].size());
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(10.0).epsilon(1e-12));

    const double purity0 = (rho0.data * rho0.data).trace().real();
    const double purity1 = (traj.final_state.data * traj.final_state.data).trace().real();
    CHECK(std::abs(purity1 - purity0) < 1e-8);
    CHECK(std::abs(traj.series[0].back() - traj.series[0].front()) < 1e-8);
}

TEST_CASE("integrate: vacuum Rabi oscillation, both engines agree") {
    const SpaceLayout layout({resonator(3), qubit()});
    const double g = 0.4;
    const Matrix coupling =
        g * (pauli(layout, 1, PauliKind::Plus).data * annihilation(layout, 0).data);
    const Operator h{layout, coupling + coupling.adjoint()};
    // initial |up, 0>: qubit is the fast factor
    const DensityMatrix rho0 = basis_state(layout, 1);
    const Operator excited = compose(pauli(layout, 1, PauliKind::Plus),
                                     pauli(layout, 1, PauliKind::Minus), ComposeOp::Mul);

    LindbladModel static_model = make_model(h);
    TrajectoryResult a = integrate(static_model, rho0, 5.0, 0.002, {{"pe", excited}}, 100);

    LindbladModel timed_model = make_time_dependent_model(
        layout, [h](double) { return h.data; }, {});
    TrajectoryResult b = integrate(timed_model, rho0, 5.0, 0.002, {{"pe", excited}}, 100);

    const double expected = std::cos(g * 5.0) * std::cos(g * 5.0);
    CHECK(std::abs(a.series[0].back().real() - expected) < 1e-8);
    CHECK((a.final_state.data - b.final_state.data).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("integrate: exact decay, step-doubling, and failure modes") {
    const SpaceLayout layout({resonator(6)});
    const double rate = 0.5;
    LindbladModel model = make_model(zero_op(layout), {{annihilation(layout, 0), rate}});
    const DensityMatrix one = basis_state(layout, 1);
    const std::vector<ObservableSpec> obs = {{"n", number_op(layout, 0)}};

    TrajectoryResult coarse = integrate(model, one, 4.0, 0.02, obs, 10);
    TrajectoryResult fine = integrate(model, one, 4.0, 0.01, obs, 20);
    REQUIRE(coarse.times.size() == fine.times.size());
    CHECK(std::abs(coarse.series[0].back().real() - std::exp(-rate * 4.0)) < 1e-8);
    double worst = 0.0;
    for (size_t i = 0; i < coarse.times.size(); ++i)
        worst = std::max(worst, std::abs(coarse.series[0][i] - fine.series[0][i]));
    CHECK(worst < 1e-6);  // step-doubling self-convergence gate

    // |5><5| excites the fastest cascade mode (rate*n = 2.5), so h = 2 puts
    // RK4 far outside its stability region and positivity must trip.
    CHECK_THROWS_WITH_AS(integrate(model, basis_state(layout, 5), 4.0, 2.0),
                         doctest::Contains("step"), NumericalError);
    CHECK_THROWS_AS(integrate(model, one, 4.0, 0.0), ValidationError);
    CHECK_THROWS_AS(integrate(model, one, -1.0, 0.01), ValidationError);
    const SpaceLayout other({resonator(3)});
    CHECK_THROWS_AS(integrate(model, one, 1.0, 0.01, {{"bad", number_op(other, 0)}}),
                    ValidationError);

    CHECK(default_timestep(6.1) == doctest::Approx(2.0 * M_PI / (50.0 * 6.1)).epsilon(1e-15));
    CHECK_THROWS_AS(default_timestep(0.0), ValidationError);
}

TEST_CASE("adiabatic single-resonator model: vacuum limit and warnings") {
    LindbladModel loss = adiabatic_single_resonator_model(0.2, 1.0, {0.4, 0.0}, 0.1, 20);
    CHECK(loss.warnings.empty());
    const DensityMatrix vac = steady_state(loss);
    CHECK(expectation(vac, number_op(loss.layout, 0)).real() < 1e-10);
    CHECK(vac.data(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(adiabatic_single_resonator_model(0.2, 1.0, {0.3, 0.3}, 0.1, 8).warnings.size() == 1);
    CHECK(adiabatic_single_resonator_model(0.2, 1.0, {0.3, 0.5}, 0.1, 8).warnings.size() == 1);
    CHECK_THROWS_AS(adiabatic_single_resonator_model(0.2, 0.0, {0.4, 0.2}, 0.1, 8),
                    ValidationError);
    CHECK_THROWS_AS(adiabatic_single_resonator_model(0.2, 1.0, {0.4, 0.2}, 0.1, 3),
                    ValidationError);
}

TEST_CASE("adiabatic single-resonator model: squeezed-vacuum steady state") {
    // canonical drive-derived coefficients at N_fock = 60
    const GCoefficients g = bessel_g(DriveParams{});
    LindbladModel model = adiabatic_single_resonator_model(0.2, 1.0, g, 0.1, 60);
    const DensityMatrix rho = steady_state(model);
    const double n_ss = expectation(rho, number_op(model.layout, 0)).real();
    const double formula =
        g.g_minus * g.g_minus / (g.g_plus * g.g_plus - g.g_minus * g.g_minus);
    CHECK(std::abs(n_ss - formula) / formula < 1e-8);

    // the occupation does not depend on the detuning
    LindbladModel detuned = adiabatic_single_resonator_model(0.2, 1.0, g, 0.7, 60);
    const double n_detuned =
        expectation(steady_state(detuned), number_op(detuned.layout, 0)).real();
    CHECK(std::abs(n_detuned - n_ss) < 1e-10);

    // G+^2 - G-^2 = 1: steady state is annihilated by b
    const double r_sq = 0.5;
    const GCoefficients unit{std::cosh(r_sq), std::sinh(r_sq)};
    // N_fock = 40: the squeezed-vacuum tail alone contributes ~1e-8 to <b†b> at 30
    LindbladModel squeezer = adiabatic_single_resonator_model(0.3, 2.0, unit, 0.0, 40);
    const DensityMatrix sq = steady_state(squeezer);
    const Operator a = annihilation(squeezer.layout, 0);
    const Operator b = compose(scale(a, unit.g_plus), scale(dagger(a), unit.g_minus),
                               ComposeOp::Add);
    const double b_occupation =
        expectation(sq, compose(dagger(b), b, ComposeOp::Mul)).real();
    CHECK(b_occupation < 1e-8);
}

TEST_CASE("steady_state: decay to vacuum and dual-method agreement") {
    const SpaceLayout layout({resonator(8)});
    LindbladModel decay = make_model(zero_op(layout), {{annihilation(layout, 0), 1.0}});
    const DensityMatrix vac = steady_state(decay);
    Matrix expected = Matrix::Zero(8, 8);
    expected(0, 0) = 1.0;
    CHECK((vac.data - expected).cwiseAbs().maxCoeff() < 1e-10);

    // 40-dim model solved by both paths
    LindbladModel model = adiabatic_single_resonator_model(0.5, 2.0, {0.6, 0.3}, 0.05, 40);
    SteadyOptions null_opts;
    null_opts.method = SteadyMethod::NullSpace;
    SteadyOptions long_opts;
    long_opts.method = SteadyMethod::LongTime;
    const DensityMatrix via_kernel = steady_state(model, null_opts);
    const DensityMatrix via_time = steady_state(model, long_opts);
    CHECK((via_kernel.data - via_time.data).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("steady_state: degeneracy, gain dominance, and tail gate") {
    const SpaceLayout layout({resonator(6)});
    LindbladModel dephasing = make_model(zero_op(layout), {{number_op(layout, 0), 0.8}});
    CHECK_THROWS_WITH_AS(steady_state(dephasing), doctest::Contains("degenerate"),
                         NumericalError);

    // gain-dominant: population piles at the truncation edge
    LindbladModel gain = adiabatic_single_resonator_model(0.2, 1.0, {0.3, 0.5}, 0.1, 12);
    CHECK_THROWS_WITH_AS(steady_state(gain), doctest::Contains("truncation"), NumericalError);

    // heavy- but finite-tailed loss model: strict gate trips, relaxed gate passes
    LindbladModel heavy = adiabatic_single_resonator_model(0.2, 1.0, {0.4, 0.36}, 0.1, 20);
    CHECK_THROWS_WITH_AS(steady_state(heavy), doctest::Contains("truncation"), NumericalError);
    SteadyOptions relaxed;
    relaxed.tail_tol = 0.1;
    const double n_heavy =
        expectation(steady_state(heavy, relaxed), number_op(heavy.layout, 0)).real();
    CHECK(n_heavy > 1.0);  // ratio 0.9: formula value 0.81/0.19 = 4.26, truncation-biased

    LindbladModel timed = make_time_dependent_model(
        layout, [&](double) { return Matrix::Zero(6, 6); }, {});
    CHECK_THROWS_AS(steady_state(timed), ValidationError);
}

TEST_CASE("check_fock_tail: per-factor top-level populations") {
    const SpaceLayout layout({resonator(10)});
    Matrix diag = Matrix::Zero(10, 10);
    for (int i = 0; i < 10; ++i) diag(i, i) = 0.1;
    CHECK_THROWS_AS(check_fock_tail(DensityMatrix{layout, diag}), NumericalError);
    CHECK_NOTHROW(check_fock_tail(DensityMatrix{layout, diag}, 0.3));

    const SpaceLayout mixed({resonator(6), qubit()});
    Matrix ground = Matrix::Zero(12, 12);
    ground(1, 1) = 1.0;  // |0, up>: both top Fock levels empty
    CHECK_NOTHROW(check_fock_tail(DensityMatrix{mixed, ground}));

    const SpaceLayout spin_only({qubit()});
    Matrix half = 0.5 * Matrix::Identity(2, 2);
    CHECK_NOTHROW(check_fock_tail(DensityMatrix{spin_only, half}));
}

TEST_CASE("adiabatic two-resonator model: J = 0 factorizes, modes share dissipators") {
    SystemParams params;
    params.g1 = 0.2;
    params.g2 = 0.2;
    params.gamma1 = 1.0;
    params.gamma2 = 1.0;
    params.delta = 0.1;
    params.J = 0.0;
    const GCoefficients g1{0.4, 0.2};
    const GCoefficients g2{0.5, 0.1};

    // At J = 0 the generator is a sum of single-resonator generators, so the
    // truncated steady state factorizes exactly; the comparison is truncation-
    // independent and the tail gate can be relaxed for the small N_fock here.
    SteadyOptions loose;
    loose.tail_tol = 1e-3;
    LindbladModel pair_model = adiabatic_two_resonator_model(params, g1, g2, MMode::NonRwa, 8);
    const DensityMatrix rho = steady_state(pair_model, loose);
    LindbladModel single1 = adiabatic_single_resonator_model(0.2, 1.0, g1, 0.1, 8);
    LindbladModel single2 = adiabatic_single_resonator_model(0.2, 1.0, g2, 0.1, 8);
    const double n1_pair = expectation(rho, number_op(pair_model.layout, 0)).real();
    const double n2_pair = expectation(rho, number_op(pair_model.layout, 1)).real();
    const double n1 =
        expectation(steady_state(single1, loose), number_op(single1.layout, 0)).real();
    const double n2 =
        expectation(steady_state(single2, loose), number_op(single2.layout, 0)).real();
    CHECK(std::abs(n1_pair - n1) < 1e-8);
    CHECK(std::abs(n2_pair - n2) < 1e-8);

    params.J = 0.3;
    LindbladModel nonrwa = adiabatic_two_resonator_model(params, g1, g2, MMode::NonRwa, 6);
    LindbladModel rwa = adiabatic_two_resonator_model(params, g1, g2, MMode::Rwa, 6);
    REQUIRE(nonrwa.dissipators.size() == 2);
    for (size_t k = 0; k < 2; ++k) {
        CHECK(nonrwa.dissipators[k].rate == rwa.dissipators[k].rate);
        CHECK((nonrwa.dissipators[k].collapse.data - rwa.dissipators[k].collapse.data)
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
    const Matrix a1 = annihilation(nonrwa.layout, 0).data;
    const Matrix a2 = annihilation(nonrwa.layout, 1).data;
    const Matrix counter = params.J * (a1 * a2 + a1.adjoint() * a2.adjoint());
    CHECK((nonrwa.hamiltonian.data - rwa.hamiltonian.data - counter).cwiseAbs().maxCoeff() <
          1e-14);

    // gain-dominant second resonator is the intended operating point: warned, not fatal
    CHECK(adiabatic_two_resonator_model(params, g1, {0.1, 0.5}, MMode::Rwa, 6)
              .warnings.size() == 1);
    params.gamma2 = 0.0;
    CHECK_THROWS_AS(adiabatic_two_resonator_model(params, g1, g2, MMode::Rwa, 6),
                    ValidationError);
}

TEST_CASE("first-moment bridge: trajectory derivatives follow the drift matrix") {
    SystemParams params;
    params.g1 = 1.0;
    params.g2 = 1.0;
    params.gamma1 = 2.0;
    params.gamma2 = 2.0;
    params.delta = 1.0;
    params.J = 0.3;
    const GCoefficients g1{std::sqrt(0.15), std::sqrt(0.05)};
    const GCoefficients g2{std::sqrt(0.05), std::sqrt(0.15)};
    const EffectiveRates rates{0.1, 0.1};  // (rate/2)|G+^2 - G-^2| with rate = 4g^2/gamma = 2

    for (MMode mode : {MMode::NonRwa, MMode::Rwa}) {
        LindbladModel model = adiabatic_two_resonator_model(params, g1, g2, mode, 10);
        const DensityMatrix rho0 = coherent_product_state(model.layout, cplx(0.1, 0.0));
        std::vector<ObservableSpec> moments;
        for (int j = 0; j < 2; ++j) {
            const Operator a = annihilation(model.layout, j);
            moments.push_back({"a" + std::to_string(j + 1), a});
            moments.push_back({"a" + std::to_string(j + 1) + "_dag", dagger(a)});
        }
        TrajectoryResult traj = integrate(model, rho0, 0.4, 1e-3, moments, 5);

        const Eigen::Matrix4cd m = build_m(params.delta, params.J, rates, mode).data;
        const double h = traj.times[1] - traj.times[0];
        double worst = 0.0;
        for (size_t k = 2; k + 2 < traj.times.size(); ++k) {
            Eigen::Vector4cd alpha, deriv_fd;
            for (int c = 0; c < 4; ++c) {
                const auto& s = traj.series[static_cast<size_t>(c)];
                alpha(c) = s[k];
                // fourth-order central difference
                deriv_fd(c) = (-s[k + 2] + 8.0 * s[k + 1] - 8.0 * s[k - 1] + s[k - 2]) /
                              (12.0 * h);
            }
            const Eigen::Vector4cd deriv_model = cplx(0.0, -1.0) * (m * alpha);
            worst = std::max(worst, (deriv_fd - deriv_model).cwiseAbs().maxCoeff());
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("adiabatic_error_report: identical models, gamma ordering, implied qubit value") {
    const GCoefficients g{0.4, 0.2};
    LindbladModel reduced = adiabatic_single_resonator_model(0.2, 1.0, g, 0.1, 24);
    CHECK(adiabatic_error_report(reduced, reduced, ObservableKind::ResonatorNumber, 1e5) ==
          0.0);

    auto full_model = [&](double gamma) {
        const SpaceLayout layout({resonator(24), qubit()});
        SystemParams params;
        params.g1 = 0.2;
        params.delta = 0.1;
        params.J = 0.0;
        const Operator h = effective_hamiltonian_rwa(params, {g, g}, layout);
        return make_model(h, {{pauli(layout, 1, PauliKind::Minus), gamma}});
    };
    std::vector<double> errors;
    for (double gamma : {1.0, 10.0}) {
        LindbladModel full = full_model(gamma);
        LindbladModel matched = adiabatic_single_resonator_model(0.2, gamma, g, 0.1, 24);
        errors.push_back(
            adiabatic_error_report(full, matched, ObservableKind::ResonatorNumber, 1e5));
    }
    CHECK(errors[1] < errors[0]);  // larger gamma: better elimination
    CHECK(errors[0] < 0.5);
    CHECK(errors[1] < 0.05);
    // error ~ (g/gamma)^2: tenfold gamma, slope 2 +/- 0.5 on the log-log grid
    const double slope = std::log10(errors[0] / errors[1]);
    CHECK(slope > 1.5);
    CHECK(slope < 2.5);

    // qubit excitation vs the reduced model's implied ground-state value (0)
    const double qubit_err = adiabatic_error_report(
        full_model(1.0), reduced, ObservableKind::QubitExcitation, 1e5);
    CHECK(qubit_err == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(
        adiabatic_error_report(reduced, reduced, ObservableKind::ResonatorNumber, 0.0),
        ValidationError);
    CHECK_THROWS_AS(
        adiabatic_error_report(reduced, reduced, ObservableKind::ResonatorNumber, 1e5, 3),
        ValidationError);
}
