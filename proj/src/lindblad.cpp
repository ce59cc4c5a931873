#include "ptqed/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "ptqed/hamiltonians.hpp"

namespace ptqed {

namespace {

std::vector<int> factors_of(const SpaceLayout& layout, FactorKind kind) {
    std::vector<int> out;
    for (int i = 0; i < layout.factor_count(); ++i)
        if (layout.factor(i).kind == kind) out.push_back(i);
    return out;
}

// Column stride of factor i (product of the dims of all later factors).
int factor_stride(const SpaceLayout& layout, int i) {
    int stride = 1;
    for (int k = i + 1; k < layout.factor_count(); ++k) stride *= layout.factor(k).dim;
    return stride;
}

double herm_defect(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

void check_step_invariants(const Eigen::Ref<const Matrix>& rho, long step, double t,
                           const char* what) {
    const double trace_drift = std::abs(rho.trace() - cplx(1.0, 0.0));
    if (trace_drift > tol::kTrace) {
        std::ostringstream msg;
        msg << what << ": trace invariant breached at step " << step << " (t = " << t
            << ", |trace - 1| = " << trace_drift << ") — dt too large or model ill-posed";
        throw NumericalError(msg.str());
    }
    const double herm = herm_defect(rho);
    if (herm > tol::kHermiticity) {
        std::ostringstream msg;
        msg << what << ": Hermiticity invariant breached at step " << step << " (t = " << t
            << ", max|rho - rho^dag| = " << herm << ") — dt too large or model ill-posed";
        throw NumericalError(msg.str());
    }
}

void check_positivity_at(const Eigen::Ref<const Matrix>& rho, long step, double t) {
    Matrix sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol::kPositivity) {
        std::ostringstream msg;
        msg << "integrate: positivity invariant breached at step " << step << " (t = " << t
            << ", min eigenvalue = " << min_eig << ") — dt too large or model ill-posed";
        throw NumericalError(msg.str());
    }
}

// Appends the triplets of scale * (P kron Q); the kron row/col convention
// matches column-stacked vectorization (vec index = row + col*dim).
void add_kron(std::vector<Eigen::Triplet<cplx>>& trips, const Matrix& p, const Matrix& q,
              cplx scale) {
    const int dp = static_cast<int>(p.rows());
    const int dq = static_cast<int>(q.rows());
    for (int jp = 0; jp < dp; ++jp)
        for (int ip = 0; ip < dp; ++ip) {
            const cplx pv = p(ip, jp);
            if (pv == cplx(0.0, 0.0)) continue;
            for (int jq = 0; jq < dq; ++jq)
                for (int iq = 0; iq < dq; ++iq) {
                    const cplx qv = q(iq, jq);
                    if (qv == cplx(0.0, 0.0)) continue;
                    trips.emplace_back(ip * dq + iq, jp * dq + jq, scale * pv * qv);
                }
        }
}

double sparse_inf_norm(const Eigen::SparseMatrix<cplx>& m) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(m, k); it; ++it)
            row_sums(it.row()) += std::abs(it.value());
    return row_sums.maxCoeff();
}

// Solves L x = 0, trace(x) = 1 by replacing the Liouvillian row `trace_row`
// (always a diagonal-element row, whose equation is implied by trace
// preservation) with the trace constraint.
Eigen::VectorXcd solve_kernel(const Eigen::SparseMatrix<cplx>& liou, int dim, int trace_row) {
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(static_cast<size_t>(liou.nonZeros()) + static_cast<size_t>(dim));
    for (int k = 0; k < liou.outerSize(); ++k)
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(liou, k); it; ++it)
            if (it.row() != trace_row)
                trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                   it.value());
    for (int k = 0; k < dim; ++k) trips.emplace_back(trace_row, k * (dim + 1), cplx(1.0, 0.0));

    Eigen::SparseMatrix<cplx> sys(dim * dim, dim * dim);
    sys.setFromTriplets(trips.begin(), trips.end());
    sys.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> solver;
    solver.compute(sys);
    if (solver.info() != Eigen::Success)
        throw NumericalError(
            "steady_state: linear solve failed — degenerate (non-unique) null space or "
            "numerically singular Liouvillian");
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim * dim);
    rhs(trace_row) = 1.0;
    Eigen::VectorXcd x = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
        throw NumericalError("steady_state: back-substitution failed on the kernel system");
    return x;
}

DensityMatrix finalize_steady(const SpaceLayout& layout, const Matrix& raw, double tail_tol) {
    const double herm = herm_defect(raw);
    if (herm > 1e-8) {
        std::ostringstream msg;
        msg << "steady_state: solution is not Hermitian (defect " << herm
            << ") — degenerate or ill-conditioned Liouvillian";
        throw NumericalError(msg.str());
    }
    Matrix sym = 0.5 * (raw + raw.adjoint());
    const double tr = sym.trace().real();
    if (std::abs(tr) < 1e-12)
        throw NumericalError("steady_state: kernel vector has vanishing trace");
    sym /= tr;
    DensityMatrix rho{layout, std::move(sym)};
    check_fock_tail(rho, tail_tol);
    validate_density(rho, "steady_state");
    return rho;
}

DensityMatrix steady_null_space(const LindbladModel& model, const SteadyOptions& options) {
    const int dim = model.layout.dim();
    const Eigen::SparseMatrix<cplx> liou = build_liouvillian(model);

    const Eigen::VectorXcd x0 = solve_kernel(liou, dim, 0);
    // Dual-position probe: a kernel of dimension >= 2 leaves both replaced
    // systems singular or yields two different "solutions"; a 1-dim kernel
    // gives the same unique solution from either row choice.
    const Eigen::VectorXcd x1 = solve_kernel(liou, dim, dim * dim - 1);
    const double scale_ref = std::max(1.0, x0.cwiseAbs().maxCoeff());
    const double disagreement = (x0 - x1).cwiseAbs().maxCoeff();
    if (disagreement > 1e-6 * scale_ref) {
        std::ostringstream msg;
        msg << "steady_state: degenerate null space (dimension > 1) — independent kernel "
               "solves disagree by "
            << disagreement;
        throw NumericalError(msg.str());
    }
    const double residual = (liou * x0).cwiseAbs().maxCoeff();
    if (residual > 1e-8) {
        std::ostringstream msg;
        msg << "steady_state: kernel candidate is not stationary (||L rho||_max = " << residual
            << ") — degenerate or ill-conditioned Liouvillian";
        throw NumericalError(msg.str());
    }
    const Eigen::Map<const Matrix> rho_view(x0.data(), dim, dim);
    return finalize_steady(model.layout, rho_view, options.tail_tol);
}

DensityMatrix steady_long_time(const LindbladModel& model, const SteadyOptions& options) {
    const int dim = model.layout.dim();
    const long n = static_cast<long>(dim) * dim;
    const Eigen::SparseMatrix<cplx> liou = build_liouvillian(model);

    // RK4 stability bound from the Gershgorin estimate of the spectral radius.
    const double radius = std::max(sparse_inf_norm(liou), 1e-12);
    const double dt = 1.0 / radius;

    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    x(0) = 1.0;  // vacuum start
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), tmp(n);

    constexpr long kSegment = 500;
    constexpr double kResidualTol = 1e-10;
    double t = 0.0;
    long step = 0;
    while (true) {
        if ((liou * x).cwiseAbs().maxCoeff() < kResidualTol) break;
        if (t >= options.t_max) {
            std::ostringstream msg;
            msg << "steady_state: no convergence by t = " << t
                << " (||dRho/dt||_max = " << (liou * x).cwiseAbs().maxCoeff()
                << ") — vanishing spectral gap or gain-dominant model without a steady state";
            throw NumericalError(msg.str());
        }
        for (long s = 0; s < kSegment; ++s) {
            k1.noalias() = liou * x;
            tmp = x + (0.5 * dt) * k1;
            k2.noalias() = liou * tmp;
            tmp = x + (0.5 * dt) * k2;
            k3.noalias() = liou * tmp;
            tmp = x + dt * k3;
            k4.noalias() = liou * tmp;
            x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
            ++step;
        }
        const Eigen::Map<const Matrix> rho_view(x.data(), dim, dim);
        check_step_invariants(rho_view, step, t, "steady_state (long-time)");
    }
    const Eigen::Map<const Matrix> rho_view(x.data(), dim, dim);
    return finalize_steady(model.layout, rho_view, options.tail_tol);
}

void append_resonator_warnings(std::vector<std::string>& warnings, const GCoefficients& g,
                               int which) {
    std::ostringstream tag;
    tag << "resonator " << which;
    if (g.g_plus == g.g_minus)
        warnings.push_back(tag.str() +
                           ": G+ == G-, the approach rate to the steady state vanishes");
    else if (g.g_minus > g.g_plus)
        warnings.push_back(tag.str() +
                           ": gain-dominant (G- > G+), no steady state within any truncation");
}

Operator number_operator(const SpaceLayout& layout, int factor_index) {
    const Operator a = annihilation(layout, factor_index);
    return compose(dagger(a), a, ComposeOp::Mul);
}

double observable_value(const LindbladModel& model, const DensityMatrix& rho,
                        ObservableKind kind, int site, bool allow_implied) {
    if (kind == ObservableKind::ResonatorNumber) {
        const std::vector<int> res = factors_of(model.layout, FactorKind::Resonator);
        if (site < 0 || site >= static_cast<int>(res.size()))
            throw ValidationError("adiabatic_error_report: resonator site out of range");
        return expectation(rho, number_operator(model.layout, res[static_cast<size_t>(site)]))
            .real();
    }
    const std::vector<int> qubits = factors_of(model.layout, FactorKind::Qubit);
    if (site < 0 || site >= static_cast<int>(qubits.size())) {
        // Eliminated qubits sit in their ground state: implied <s+ s-> = 0.
        if (allow_implied && site >= 0) return 0.0;
        throw ValidationError("adiabatic_error_report: qubit site out of range");
    }
    const int idx = qubits[static_cast<size_t>(site)];
    const Operator excitation = compose(pauli(model.layout, idx, PauliKind::Plus),
                                        pauli(model.layout, idx, PauliKind::Minus),
                                        ComposeOp::Mul);
    return expectation(rho, excitation).real();
}

}  // namespace

LindbladModel make_model(Operator hamiltonian, std::vector<Dissipator> dissipators) {
    LindbladModel model{hamiltonian.layout, std::move(hamiltonian), nullptr, {}, {}};
    for (const Dissipator& d : dissipators) {
        if (d.collapse.layout != model.layout)
            throw ValidationError("lindblad model: dissipator layout does not match");
        if (!(d.rate >= 0.0) || !std::isfinite(d.rate))
            throw ValidationError("lindblad model: dissipator rate must be finite and >= 0");
    }
    model.dissipators = std::move(dissipators);
    return model;
}

LindbladModel make_time_dependent_model(SpaceLayout layout,
                                        std::function<Matrix(double)> hamiltonian_fn,
                                        std::vector<Dissipator> dissipators) {
    if (!hamiltonian_fn)
        throw ValidationError("lindblad model: time-dependent Hamiltonian callback is empty");
    const Matrix probe = hamiltonian_fn(0.0);
    if (probe.rows() != layout.dim() || probe.cols() != layout.dim())
        throw ValidationError("lindblad model: Hamiltonian callback shape does not match layout");
    LindbladModel model = make_model(Operator{layout, Matrix::Zero(layout.dim(), layout.dim())},
                                     std::move(dissipators));
    model.hamiltonian_fn = std::move(hamiltonian_fn);
    return model;
}

LindbladModel full_circuit_model(const SystemParams& params, const SpaceLayout& layout) {
    const FactorMap map = map_factors(layout);
    const int dim = layout.dim();
    const size_t n_sites = map.resonators.size();

    struct SiteClosure {
        double omega, g;
        DriveParams drive;
        Matrix p1, p2;  // sigma^+ a, sigma^+ a^dag
    };
    std::vector<SiteClosure> sites;
    for (size_t j = 0; j < n_sites; ++j) {
        const DriveParams& d = params.drives[j];
        validate_drive(d);
        const Matrix a = annihilation(layout, map.resonators[j]).data;
        const Matrix sp = pauli(layout, map.qubits[j], PauliKind::Plus).data;
        sites.push_back({j == 0 ? params.omega1 : params.omega2, j == 0 ? params.g1 : params.g2,
                         d, sp * a, sp * a.adjoint()});
    }

    Matrix q_hop, q_pair;
    const bool coupled = n_sites == 2 && params.J != 0.0;
    if (coupled) {
        const Matrix a1 = annihilation(layout, map.resonators[0]).data;
        const Matrix a2 = annihilation(layout, map.resonators[1]).data;
        q_hop = a1.adjoint() * a2;
        q_pair = a1 * a2;
    }

    auto h_fn = [sites, q_hop, q_pair, coupled, params, dim](double t) -> Matrix {
        const cplx i1(0.0, 1.0);
        Matrix h = Matrix::Zero(dim, dim);
        for (const SiteClosure& s : sites) {
            const DriveParams& d = s.drive;
            const double f = 0.5 * d.eps0 * t +
                             (d.lambda_plus / d.omega_plus) * std::sin(d.omega_plus * t) +
                             (d.lambda_minus / d.omega_minus) * std::sin(d.omega_minus * t);
            const cplx z1 = s.g * std::exp(i1 * (2.0 * f - s.omega * t));
            const cplx z2 = s.g * std::exp(i1 * (2.0 * f + s.omega * t));
            h += z1 * s.p1 + std::conj(z1) * s.p1.adjoint();
            h += z2 * s.p2 + std::conj(z2) * s.p2.adjoint();
        }
        if (coupled) {
            const cplx zh = params.J * std::exp(i1 * (params.omega1 - params.omega2) * t);
            const cplx zp = params.J * std::exp(-i1 * (params.omega1 + params.omega2) * t);
            h += zh * q_hop + std::conj(zh) * q_hop.adjoint();
            h += zp * q_pair + std::conj(zp) * q_pair.adjoint();
        }
        return h;
    };

    std::vector<Dissipator> dissipators;
    for (size_t j = 0; j < n_sites; ++j) {
        const double gamma = j == 0 ? params.gamma1 : params.gamma2;
        const double kappa = j == 0 ? params.kappa1 : params.kappa2;
        if (gamma < 0.0 || kappa < 0.0)
            throw ValidationError("full_circuit_model: decay rates must be >= 0");
        if (gamma > 0.0)
            dissipators.push_back({pauli(layout, map.qubits[j], PauliKind::Minus), gamma});
        if (kappa > 0.0) dissipators.push_back({annihilation(layout, map.resonators[j]), kappa});
    }
    return make_time_dependent_model(layout, std::move(h_fn), std::move(dissipators));
}

Matrix liouvillian_apply(const LindbladModel& model, const Matrix& rho, double t) {
    const int dim = model.layout.dim();
    if (rho.rows() != dim || rho.cols() != dim)
        throw ValidationError("liouvillian_apply: state shape does not match model layout");
    const cplx i1(0.0, 1.0);
    const Matrix h = model.is_static() ? model.hamiltonian.data : model.hamiltonian_fn(t);
    Matrix out = -i1 * (h * rho - rho * h);
    for (const Dissipator& d : model.dissipators) {
        const Matrix& c = d.collapse.data;
        const Matrix cdc = c.adjoint() * c;
        out.noalias() += d.rate * (c * rho * c.adjoint());
        out.noalias() -= (0.5 * d.rate) * (cdc * rho);
        out.noalias() -= (0.5 * d.rate) * (rho * cdc);
    }
    return out;
}

Eigen::SparseMatrix<cplx> build_liouvillian(const LindbladModel& model) {
    if (!model.is_static())
        throw ValidationError("build_liouvillian: model must have a static Hamiltonian");
    const int dim = model.layout.dim();
    const Matrix eye = Matrix::Identity(dim, dim);
    const cplx i1(0.0, 1.0);

    std::vector<Eigen::Triplet<cplx>> trips;
    add_kron(trips, eye, model.hamiltonian.data, -i1);
    add_kron(trips, model.hamiltonian.data.transpose(), eye, i1);
    for (const Dissipator& d : model.dissipators) {
        const Matrix& c = d.collapse.data;
        const Matrix cdc = c.adjoint() * c;
        add_kron(trips, c.conjugate(), c, cplx(d.rate, 0.0));
        add_kron(trips, eye, cdc, cplx(-0.5 * d.rate, 0.0));
        add_kron(trips, cdc.transpose(), eye, cplx(-0.5 * d.rate, 0.0));
    }
    Eigen::SparseMatrix<cplx> liou(dim * dim, dim * dim);
    liou.setFromTriplets(trips.begin(), trips.end());
    liou.makeCompressed();
    return liou;
}

double default_timestep(double max_frequency) {
    if (!(max_frequency > 0.0))
        throw ValidationError("default_timestep: max frequency must be positive");
    return 2.0 * std::numbers::pi / (50.0 * max_frequency);
}

TrajectoryResult integrate(const LindbladModel& model, const DensityMatrix& rho0, double t_end,
                           double dt, const std::vector<ObservableSpec>& observables,
                           int record_stride) {
    if (!(dt > 0.0)) throw ValidationError("integrate: dt must be positive");
    if (!(t_end > 0.0)) throw ValidationError("integrate: t_end must be positive");
    if (rho0.layout != model.layout)
        throw ValidationError("integrate: initial state layout does not match model");
    validate_density(rho0, "integrate initial state");
    for (const ObservableSpec& o : observables)
        if (o.op.layout != model.layout)
            throw ValidationError("integrate: observable layout does not match model");

    const int dim = model.layout.dim();
    const long n_steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
    const double h = t_end / static_cast<double>(n_steps);
    const long stride =
        record_stride > 0 ? record_stride : std::max(1L, n_steps / 2000);
    const long positivity_every = std::max(1L, n_steps / 100);

    // tr(rho O) = sum_ij rho_ij (O^T)_ij — O(dim^2) per sample.
    std::vector<Matrix> obs_t;
    obs_t.reserve(observables.size());
    for (const ObservableSpec& o : observables) obs_t.push_back(o.op.data.transpose());

    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<cplx>> series(observables.size());
    for (const ObservableSpec& o : observables) names.push_back(o.name);

    auto record = [&](double t, const Eigen::Ref<const Matrix>& rho) {
        times.push_back(t);
        for (size_t k = 0; k < obs_t.size(); ++k)
            series[k].push_back(rho.cwiseProduct(obs_t[k]).sum());
    };

    Matrix rho_final;
    if (model.is_static()) {
        const Eigen::SparseMatrix<cplx> liou = build_liouvillian(model);
        const long n = static_cast<long>(dim) * dim;
        Eigen::VectorXcd x(n);
        Eigen::Map<Matrix>(x.data(), dim, dim) = rho0.data;
        Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), tmp(n);
        const Eigen::Map<const Matrix> rho_view(x.data(), dim, dim);

        record(0.0, rho_view);
        for (long step = 1; step <= n_steps; ++step) {
            k1.noalias() = liou * x;
            tmp = x + (0.5 * h) * k1;
            k2.noalias() = liou * tmp;
            tmp = x + (0.5 * h) * k2;
            k3.noalias() = liou * tmp;
            tmp = x + h * k3;
            k4.noalias() = liou * tmp;
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

            const double t = static_cast<double>(step) * h;
            check_step_invariants(rho_view, step, t, "integrate");
            if (step % positivity_every == 0) check_positivity_at(rho_view, step, t);
            if (step % stride == 0 || step == n_steps) record(t, rho_view);
        }
        rho_final = rho_view;
    } else {
        std::vector<std::pair<double, Matrix>> channels;  // (rate, c), with cached c^dag c
        std::vector<Matrix> cdcs;
        for (const Dissipator& d : model.dissipators) {
            channels.emplace_back(d.rate, d.collapse.data);
            cdcs.push_back(d.collapse.data.adjoint() * d.collapse.data);
        }
        const cplx i1(0.0, 1.0);
        auto rhs = [&](double t, const Matrix& m) -> Matrix {
            const Matrix ht = model.hamiltonian_fn(t);
            Matrix out = -i1 * (ht * m - m * ht);
            for (size_t k = 0; k < channels.size(); ++k) {
                const auto& [rate, c] = channels[k];
                out.noalias() += rate * (c * m * c.adjoint());
                out.noalias() -= (0.5 * rate) * (cdcs[k] * m);
                out.noalias() -= (0.5 * rate) * (m * cdcs[k]);
            }
            return out;
        };

        Matrix rho = rho0.data;
        record(0.0, rho);
        for (long step = 1; step <= n_steps; ++step) {
            const double t0 = static_cast<double>(step - 1) * h;
            const Matrix k1 = rhs(t0, rho);
            const Matrix k2 = rhs(t0 + 0.5 * h, rho + (0.5 * h) * k1);
            const Matrix k3 = rhs(t0 + 0.5 * h, rho + (0.5 * h) * k2);
            const Matrix k4 = rhs(t0 + h, rho + h * k3);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

            const double t = static_cast<double>(step) * h;
            check_step_invariants(rho, step, t, "integrate");
            if (step % positivity_every == 0) check_positivity_at(rho, step, t);
            if (step % stride == 0 || step == n_steps) record(t, rho);
        }
        rho_final = std::move(rho);
    }

    DensityMatrix final_state{model.layout, std::move(rho_final)};
    validate_density(final_state, "integrate final state");
    return TrajectoryResult{std::move(times), std::move(names), std::move(series),
                            std::move(final_state)};
}

LindbladModel adiabatic_single_resonator_model(double g, double gamma, const GCoefficients& G,
                                               double delta, int n_fock) {
    if (!(gamma > 0.0))
        throw ValidationError("adiabatic_single_resonator_model: gamma must be positive");
    if (n_fock < 4)
        throw ValidationError("adiabatic_single_resonator_model: n_fock must be at least 4");
    const SpaceLayout layout({resonator(n_fock)});
    const Operator a = annihilation(layout, 0);
    const Operator h = scale(compose(dagger(a), a, ComposeOp::Mul), -delta);
    const Operator b =
        compose(scale(a, G.g_plus), scale(dagger(a), G.g_minus), ComposeOp::Add);
    LindbladModel model = make_model(h, {{b, 4.0 * g * g / gamma}});
    append_resonator_warnings(model.warnings, G, 1);
    return model;
}

LindbladModel adiabatic_two_resonator_model(const SystemParams& params, const GCoefficients& G1,
                                            const GCoefficients& G2, MMode mode, int n_fock) {
    if (!(params.gamma1 > 0.0) || !(params.gamma2 > 0.0))
        throw ValidationError("adiabatic_two_resonator_model: gamma_j must be positive");
    if (n_fock < 4)
        throw ValidationError("adiabatic_two_resonator_model: n_fock must be at least 4");
    const SpaceLayout layout({resonator(n_fock), resonator(n_fock)});
    const Matrix a1 = annihilation(layout, 0).data;
    const Matrix a2 = annihilation(layout, 1).data;

    // +delta is fixed by the first-moment bridge: d<a_j>/dt must equal
    // -i (M alpha)_j with M_jj = delta - i gamma_tilde_j.
    Matrix h = params.delta * (a1.adjoint() * a1 + a2.adjoint() * a2);
    if (mode == MMode::Rwa)
        h += params.J * (a1.adjoint() * a2 + a2.adjoint() * a1);
    else
        h += params.J * ((a1 + a1.adjoint()) * (a2 + a2.adjoint()));

    const Matrix b1 = G1.g_plus * a1 + G1.g_minus * a1.adjoint();
    const Matrix b2 = G2.g_plus * a2 + G2.g_minus * a2.adjoint();
    LindbladModel model = make_model(
        Operator{layout, std::move(h)},
        {{Operator{layout, b1}, 4.0 * params.g1 * params.g1 / params.gamma1},
         {Operator{layout, b2}, 4.0 * params.g2 * params.g2 / params.gamma2}});
    append_resonator_warnings(model.warnings, G1, 1);
    append_resonator_warnings(model.warnings, G2, 2);
    return model;
}

DensityMatrix steady_state(const LindbladModel& model, const SteadyOptions& options) {
    if (!model.is_static())
        throw ValidationError("steady_state: model must have a static Hamiltonian");
    if (!(options.tail_tol > 0.0))
        throw ValidationError("steady_state: tail tolerance must be positive");
    SteadyMethod method = options.method;
    if (method == SteadyMethod::Auto)
        method = model.layout.dim() <= 64 ? SteadyMethod::NullSpace : SteadyMethod::LongTime;
    return method == SteadyMethod::NullSpace ? steady_null_space(model, options)
                                             : steady_long_time(model, options);
}

void check_fock_tail(const DensityMatrix& rho, double tol) {
    const SpaceLayout& layout = rho.layout;
    const int dim = layout.dim();
    for (int f = 0; f < layout.factor_count(); ++f) {
        if (layout.factor(f).kind != FactorKind::Resonator) continue;
        const int n = layout.factor(f).dim;
        const int stride = factor_stride(layout, f);
        double population = 0.0;
        for (int idx = 0; idx < dim; ++idx) {
            const int level = (idx / stride) % n;
            if (level >= n - 2) population += rho.data(idx, idx).real();
        }
        if (population >= tol) {
            std::ostringstream msg;
            msg << "state not contained within the Fock truncation: resonator factor " << f
                << " holds population " << population << " in its top two levels (tolerance "
                << tol << ") — no steady state within truncation or N_fock too small";
            throw NumericalError(msg.str());
        }
    }
}

double adiabatic_error_report(const LindbladModel& full_model,
                              const LindbladModel& reduced_model, ObservableKind observable,
                              double t_end, int site, double tail_tol) {
    if (!(t_end > 0.0))
        throw ValidationError("adiabatic_error_report: t_end must be positive");
    SteadyOptions options;
    options.tail_tol = tail_tol;
    options.t_max = std::min(t_end, 1e5);

    const DensityMatrix rho_full = steady_state(full_model, options);
    const DensityMatrix rho_reduced = steady_state(reduced_model, options);
    const double v_full = observable_value(full_model, rho_full, observable, site, false);
    const double v_reduced =
        observable_value(reduced_model, rho_reduced, observable, site, true);
    return std::abs(v_full - v_reduced) / std::max(std::abs(v_full), 1e-12);
}

}  // namespace ptqed
