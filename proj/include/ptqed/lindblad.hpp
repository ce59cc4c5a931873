// Lindblad master-equation engine: model containers, fixed-step RK4
// propagation, steady states (null-space and long-time paths), the adiabatic
// resonator-only models, and the full/reduced error report.
#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <string>
#include <vector>

#include "ptqed/drive.hpp"
#include "ptqed/operators.hpp"
#include "ptqed/ptspectrum.hpp"

namespace ptqed {

// One dissipation channel, applied as rate * D[c] with
// D[c] rho = c rho c^dag - 1/2 {c^dag c, rho}.
struct Dissipator {
    Operator collapse;
    double rate = 1.0;
};

// Immutable after construction. The Hamiltonian is either the static
// `hamiltonian` or, when `hamiltonian_fn` is set, the time callback (which
// then takes precedence).
struct LindbladModel {
    SpaceLayout layout;
    Operator hamiltonian;
    std::function<Matrix(double)> hamiltonian_fn;
    std::vector<Dissipator> dissipators;
    std::vector<std::string> warnings;

    bool is_static() const { return !hamiltonian_fn; }
};

// Static-Hamiltonian model; validates layouts and rates >= 0.
LindbladModel make_model(Operator hamiltonian, std::vector<Dissipator> dissipators = {});

// Time-dependent model; the callback is probed once at t = 0 for shape.
LindbladModel make_time_dependent_model(SpaceLayout layout,
                                        std::function<Matrix(double)> hamiltonian_fn,
                                        std::vector<Dissipator> dissipators = {});

// Full driven circuit model on a [resonator(,qubit)]^{1,2} layout: exact
// interaction-picture Hamiltonian (precomputed-product closure, entrywise
// equal to full_interaction_hamiltonian) plus qubit decay gamma_j D[sigma^-_j]
// and resonator decay kappa_j D[a_j] for nonzero rates.
LindbladModel full_circuit_model(const SystemParams& params, const SpaceLayout& layout);

// dRho/dt = -i[H(t), rho] + sum_k r_k D[c_k] rho. Traceless and
// Hermiticity-preserving by construction.
Matrix liouvillian_apply(const LindbladModel& model, const Matrix& rho, double t = 0.0);

// Sparse matrix of the static Liouvillian acting on vec(rho)
// (column-stacking: vec index = row + col*dim).
Eigen::SparseMatrix<cplx> build_liouvillian(const LindbladModel& model);

struct ObservableSpec {
    std::string name;
    Operator op;
};

struct TrajectoryResult {
    std::vector<double> times;
    std::vector<std::string> names;
    // series[k][i] = <op_k> at times[i]; complex so non-Hermitian
    // observables (first moments <a_j>) are representable.
    std::vector<std::vector<cplx>> series;
    DensityMatrix final_state;
};

// Default integrator step for a model whose fastest angular frequency is
// `max_frequency`: 1/50 of the shortest period.
double default_timestep(double max_frequency);

// Fixed-step RK4 on the matrix ODE. Trace and Hermiticity are checked every
// step, positivity on ~100 evenly spaced checkpoints and on the final state;
// a breach reports the step index. record_stride 0 = auto (~2000 samples);
// t = 0 and t = t_end are always recorded.
TrajectoryResult integrate(const LindbladModel& model, const DensityMatrix& rho0, double t_end,
                           double dt, const std::vector<ObservableSpec>& observables = {},
                           int record_stride = 0);

// Resonator-only model after eliminating one driven qubit:
// H = -delta a^dag a, single dissipator (b = G+ a + G- a^dag, rate 4 g^2 /
// gamma — the 1/2-convention equivalent of the eliminated-model prefactor).
// G+ == G- (vanishing approach rate) and G- > G+ (gain-dominant) are
// flagged as warnings, not errors.
LindbladModel adiabatic_single_resonator_model(double g, double gamma, const GCoefficients& G,
                                               double delta, int n_fock);

// Two coupled resonators after eliminating both qubits:
// H = +delta (n1 + n2) + J * [a1^dag a2 + h.c.] (rwa mode) or
// J * (a1 + a1^dag)(a2 + a2^dag) (nonrwa mode), dissipators b_j with rates
// 4 g_j^2 / gamma_j. The +delta sign is fixed by the first-moment bridge to
// the 4x4 drift matrix of ptspectrum.
LindbladModel adiabatic_two_resonator_model(const SystemParams& params, const GCoefficients& G1,
                                            const GCoefficients& G2, MMode mode, int n_fock);

enum class SteadyMethod { Auto, NullSpace, LongTime };

struct SteadyOptions {
    // Auto: null-space solve for dim <= 64, long-time integration otherwise.
    SteadyMethod method = SteadyMethod::Auto;
    // Truncation-containment gate: total population of the top two Fock
    // levels of every resonator factor must stay below this.
    double tail_tol = 1e-6;
    // Long-time search horizon; exceeding it raises a non-convergence error.
    double t_max = 1e5;
};

// Stationary state of a static model. Null-space path: trace-normalized
// kernel of the vectorized Liouvillian with a dual-position probe that
// reports degenerate (dim > 1) kernels. Long-time path: RK4 from vacuum
// until ||dRho/dt||_max < 1e-10.
DensityMatrix steady_state(const LindbladModel& model, const SteadyOptions& options = {});

// Throws NumericalError when any resonator factor holds >= tol population
// in its top two Fock levels (state not contained within the truncation).
void check_fock_tail(const DensityMatrix& rho, double tol = 1e-6);

enum class ObservableKind { ResonatorNumber, QubitExcitation };

// Steady-state relative error |<O>_full - <O>_reduced| / max(|<O>_full|,
// 1e-12). Site indexes the observable's resonator/qubit in appearance order.
// A reduced model without qubit factors contributes the implied ground-state
// value <sigma^+ sigma^-> = 0. t_end bounds the long-time steady-state
// search where that path is taken; tail_tol is forwarded to steady_state.
double adiabatic_error_report(const LindbladModel& full_model, const LindbladModel& reduced_model,
                              ObservableKind observable, double t_end, int site = 0,
                              double tail_tol = 1e-6);

}  // namespace ptqed
