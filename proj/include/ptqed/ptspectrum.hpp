// Non-Hermitian moment-matrix spectrum: PT symmetry, eigenvalue branches,
// critical couplings, exceptional-point detection, phase classification.
#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ptqed/drive.hpp"
#include "ptqed/operators.hpp"

namespace ptqed {

// Effective loss (resonator 1) / gain (resonator 2) magnitudes.
struct EffectiveRates {
    double gamma_tilde_1 = 0.1;
    double gamma_tilde_2 = 0.1;
};

enum class MMode { Rwa, NonRwa };
enum class Phase { BrokenPT, ExactPT, Unstable };

// 4x4 first-moment drift matrix in the basis (<a1>, <a1^dag>, <a2>, <a2^dag>).
struct MomentMatrix {
    Eigen::Matrix4cd data;
    MMode mode = MMode::NonRwa;
    double delta = 0.0;
    double J = 0.0;
    double gamma_tilde_1 = 0.0;
    double gamma_tilde_2 = 0.0;
};

// One classified point of a coupling sweep. Eigenvalues are the closed-form
// branches in the fixed order (w_pp, w_pm, w_mp, w_mm): first sign outer,
// second sign inner.
struct PhasePoint {
    double J = 0.0;
    std::array<cplx, 4> eigenvalues{};
    Phase phase = Phase::ExactPT;
    bool is_ep = false;
    double pt_defect_value = 0.0;
};

// gamma_tilde_j = (2 g_j^2 / gamma_j) |G_{j+}^2 - G_{j-}^2| with the fixed
// role assignment: resonator 1 loss-dominant, resonator 2 gain-dominant.
EffectiveRates effective_rates(double g1, double gamma1, const GCoefficients& G1,
                               double g2, double gamma2, const GCoefficients& G2);

MomentMatrix build_m(double delta, double J, const EffectiveRates& rates, MMode mode);

// Max-norm of (sigma_x (x) I) M* (sigma_x (x) I) - M; zero iff M is
// PT-symmetric (balanced rates).
double pt_defect(const MomentMatrix& m);

// All four closed-form eigenvalue branches, principal square roots, plus the
// common imaginary offset i(gamma2-gamma1)/2 in the imbalanced case. The
// three-argument form is the beyond-RWA expression; the overload dispatches
// on mode.
std::array<cplx, 4> eigenvalues_closed_form(double delta, double J, const EffectiveRates& rates);
std::array<cplx, 4> eigenvalues_closed_form(double delta, double J, const EffectiveRates& rates,
                                            MMode mode);

// Eigenvalues via the explicit quartic characteristic polynomial, sorted by
// (Re, Im). Independent of eigenvalues_closed_form.
std::array<cplx, 4> eigenvalues_numeric(const MomentMatrix& m);

// (J_c1, J_c2) = ((g1+g2)/2, ((g1+g2)^2 + 4 delta^2) / (8 delta)) in terms of
// the two rates; requires delta > 0.
std::pair<double, double> critical_couplings(double delta, const EffectiveRates& rates);

PhasePoint classify(double delta, double J, const EffectiveRates& rates, MMode mode);

// One PhasePoint per grid value; grid must be non-empty and ascending.
std::vector<PhasePoint> sweep_spectrum(const std::vector<double>& j_grid, double delta,
                                       const EffectiveRates& rates, MMode mode);

const char* phase_name(Phase p);

}  // namespace ptqed
