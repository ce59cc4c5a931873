// Hamiltonian builders: exact interaction-picture form and the two effective
// (RWA / beyond-RWA) forms it averages to.
#pragma once

#include "ptqed/drive.hpp"
#include "ptqed/operators.hpp"

namespace ptqed {

// Exact interaction-picture Hamiltonian at time t: two-tone driven qubits with
// the full exponential phase (no Bessel truncation) plus the static J terms
// rotating at omega1 -/+ omega2 when a second resonator is present.
Operator full_interaction_hamiltonian(double t, const SystemParams& params,
                                      const SpaceLayout& layout);

// Time-averaged, number-conserving form: -delta n_j + J(a1^dag a2 + h.c.) +
// g_j (G_+ sigma^+ a + G_- sigma^+ a^dag + h.c.). Requires omega1 == omega2
// when two resonators are present. The first overload derives the G
// coefficients from params.drives; the second takes them explicitly.
Operator effective_hamiltonian_rwa(const SystemParams& params, const SpaceLayout& layout);
Operator effective_hamiltonian_rwa(const SystemParams& params,
                                   const std::array<GCoefficients, 2>& gs,
                                   const SpaceLayout& layout);

// Same qubit terms, but the modulated coupling keeps both number-conserving
// and counter-rotating resonator terms: J(a1^dag a2 + a1 a2 + h.c.).
// Requires two resonators.
Operator effective_hamiltonian_nonrwa(const SystemParams& params, const SpaceLayout& layout);
Operator effective_hamiltonian_nonrwa(const SystemParams& params,
                                      const std::array<GCoefficients, 2>& gs,
                                      const SpaceLayout& layout);

// Factor bookkeeping shared by the builders: positions of resonator and qubit
// factors in a mixed layout, paired in order of appearance.
struct FactorMap {
    std::vector<int> resonators;
    std::vector<int> qubits;
};
FactorMap map_factors(const SpaceLayout& layout);

}  // namespace ptqed
