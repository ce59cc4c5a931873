#include "ptqed/hamiltonians.hpp"

#include <cmath>

namespace ptqed {

FactorMap map_factors(const SpaceLayout& layout) {
    FactorMap map;
    for (int i = 0; i < layout.factor_count(); ++i) {
        if (layout.factor(i).kind == FactorKind::Resonator)
            map.resonators.push_back(i);
        else
            map.qubits.push_back(i);
    }
    if (map.resonators.empty() || map.resonators.size() > 2)
        throw ValidationError("hamiltonian layout: expected one or two resonators");
    if (map.qubits.size() != map.resonators.size())
        throw ValidationError("hamiltonian layout: expected one qubit per resonator");
    return map;
}

namespace {

struct SiteParams {
    double omega, g;
    const DriveParams* drive;
};

std::vector<SiteParams> sites(const SystemParams& params, const FactorMap& map) {
    std::vector<SiteParams> s;
    s.push_back({params.omega1, params.g1, &params.drives[0]});
    if (map.resonators.size() == 2) s.push_back({params.omega2, params.g2, &params.drives[1]});
    return s;
}

}  // namespace

Operator full_interaction_hamiltonian(double t, const SystemParams& params,
                                      const SpaceLayout& layout) {
    const FactorMap map = map_factors(layout);
    const cplx i1(0.0, 1.0);
    Operator h = zero_op(layout);

    int j = 0;
    for (const SiteParams& site : sites(params, map)) {
        const DriveParams& d = *site.drive;
        validate_drive(d);
        // exact accumulated phase of the modulated gap
        const double f = 0.5 * d.eps0 * t +
                         (d.lambda_plus / d.omega_plus) * std::sin(d.omega_plus * t) +
                         (d.lambda_minus / d.omega_minus) * std::sin(d.omega_minus * t);
        const cplx phase = std::exp(2.0 * i1 * f);
        Operator sp = pauli(layout, map.qubits[static_cast<size_t>(j)], PauliKind::Plus);
        Operator sx_t = compose(scale(sp, phase), dagger(scale(sp, phase)), ComposeOp::Add);
        Operator a = annihilation(layout, map.resonators[static_cast<size_t>(j)]);
        Operator term = scale(compose(sx_t, a, ComposeOp::Mul),
                              site.g * std::exp(-i1 * site.omega * t));
        h = compose(h, compose(term, dagger(term), ComposeOp::Add), ComposeOp::Add);
        ++j;
    }

    if (map.resonators.size() == 2 && params.J != 0.0) {
        Operator a1 = annihilation(layout, map.resonators[0]);
        Operator a2 = annihilation(layout, map.resonators[1]);
        Operator hop = scale(compose(dagger(a1), a2, ComposeOp::Mul),
                             params.J * std::exp(i1 * (params.omega1 - params.omega2) * t));
        Operator pair = scale(compose(a1, a2, ComposeOp::Mul),
                              params.J * std::exp(-i1 * (params.omega1 + params.omega2) * t));
        Operator hj = compose(hop, pair, ComposeOp::Add);
        h = compose(h, compose(hj, dagger(hj), ComposeOp::Add), ComposeOp::Add);
    }
    return h;
}

namespace {

// Shared detuning + qubit-sideband part of both effective Hamiltonians.
Operator effective_site_terms(const SystemParams& params, const std::array<GCoefficients, 2>& gs,
                              const SpaceLayout& layout, const FactorMap& map) {
    Operator h = zero_op(layout);
    int j = 0;
    for (const SiteParams& site : sites(params, map)) {
        Operator a = annihilation(layout, map.resonators[static_cast<size_t>(j)]);
        Operator sp = pauli(layout, map.qubits[static_cast<size_t>(j)], PauliKind::Plus);
        Operator num = compose(dagger(a), a, ComposeOp::Mul);
        h = compose(h, scale(num, -params.delta), ComposeOp::Add);

        const GCoefficients& g = gs[static_cast<size_t>(j)];
        Operator coupling = compose(scale(compose(sp, a, ComposeOp::Mul), g.g_plus),
                                    scale(compose(sp, dagger(a), ComposeOp::Mul), g.g_minus),
                                    ComposeOp::Add);
        coupling = scale(coupling, site.g);
        h = compose(h, compose(coupling, dagger(coupling), ComposeOp::Add), ComposeOp::Add);
        ++j;
    }
    return h;
}

std::array<GCoefficients, 2> derive_gs(const SystemParams& params) {
    return {bessel_g(params.drives[0]), bessel_g(params.drives[1])};
}

}  // namespace

Operator effective_hamiltonian_rwa(const SystemParams& params,
                                   const std::array<GCoefficients, 2>& gs,
                                   const SpaceLayout& layout) {
    const FactorMap map = map_factors(layout);
    if (map.resonators.size() == 2 && params.omega1 != params.omega2)
        throw ValidationError("effective_hamiltonian_rwa: requires omega1 == omega2");
    Operator h = effective_site_terms(params, gs, layout, map);
    if (map.resonators.size() == 2) {
        Operator a1 = annihilation(layout, map.resonators[0]);
        Operator a2 = annihilation(layout, map.resonators[1]);
        Operator hop = scale(compose(dagger(a1), a2, ComposeOp::Mul), params.J);
        h = compose(h, compose(hop, dagger(hop), ComposeOp::Add), ComposeOp::Add);
    }
    return h;
}

Operator effective_hamiltonian_rwa(const SystemParams& params, const SpaceLayout& layout) {
    return effective_hamiltonian_rwa(params, derive_gs(params), layout);
}

Operator effective_hamiltonian_nonrwa(const SystemParams& params,
                                      const std::array<GCoefficients, 2>& gs,
                                      const SpaceLayout& layout) {
    const FactorMap map = map_factors(layout);
    if (map.resonators.size() != 2)
        throw ValidationError("effective_hamiltonian_nonrwa: requires two resonators");
    Operator h = effective_site_terms(params, gs, layout, map);
    Operator a1 = annihilation(layout, map.resonators[0]);
    Operator a2 = annihilation(layout, map.resonators[1]);
    Operator both = compose(compose(dagger(a1), a2, ComposeOp::Mul),
                            compose(a1, a2, ComposeOp::Mul), ComposeOp::Add);
    both = scale(both, params.J);
    h = compose(h, compose(both, dagger(both), ComposeOp::Add), ComposeOp::Add);
    return h;
}

Operator effective_hamiltonian_nonrwa(const SystemParams& params, const SpaceLayout& layout) {
    return effective_hamiltonian_nonrwa(params, derive_gs(params), layout);
}

}  // namespace ptqed
