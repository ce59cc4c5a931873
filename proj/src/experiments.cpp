#include "ptqed/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ptqed/drive.hpp"
#include "ptqed/errors.hpp"
#include "ptqed/hamiltonians.hpp"
#include "ptqed/inout.hpp"
#include "ptqed/lindblad.hpp"
#include "ptqed/operators.hpp"
#include "ptqed/ptspectrum.hpp"
#include "ptqed/sweep.hpp"

namespace ptqed {

namespace {

DensityMatrix basis_state(const SpaceLayout& layout, int index) {
    Matrix data = Matrix::Zero(layout.dim(), layout.dim());
    data(index, index) = 1.0;
    return {layout, data};
}

Operator number_op(const SpaceLayout& layout, int factor_index) {
    const Operator a = annihilation(layout, factor_index);
    return compose(dagger(a), a, ComposeOp::Mul);
}

const char* mode_name(MMode mode) { return mode == MMode::Rwa ? "rwa" : "nonrwa"; }

ResultTable run_gcoeffs(const RunConfig& config) {
    const DriveParams& drive = config.system.drives[0];
    const GCoefficients g = bessel_g(drive);
    if (g.g_plus == 0.0)
        throw NumericalError("G_+ vanishes for this drive; the sideband ratio is undefined");
    ResultTable table;
    table.columns = {"eps0",       "lambda_plus", "lambda_minus", "omega_plus",
                     "omega_minus", "g_plus",      "g_minus",      "ratio"};
    table.add_row({drive.eps0, drive.lambda_plus, drive.lambda_minus, drive.omega_plus,
                   drive.omega_minus, g.g_plus, g.g_minus, g.g_minus / g.g_plus});
    return table;
}

std::vector<PhasePoint> classify_grid(const RunConfig& config, int jobs) {
    const std::vector<double> js = make_grid(config.j_grid);
    std::vector<PhasePoint> points(js.size());
    parallel_for(js.size(), jobs, [&](std::size_t i) {
        points[i] = classify(config.system.delta, js[i], config.rates, config.mode);
    });
    return points;
}

ResultTable run_spectrum(const RunConfig& config, int jobs) {
    const std::vector<PhasePoint> points = classify_grid(config, jobs);
    ResultTable table;
    table.columns = {"J", "re_w_pp", "re_w_pm", "im_w_pp", "im_w_pm", "phase", "is_ep", "mode"};
    for (const PhasePoint& p : points)
        table.add_row({p.J, p.eigenvalues[0].real(), p.eigenvalues[1].real(),
                       p.eigenvalues[0].imag(), p.eigenvalues[1].imag(),
                       std::string(phase_name(p.phase)), static_cast<long long>(p.is_ep),
                       std::string(mode_name(config.mode))});
    return table;
}

ResultTable run_phase_diagram(const RunConfig& config, int jobs) {
    const std::vector<PhasePoint> points = classify_grid(config, jobs);
    const auto criticals = critical_couplings(config.system.delta, config.rates);
    ResultTable table;
    table.metadata.emplace_back("j_c1", format_double(criticals.first));
    table.metadata.emplace_back("j_c2", format_double(criticals.second));
    table.columns = {"J", "phase", "is_ep", "pt_defect"};
    for (const PhasePoint& p : points)
        table.add_row({p.J, std::string(phase_name(p.phase)), static_cast<long long>(p.is_ep),
                       p.pt_defect_value});
    return table;
}

ResultTable run_dynamics(const RunConfig& config) {
    const SpaceLayout layout({resonator(config.n_fock), qubit()});
    const LindbladModel full = full_circuit_model(config.system, layout);
    const LindbladModel effective =
        make_model(effective_hamiltonian_rwa(config.system, layout), full.dissipators);

    DensityMatrix rho0 = basis_state(layout, 3);  // |n=1>|up>
    if (config.initial_state == "plus_one") {
        rho0.data.setZero();
        for (int r : {2, 3})
            for (int c : {2, 3}) rho0.data(r, c) = 0.5;  // (|down> + |up>)|n=1> / sqrt(2)
    }

    const Operator total_n =
        compose(number_op(layout, 0),
                compose(pauli(layout, 1, PauliKind::Plus), pauli(layout, 1, PauliKind::Minus),
                        ComposeOp::Mul),
                ComposeOp::Add);
    const std::vector<ObservableSpec> observables = {
        {"N", total_n},
        {"sz", pauli(layout, 1, PauliKind::Z)},
        {"sx", pauli(layout, 1, PauliKind::X)},
    };

    const TrajectoryResult traj_full =
        integrate(full, rho0, config.t_end, config.dt, observables);
    const TrajectoryResult traj_eff =
        integrate(effective, rho0, config.t_end, config.dt, observables);
    if (traj_full.times.size() != traj_eff.times.size())
        throw NumericalError("dynamics: record grids of the two models diverged");

    ResultTable table;
    table.metadata.emplace_back("initial_state", config.initial_state);
    table.columns = {"t", "n_full", "n_rwa", "sz_full", "sz_rwa", "sx_full", "sx_rwa", "dev_n"};
    for (std::size_t i = 0; i < traj_full.times.size(); ++i) {
        const double n_full = traj_full.series[0][i].real();
        const double n_rwa = traj_eff.series[0][i].real();
        table.add_row({traj_full.times[i], n_full, n_rwa, traj_full.series[1][i].real(),
                       traj_eff.series[1][i].real(), traj_full.series[2][i].real(),
                       traj_eff.series[2][i].real(), std::abs(n_full - n_rwa)});
    }
    return table;
}

ResultTable run_adiabatic(const RunConfig& config, int jobs) {
    const std::vector<double> ratios = make_grid(config.ratio_grid);
    const std::array<double, 2> gammas = {config.adiabatic_gamma_low, config.adiabatic_gamma_high};
    const std::size_t cells = ratios.size() * gammas.size();
    std::vector<std::array<double, 6>> rows(cells);

    parallel_for(cells, jobs, [&](std::size_t idx) {
        const double ratio = ratios[idx / gammas.size()];
        const double gamma = gammas[idx % gammas.size()];
        const GCoefficients g{config.adiabatic_g_plus, ratio * config.adiabatic_g_plus};

        SystemParams params;
        params.g1 = config.adiabatic_g;
        params.delta = config.system.delta;
        params.J = 0.0;
        const SpaceLayout layout({resonator(config.n_fock), qubit()});
        const LindbladModel qubit_model =
            make_model(effective_hamiltonian_rwa(params, {g, g}, layout),
                       {{pauli(layout, 1, PauliKind::Minus), gamma}});
        const LindbladModel reduced = adiabatic_single_resonator_model(
            config.adiabatic_g, gamma, g, config.system.delta, config.n_fock);

        SteadyOptions options;
        options.tail_tol = config.adiabatic_tail_tol;
        const DensityMatrix rho_full = steady_state(qubit_model, options);
        const DensityMatrix rho_reduced = steady_state(reduced, options);
        const double n_full =
            expectation(rho_full, number_op(qubit_model.layout, 0)).real();
        const double n_reduced =
            expectation(rho_reduced, number_op(reduced.layout, 0)).real();
        const double rel = std::abs(n_full - n_reduced) / std::max(std::abs(n_full), 1e-12);
        const double formula = ratio * ratio / (1.0 - ratio * ratio);
        rows[idx] = {ratio, gamma, n_full, n_reduced, rel, formula};
    });

    ResultTable table;
    table.columns = {"ratio", "gamma", "n_full", "n_adiabatic", "rel_error", "n_formula"};
    for (const auto& row : rows)
        table.add_row({row[0], row[1], row[2], row[3], row[4], row[5]});
    return table;
}

ResultTable run_transmission(const RunConfig& config, int jobs) {
    const TransmissionMap map =
        transmission_map(config.system.delta, make_grid(config.omega_grid),
                         make_grid(config.j_grid), config.rates, config.kappa, config.mode, jobs);
    ResultTable table;
    if (config.system.delta > 0) {
        const auto criticals = critical_couplings(config.system.delta, config.rates);
        table.metadata.emplace_back("j_c1", format_double(criticals.first));
        table.metadata.emplace_back("j_c2", format_double(criticals.second));
    }
    table.columns = {"J", "omega_d", "re_t2r", "im_t2r", "log_power", "is_ridge"};
    const std::size_t n_omega = map.omega_d_grid.size();
    for (std::size_t jj = 0; jj < map.j_grid.size(); ++jj) {
        const std::vector<double>& peaks = map.ridge_peaks[jj];
        for (std::size_t wi = 0; wi < n_omega; ++wi) {
            const TransmissionPoint& point = map.points[jj * n_omega + wi];
            const bool is_ridge =
                std::find(peaks.begin(), peaks.end(), point.omega_d) != peaks.end();
            table.add_row({point.J, point.omega_d, point.t_coeffs[3].real(),
                           point.t_coeffs[3].imag(), point.log_power,
                           static_cast<long long>(is_ridge)});
        }
    }
    return table;
}

}  // namespace

ResultTable run_experiment(const RunConfig& config, int jobs) {
    validate_config(config);
    if (jobs < 1)
        throw ValidationError("jobs must be >= 1, got " + std::to_string(jobs));
    if (config.experiment == "gcoeffs") return run_gcoeffs(config);
    if (config.experiment == "spectrum") return run_spectrum(config, jobs);
    if (config.experiment == "phase-diagram") return run_phase_diagram(config, jobs);
    if (config.experiment == "dynamics") return run_dynamics(config);
    if (config.experiment == "adiabatic") return run_adiabatic(config, jobs);
    if (config.experiment == "transmission") return run_transmission(config, jobs);
    throw ValidationError("unknown experiment '" + config.experiment + "'");
}

namespace {

const char* kScriptPrelude = R"PY(#!/usr/bin/env python3
"""Render %NAME%.csv (written by `ptqed %NAME%`) into %NAME%.png."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
CSV = os.path.join(HERE, "%NAME%.csv")

meta = {}
body = []
with open(CSV, newline="") as fh:
    for line in fh:
        if line.startswith("#"):
            stripped = line[1:].strip()
            if "=" in stripped:
                key, _, value = stripped.partition("=")
                meta[key.strip()] = value.strip()
        else:
            body.append(line)
rows = list(csv.DictReader(body))

def col(name, cast=float):
    return [cast(row[name]) for row in rows]

)PY";

std::string script_body(const std::string& experiment) {
    if (experiment == "gcoeffs") {
        return R"PY(fig, ax = plt.subplots(figsize=(4.2, 3.4))
ax.bar(["$G_+$", "$G_-$"], [col("g_plus")[0], col("g_minus")[0]], color=["C0", "C3"])
ax.set_ylabel("sideband coefficient")
ax.set_title(f"$G_-/G_+$ = {col('ratio')[0]:.4f}")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "gcoeffs.png"), dpi=160)
)PY";
    }
    if (experiment == "dynamics") {
        return R"PY(t = col("t")
fig, axes = plt.subplots(2, 1, figsize=(6.4, 6.2), sharex=True)
axes[0].plot(t, col("n_full"), "C0", label="full drive")
axes[0].plot(t, col("n_rwa"), "C1--", label="effective")
axes[0].set_ylabel(r"$\langle N \rangle$")
axes[0].legend()
axes[1].plot(t, col("sz_full"), "C0", label=r"$\langle\sigma_z\rangle$ full")
axes[1].plot(t, col("sz_rwa"), "C1--", label=r"$\langle\sigma_z\rangle$ effective")
axes[1].plot(t, col("sx_full"), "C2", label=r"$\langle\sigma_x\rangle$ full")
axes[1].plot(t, col("sx_rwa"), "C3--", label=r"$\langle\sigma_x\rangle$ effective")
axes[1].set_xlabel("t")
axes[1].legend(ncol=2, fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "dynamics.png"), dpi=160)
)PY";
    }
    if (experiment == "adiabatic") {
        return R"PY(gammas = sorted(set(col("gamma")))
fig, axes = plt.subplots(1, 2, figsize=(8.6, 3.6))
for gamma in gammas:
    pick = [row for row in rows if float(row["gamma"]) == gamma]
    ratio = [float(r["ratio"]) for r in pick]
    axes[0].semilogy(ratio, [float(r["rel_error"]) for r in pick], "o-",
                     label=f"$\\gamma$ = {gamma:g}")
    axes[1].plot(ratio, [float(r["n_full"]) for r in pick], "o",
                 label=f"qubit model, $\\gamma$ = {gamma:g}")
axes[1].plot(col("ratio"), col("n_formula"), "k--", label=r"$G_-^2/(G_+^2 - G_-^2)$")
axes[0].set_xlabel(r"$G_-/G_+$"); axes[0].set_ylabel("relative error")
axes[1].set_xlabel(r"$G_-/G_+$"); axes[1].set_ylabel(r"$\langle n \rangle_{ss}$")
axes[0].legend(); axes[1].legend(fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "adiabatic.png"), dpi=160)
)PY";
    }
    if (experiment == "spectrum") {
        return R"PY(j = col("J")
fig, axes = plt.subplots(2, 1, figsize=(5.6, 6.0), sharex=True)
axes[0].plot(j, col("re_w_pp"), "C0", label=r"Re $\omega_{+}$")
axes[0].plot(j, col("re_w_pm"), "C1", label=r"Re $\omega_{-}$")
axes[1].plot(j, col("im_w_pp"), "C0", label=r"Im $\omega_{+}$")
axes[1].plot(j, col("im_w_pm"), "C1", label=r"Im $\omega_{-}$")
for ax in axes:
    ax.legend()
axes[0].set_ylabel("real part")
axes[1].set_ylabel("imaginary part")
axes[1].set_xlabel("J")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "spectrum.png"), dpi=160)
)PY";
    }
    if (experiment == "phase-diagram") {
        return R"PY(j = col("J")
fig, ax = plt.subplots(figsize=(5.8, 3.8))
ax.plot(j, col("pt_defect"), "C0", label="PT defect")
colors = {"exact_pt": "C2", "broken_pt": "C3", "unstable": "C1"}
for phase, color in colors.items():
    pick = [float(r["J"]) for r in rows if r["phase"] == phase]
    if pick:
        ax.plot(pick, [0.0] * len(pick), "s", ms=3, color=color, label=phase)
for key in ("j_c1", "j_c2"):
    if key in meta:
        ax.axvline(float(meta[key]), color="k", ls=":", lw=1)
ax.set_xlabel("J")
ax.set_ylabel("symmetry defect")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "phase-diagram.png"), dpi=160)
)PY";
    }
    return R"PY(j_values = sorted(set(col("J")))
omega_values = sorted(set(col("omega_d")))
grid = [[0.0] * len(omega_values) for _ in j_values]
index = {(round(jv, 12), round(wv, 12)): None for jv in j_values for wv in omega_values}
for row in rows:
    jj = j_values.index(float(row["J"]))
    wi = omega_values.index(float(row["omega_d"]))
    grid[jj][wi] = float(row["log_power"])
fig, ax = plt.subplots(figsize=(6.2, 4.6))
mesh = ax.pcolormesh(omega_values, j_values, grid, shading="nearest", cmap="magma")
fig.colorbar(mesh, ax=ax, label=r"$\log |T|^2$")
ridge_w = [float(r["omega_d"]) for r in rows if r["is_ridge"] == "1"]
ridge_j = [float(r["J"]) for r in rows if r["is_ridge"] == "1"]
ax.plot(ridge_w, ridge_j, "c.", ms=2, label="ridges")
for key in ("j_c1", "j_c2"):
    if key in meta:
        ax.axhline(float(meta[key]), color="w", ls=":", lw=1)
ax.set_xlabel(r"$\omega_d$")
ax.set_ylabel("J")
ax.legend(loc="upper right", fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "transmission.png"), dpi=160)
)PY";
}

}  // namespace

std::string plot_script(const RunConfig& config) {
    std::string prelude = kScriptPrelude;
    const std::string token = "%NAME%";
    std::size_t pos = 0;
    while ((pos = prelude.find(token, pos)) != std::string::npos) {
        prelude.replace(pos, token.size(), config.experiment);
        pos += config.experiment.size();
    }
    return prelude + script_body(config.experiment);
}

}  // namespace ptqed
