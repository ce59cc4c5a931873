// Run configuration: flat `key = value` files with section prefixes, strict
// unknown-key rejection, documented defaults, canonical dump, and hashing.
#pragma once

#include <string>
#include <vector>

#include "ptqed/drive.hpp"
#include "ptqed/ptspectrum.hpp"

namespace ptqed {

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 201;
};

// Every key has a documented default except `experiment`; the defaults
// reproduce the eigenvalue-sweep figure (rates 0.1/0.1, delta 1, J in [0, 1]
// on 201 points, beyond-RWA mode). Other experiments override what they need
// in their config files.
struct RunConfig {
    std::string experiment;            // experiment = gcoeffs | dynamics | adiabatic |
                                       //              spectrum | phase-diagram | transmission
    MMode mode = MMode::NonRwa;        // mode = rwa | nonrwa
    SystemParams system;               // system.* and drive1.* / drive2.*
    EffectiveRates rates{0.1, 0.1};    // rates.gamma_tilde_1 / rates.gamma_tilde_2

    double dt = 0.005;                 // numerics.dt
    double t_end = 50.0;               // numerics.t_end
    int n_fock = 20;                   // numerics.n_fock

    GridSpec j_grid{0.0, 1.0, 201};    // grid.j_start / grid.j_stop / grid.j_count
    GridSpec omega_grid{0.0, 2.0, 201};// grid.omega_start / grid.omega_stop / grid.omega_count
    GridSpec ratio_grid{0.1, 0.9, 9};  // grid.ratio_start / grid.ratio_stop / grid.ratio_count

    double adiabatic_g = 0.2;          // adiabatic.g
    double adiabatic_g_plus = 0.4;     // adiabatic.g_plus (G_- = ratio * G_+)
    double adiabatic_gamma_low = 1.0;  // adiabatic.gamma_low
    double adiabatic_gamma_high = 10.0;// adiabatic.gamma_high
    double adiabatic_tail_tol = 1e-2;  // adiabatic.tail_tol
    double kappa = 0.02;               // transmission.kappa
    std::string initial_state = "up_one";  // dynamics.initial = up_one | plus_one

    std::string out_dir = ".";         // output.dir
    std::string format = "csv";        // output.format = csv | json | both
    bool emit_plot_script = false;     // output.emit_plot_script

    RunConfig() { system.delta = 1.0; }
};

const std::vector<std::string>& known_experiments();

// Parses config text. Lines are `key = value`; blank lines and lines whose
// first non-space character is '#' are ignored. Unknown keys, duplicate keys,
// malformed lines, unparsable values, and a missing `experiment` are hard
// errors that name `origin` and the line number.
RunConfig parse_config(const std::string& text, const std::string& origin);

// parse_config over the contents of a file.
RunConfig load_config(const std::string& path);

// Canonical form: every key in a fixed order with its current value.
// parse_config(dump_config(c)) reproduces c, and dumping again is idempotent.
std::string dump_config(const RunConfig& config);

// FNV-1a hash over every data-affecting key of the canonical dump; formatting,
// comments, and output routing (output.*) do not affect it, so the same
// physics request hashes identically wherever its results are written.
std::string config_hash(const RunConfig& config);

// Fail-fast eligibility check for config.experiment: grid shapes, positivity,
// drive hierarchy where the experiment consumes a drive. Throws
// ValidationError before any heavy work starts.
void validate_config(const RunConfig& config);

// Inclusive linspace; count >= 1 (count == 1 yields {start}).
std::vector<double> make_grid(const GridSpec& grid);

}  // namespace ptqed
