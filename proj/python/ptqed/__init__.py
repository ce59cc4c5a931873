"""Driven circuit-QED sideband engineering.

Effective coupled-resonator models built from two-tone drives, their symmetry
phases and exceptional points, steady states of the reduced dynamics, and
driven transmission spectra. The heavy lifting lives in the compiled `_core`
module; the `ptqed` command-line tool wraps the same experiment drivers.
"""

from ._core import (
    Error,
    NumericalError,
    ValidationError,
    __version__,
    classify,
    config_hash,
    critical_couplings,
    dump_config,
    eigenvalues,
    plot_script,
    run_experiment,
    run_experiment_file,
    sideband_g,
    transmission_coefficient,
)

__all__ = [
    "Error",
    "NumericalError",
    "ValidationError",
    "__version__",
    "classify",
    "config_hash",
    "critical_couplings",
    "dump_config",
    "eigenvalues",
    "plot_script",
    "run_experiment",
    "run_experiment_file",
    "sideband_g",
    "transmission_coefficient",
]
