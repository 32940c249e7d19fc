"""Entanglement dynamics of two atoms in separate lossless Jaynes-Cummings cavities."""

from ._core import (
    ConfigError,
    DeathReport,
    Interval,
    JCConstants,
    ModelParams,
    QubitEquivalenceError,
    ValidationReport,
    death_threshold_alpha,
    derive_constants,
    detect_death,
    evolve_state,
    pair_concurrence,
    phi_amplitudes,
    phi_concurrence,
    phi_f,
    phi_reduced_density,
    psi_amplitudes,
    psi_concurrence,
    psi_reduced_density,
    scan,
    validate,
    wootters_concurrence,
)

__all__ = [
    "ConfigError",
    "DeathReport",
    "Interval",
    "JCConstants",
    "ModelParams",
    "QubitEquivalenceError",
    "ValidationReport",
    "death_threshold_alpha",
    "derive_constants",
    "detect_death",
    "evolve_state",
    "pair_concurrence",
    "phi_amplitudes",
    "phi_concurrence",
    "phi_f",
    "phi_reduced_density",
    "psi_amplitudes",
    "psi_concurrence",
    "psi_reduced_density",
    "scan",
    "validate",
    "wootters_concurrence",
]
