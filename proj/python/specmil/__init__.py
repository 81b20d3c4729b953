"""Spectral Galerkin Milstein integrator for parabolic SPDEs."""

from ._specmil import (
    NonFiniteState,
    apply_semigroup,
    converge,
    count_random_variables,
    eigenvalues,
    identity_test,
    presets,
    run,
    to_grid,
    to_spectral,
)

__all__ = [
    "NonFiniteState",
    "apply_semigroup",
    "converge",
    "count_random_variables",
    "eigenvalues",
    "identity_test",
    "presets",
    "run",
    "to_grid",
    "to_spectral",
]
