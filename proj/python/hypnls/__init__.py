"""Radial linear and defocusing NLS on hyperbolic space H^3, with a Euclidean R^3 comparison mode."""

from ._core import (
    ConfigError,
    Discretization,
    HypnlsError,
    Trajectory,
    energy,
    evolve,
    experiment_names,
    forward_transform,
    free_evolve,
    galilean_norm,
    h2_kernel_bound,
    h2_kernel_integral,
    interaction_momentum,
    inverse_transform,
    mass,
    run_experiment,
    sobolev_norm,
)

__all__ = [
    "ConfigError",
    "Discretization",
    "HypnlsError",
    "Trajectory",
    "energy",
    "evolve",
    "experiment_names",
    "forward_transform",
    "free_evolve",
    "galilean_norm",
    "h2_kernel_bound",
    "h2_kernel_integral",
    "interaction_momentum",
    "inverse_transform",
    "mass",
    "run_experiment",
    "sobolev_norm",
]
