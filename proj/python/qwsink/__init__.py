"""Continuous-time quantum walk on a half line with an absorbing end site."""

from ._core import (
    __version__,
    absorption_fraction,
    absorption_probability,
    bessel_j,
    bessel_row,
    boundary_pole,
    first_passage_density,
    localization_length,
    propagate_state,
    propagator,
    propagator_column,
    reflection_amplitude,
    survival,
    verify,
    wigner,
)

__all__ = [
    "__version__",
    "absorption_fraction",
    "absorption_probability",
    "bessel_j",
    "bessel_row",
    "boundary_pole",
    "first_passage_density",
    "localization_length",
    "propagate_state",
    "propagator",
    "propagator_column",
    "reflection_amplitude",
    "survival",
    "verify",
    "wigner",
]
