"""Shape-preserving C1 cubic splines reconstructed from histogram cell averages."""

from ._core import (
    HistosplineError,
    Spline,
    boundary_values,
    certify,
    convergence,
    feasible_intervals,
    fit,
    fit_fallback,
    fixture,
    fixture_names,
    slope_sensitivity,
)

__all__ = [
    "HistosplineError",
    "Spline",
    "boundary_values",
    "certify",
    "convergence",
    "feasible_intervals",
    "fit",
    "fit_fallback",
    "fixture",
    "fixture_names",
    "slope_sensitivity",
]
