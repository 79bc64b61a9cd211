"""Bell inequalities from state-independent contextuality sets."""

from ._core import (
    SicSet,
    SolverError,
    bell_value,
    bounds,
    catalog_names,
    catalog_set,
    edges,
    fit_visibility,
    independence_number,
    ks_colorable,
    load_set,
    lovasz_theta,
    probabilities,
    procrustean_filter,
    run_cli,
    simulate,
    spiral_spectrum,
    verify_set,
)

__all__ = [
    "SicSet",
    "SolverError",
    "bell_value",
    "bounds",
    "catalog_names",
    "catalog_set",
    "edges",
    "fit_visibility",
    "independence_number",
    "ks_colorable",
    "load_set",
    "lovasz_theta",
    "probabilities",
    "procrustean_filter",
    "run_cli",
    "simulate",
    "spiral_spectrum",
    "verify_set",
]
