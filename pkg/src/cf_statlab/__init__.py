"""Continued-fraction statistics of random rationals.

Exact continued-fraction kernel, Gauss-Kuzmin target densities, ensemble
deviation statistics, Zaremba numerator scans, and diagonal-flow orbit
diagnostics on the space of planar unimodular lattices.
"""

__version__ = "0.1.0"

from .cfe import (
    INT63_MAX,
    ContinuantOverflowError,
    ReducedFraction,
    canonicalize,
    cf_len,
    convergents,
    digits_from_str,
    digits_to_str,
    evaluate,
    expand,
    mirror,
    neg_mod_inverse,
    reduce,
)
from .gauss_kuzmin import (
    RationalInterval,
    cylinder_interval,
    gauss_measure,
    levy_constant,
    single_digit_density,
    target_density,
)
from .ensembles import EmptyEnsembleError, EnsembleSpec, primes_below, realize_ensemble
from .deviation import DeviationReport, deviation_report, rate_fit, window_density
from .zaremba import ZarembaRow, conjecture_scan, hensley_count, is_k_zaremba, scan_denominator
from .orbit import (
    HERMITE_ALPHA1,
    DualResidual,
    EnsembleMass,
    ExcursionSummary,
    OrbitProfile,
    OrbitSpec,
    alpha1_exact,
    alpha1_profile,
    dual_orbit_identity,
    ensemble_mass,
    excursion_fraction,
    haar_mass_oracle,
    lagrange_gauss_alpha1,
)

__all__ = [
    "INT63_MAX",
    "ContinuantOverflowError",
    "ReducedFraction",
    "canonicalize",
    "cf_len",
    "convergents",
    "digits_from_str",
    "digits_to_str",
    "evaluate",
    "expand",
    "mirror",
    "neg_mod_inverse",
    "reduce",
    "RationalInterval",
    "cylinder_interval",
    "gauss_measure",
    "levy_constant",
    "single_digit_density",
    "target_density",
    "EmptyEnsembleError",
    "EnsembleSpec",
    "primes_below",
    "realize_ensemble",
    "DeviationReport",
    "deviation_report",
    "rate_fit",
    "window_density",
    "ZarembaRow",
    "conjecture_scan",
    "hensley_count",
    "is_k_zaremba",
    "scan_denominator",
    "HERMITE_ALPHA1",
    "DualResidual",
    "EnsembleMass",
    "ExcursionSummary",
    "OrbitProfile",
    "OrbitSpec",
    "alpha1_exact",
    "alpha1_profile",
    "dual_orbit_identity",
    "ensemble_mass",
    "excursion_fraction",
    "haar_mass_oracle",
    "lagrange_gauss_alpha1",
]
