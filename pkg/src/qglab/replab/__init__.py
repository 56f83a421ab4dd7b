"""Finite truncations of the concrete representations, norms and spectra."""
from .chebyshev import ChebPoly, chebyshev_approx
from .norms import Branch, SpectrumResult, operator_norm, spectral_scaling_diagnostic, spectrum_gamma_star_gamma
from .reps import (
    GridRep,
    TruncatedRep,
    build_full_rep,
    build_grid_rep,
    build_lower_half_grid_rep,
    eval_element,
    multiplicativity_defect,
)
from .separation import (
    InjectivityResult,
    SeparationTarget,
    imaginary_part_polynomial,
    injectivity_diagnostic,
    norm_separation_experiment,
)

__all__ = [
    "Branch",
    "ChebPoly",
    "GridRep",
    "InjectivityResult",
    "SeparationTarget",
    "SpectrumResult",
    "TruncatedRep",
    "build_full_rep",
    "build_grid_rep",
    "build_lower_half_grid_rep",
    "chebyshev_approx",
    "eval_element",
    "imaginary_part_polynomial",
    "injectivity_diagnostic",
    "multiplicativity_defect",
    "norm_separation_experiment",
    "operator_norm",
    "spectral_scaling_diagnostic",
    "spectrum_gamma_star_gamma",
]
