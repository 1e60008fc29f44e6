"""Completeness and frame diagnostics for Gabor systems over rational lattices."""

__version__ = "0.1.0"

from .core import (
    CompactBump,
    DecayEnvelope,
    ExpPolyGaussian,
    Gaussian,
    Hermite,
    PolyGaussian,
    RationalGaussian,
    RationalLattice,
    ShiftedGaussianCombo,
    TotallyPositiveGaussian,
    Window,
    eval_window,
    make_lattice,
    window_from_dict,
    window_to_dict,
)
from .zak import TruncationError, ZakValue, ZakVector, vector_zak, zak, zak_grid
from .zibulski import (
    ReconstructionResult,
    Signal,
    ZZField,
    ZZMatrices,
    assemble,
    frame_bounds,
    grid_scan,
    reconstruct,
    relative_error,
    sample_signal,
    verdict,
)
from .theta import (
    CertificateResult,
    ThetaWitness,
    c_coeff,
    column_sets,
    completeness_certificate,
    fourier_consistency,
    gaussian_s0,
    theta,
)
from .oracle import (
    GaborSection,
    band_limited,
    build_section,
    residual,
    residual_sweep,
    unit_narrow_gaussian,
)

__all__ = [
    "__version__",
    "CompactBump",
    "DecayEnvelope",
    "ExpPolyGaussian",
    "Gaussian",
    "Hermite",
    "PolyGaussian",
    "RationalGaussian",
    "RationalLattice",
    "ShiftedGaussianCombo",
    "TotallyPositiveGaussian",
    "Window",
    "eval_window",
    "make_lattice",
    "window_from_dict",
    "window_to_dict",
    "TruncationError",
    "ZakValue",
    "ZakVector",
    "vector_zak",
    "zak",
    "zak_grid",
    "ReconstructionResult",
    "Signal",
    "ZZField",
    "ZZMatrices",
    "assemble",
    "frame_bounds",
    "grid_scan",
    "reconstruct",
    "relative_error",
    "sample_signal",
    "verdict",
    "CertificateResult",
    "ThetaWitness",
    "c_coeff",
    "column_sets",
    "completeness_certificate",
    "fourier_consistency",
    "gaussian_s0",
    "theta",
    "GaborSection",
    "band_limited",
    "build_section",
    "residual",
    "residual_sweep",
    "unit_narrow_gaussian",
]
