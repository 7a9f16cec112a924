"""Structured random orthogonal embeddings: transforms, estimators, closed forms and oracles."""
from ._accel import HAS_NUMBA, use_numba
from .estimators import (
    AngularEstimatorSpec,
    DotEstimatorSpec,
    angle,
    angular_kernel,
    approx_gram,
    estimate_angular,
    estimate_dot,
    gram_error,
    gram_matrix,
)
from .markov import ChainReport, NotMixedError, analyze
from .oracle import (
    EstimateStats,
    brute_force_mse_dot,
    dense_reference,
    estimate_angular_probs,
    monte_carlo_mse,
    plugin_angular_mse,
)
from .theory import (
    MseFormulaInputs,
    mse_angular_base,
    mse_angular_general,
    mse_base_dot,
    mse_ort_dot,
    mse_sd,
    mse_sd_hybrid,
    mse_sd_rademacher,
    mse_sd_uniform,
    mse_with_replacement,
)
from .transforms import (
    DiagonalLaw,
    DimensionError,
    FixedDiagonal,
    SdProductSpec,
    StructuredOrthogonal,
    SubsamplingPolicy,
    embed,
    expected_pair_count,
    fwht,
    kron_matvec,
    measure_pair_count,
    sample_gort,
    walsh_matvec,
)

__version__ = "0.1.0"

__all__ = [
    "AngularEstimatorSpec",
    "ChainReport",
    "DiagonalLaw",
    "DimensionError",
    "DotEstimatorSpec",
    "EstimateStats",
    "FixedDiagonal",
    "HAS_NUMBA",
    "MseFormulaInputs",
    "NotMixedError",
    "SdProductSpec",
    "StructuredOrthogonal",
    "SubsamplingPolicy",
    "analyze",
    "angle",
    "angular_kernel",
    "approx_gram",
    "brute_force_mse_dot",
    "dense_reference",
    "embed",
    "estimate_angular",
    "estimate_angular_probs",
    "estimate_dot",
    "expected_pair_count",
    "fwht",
    "gram_error",
    "gram_matrix",
    "kron_matvec",
    "measure_pair_count",
    "monte_carlo_mse",
    "mse_angular_base",
    "mse_angular_general",
    "mse_base_dot",
    "mse_ort_dot",
    "mse_sd",
    "mse_sd_hybrid",
    "mse_sd_rademacher",
    "mse_sd_uniform",
    "mse_with_replacement",
    "plugin_angular_mse",
    "sample_gort",
    "use_numba",
    "walsh_matvec",
]
