"""Intrinsic dimension estimation from Fisher separability statistics."""

from ._core import (
    DegenerateDataError,
    FullySeparableSignal,
    IdEstimate,
    InsufficientDataError,
    InvalidDataError,
    PreprocessedCloud,
    alpha_profile,
    correlation_dimension,
    global_id,
    knn,
    lambert_w0,
    local_knn_id,
    max_dim_global,
    max_dim_pointwise,
    mle_id,
    n_from_p,
    p_ref,
    pointwise_id,
    preprocess,
    sample_ball,
    sample_cube,
    sample_gaussian,
    sample_sphere,
    separability_profile,
    swiss_roll,
    ten_balls,
    twonn_id,
    __version__,
)

__all__ = [
    "DegenerateDataError",
    "FullySeparableSignal",
    "IdEstimate",
    "InsufficientDataError",
    "InvalidDataError",
    "PreprocessedCloud",
    "alpha_profile",
    "correlation_dimension",
    "global_id",
    "knn",
    "lambert_w0",
    "local_knn_id",
    "max_dim_global",
    "max_dim_pointwise",
    "mle_id",
    "n_from_p",
    "p_ref",
    "pointwise_id",
    "preprocess",
    "sample_ball",
    "sample_cube",
    "sample_gaussian",
    "sample_sphere",
    "separability_profile",
    "swiss_roll",
    "ten_balls",
    "twonn_id",
    "__version__",
]
