"""Dynamic arbitration of quantile forecasts (compiled core)."""

from ._core import (
    InverseCdf,
    SynapseError,
    ValidationError,
    allocate_samples,
    arbitrate,
    compute_weights,
    crps,
    decile_levels,
    empirical_quantiles,
    evaluate,
    lumpiness,
    mase,
    oracle_selection,
    pearson,
    pinball_loss,
    report,
    weighted_quantile_loss,
    write_synthetic_suite,
)

__all__ = [
    "InverseCdf",
    "SynapseError",
    "ValidationError",
    "allocate_samples",
    "arbitrate",
    "compute_weights",
    "crps",
    "decile_levels",
    "empirical_quantiles",
    "evaluate",
    "lumpiness",
    "mase",
    "oracle_selection",
    "pearson",
    "pinball_loss",
    "report",
    "weighted_quantile_loss",
    "write_synthetic_suite",
]
