"""Arnoldi aggregation of discrete-time Markov chains."""

from ._arnagg import (
    AdaptiveResult,
    Aggregation,
    ArnaggError,
    Chain,
    DimensionMismatch,
    InvalidInput,
    IoError,
    Model,
    SolverFailure,
    StateSpaceOverflow,
    build_aggregation,
    builtin,
    builtin_names,
    closed_form_error,
    dominant_eigenvector,
    error_bound,
    fixture,
    random_chain,
    run_adaptive,
    transient_error,
    transient_naive,
)

__all__ = [
    "AdaptiveResult",
    "Aggregation",
    "ArnaggError",
    "Chain",
    "DimensionMismatch",
    "InvalidInput",
    "IoError",
    "Model",
    "SolverFailure",
    "StateSpaceOverflow",
    "build_aggregation",
    "builtin",
    "builtin_names",
    "closed_form_error",
    "dominant_eigenvector",
    "error_bound",
    "fixture",
    "random_chain",
    "run_adaptive",
    "transient_error",
    "transient_naive",
]
