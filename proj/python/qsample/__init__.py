"""Sampling-based security analysis: error probabilities, bounds and protocol simulations."""

from ._core import (
    BudgetError,
    PreconditionError,
    applicable_bounds,
    asymptotic_qkd_rate,
    binary_entropy,
    eps_class_exact,
    hamming_ball_log_bound,
    hamming_ball_log_count,
    hash_eval,
    privacy_amplification_bound,
    qkd_bound,
    qkd_max_len,
    qkd_protocol_cap,
    qkd_rate_threshold,
    qot_bound,
    simulate_qkd,
    simulate_qot,
)

__all__ = [
    "BudgetError",
    "PreconditionError",
    "applicable_bounds",
    "asymptotic_qkd_rate",
    "binary_entropy",
    "eps_class_exact",
    "hamming_ball_log_bound",
    "hamming_ball_log_count",
    "hash_eval",
    "privacy_amplification_bound",
    "qkd_bound",
    "qkd_max_len",
    "qkd_protocol_cap",
    "qkd_rate_threshold",
    "qot_bound",
    "simulate_qkd",
    "simulate_qot",
]
