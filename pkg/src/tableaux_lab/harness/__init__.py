"""Experiment configuration, runners, reports and the command-line interface."""

from ..stats import ks_statistic, moments, semicircle_cdf
from .config import DEFAULT_PARAMS, DEFAULT_THRESHOLDS, EXPERIMENTS, ExperimentConfig
from .experiments import (run, run_brownian_compare, run_exact_checks, run_limit_shape, run_poissonize,
                          run_scaling, run_spectrum_compare)
from .report import ComparisonReport, Criterion

__all__ = [
    "ComparisonReport", "Criterion", "DEFAULT_PARAMS", "DEFAULT_THRESHOLDS", "EXPERIMENTS", "ExperimentConfig",
    "ks_statistic", "moments", "run", "run_brownian_compare", "run_exact_checks", "run_limit_shape",
    "run_poissonize", "run_scaling", "run_spectrum_compare", "semicircle_cdf",
]
