# -*- coding: utf-8 -*-
"""Ripple Toolkit - Processors 模組"""

from .baselines import BaselineResult, mcmc_ratio_estimate, supernode_tour_estimate
from .oracle import ExactCounts, build_hon, compare_counts, enumerate_cis, exact_count_vector
from .reservoir import Reservoir, ReservoirMatrix
from .ripple_engine import confidence_interval, first_stratum_pass, run, run_stratum, sample_tour
from .stats_collector import FirstStratum, RippleResult, StratumResult
from .stratify import SeedSet, Stratification, select_seeds, validate_eps

__all__ = [
    "BaselineResult",
    "mcmc_ratio_estimate",
    "supernode_tour_estimate",
    "ExactCounts",
    "build_hon",
    "compare_counts",
    "enumerate_cis",
    "exact_count_vector",
    "Reservoir",
    "ReservoirMatrix",
    "confidence_interval",
    "first_stratum_pass",
    "run",
    "run_stratum",
    "sample_tour",
    "FirstStratum",
    "RippleResult",
    "StratumResult",
    "SeedSet",
    "Stratification",
    "select_seeds",
    "validate_eps",
]
