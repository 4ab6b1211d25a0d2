"""Exact-arithmetic laboratory for Stackelberg shortest-path pricing.

The modules mirror the workflow: :mod:`stacksp.core` (priced networks and the
consumer), :mod:`stacksp.labelcover`, :mod:`stacksp.reduction` (gadget chain,
islands, extraction), :mod:`stacksp.solvers` and :mod:`stacksp.experiment`.
"""

from .core import (
    INF,
    Edge,
    EdgeKind,
    PurchaseResult,
    StackInstance,
    consumer_best_response,
    normalize_pricing,
    validate_instance,
)
from .errors import InequalityViolated, InputError, InvalidParams, NoPath, StackSPError, TooLarge, Unbounded
from .labelcover import Assignment, LabelCoverInstance, brute_force_opt, generate_planted, satisfied_count
from .reduction import (
    ReductionMap,
    completeness_pricing,
    decompose_islands,
    extract_assignment,
    island_diagnostics,
    reduce,
)
from .solvers import Limits, SolverResult, best_single_price, exact_optimal_pricing, pricable_profile, uniform_pricing
from .experiment import GapReport, run_gap_experiment

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Edge",
    "EdgeKind",
    "PurchaseResult",
    "StackInstance",
    "consumer_best_response",
    "normalize_pricing",
    "validate_instance",
    "InequalityViolated",
    "InputError",
    "InvalidParams",
    "NoPath",
    "StackSPError",
    "TooLarge",
    "Unbounded",
    "Assignment",
    "LabelCoverInstance",
    "brute_force_opt",
    "generate_planted",
    "satisfied_count",
    "ReductionMap",
    "completeness_pricing",
    "decompose_islands",
    "extract_assignment",
    "island_diagnostics",
    "reduce",
    "Limits",
    "SolverResult",
    "best_single_price",
    "exact_optimal_pricing",
    "pricable_profile",
    "uniform_pricing",
    "GapReport",
    "run_gap_experiment",
]
