"""Python front end for the mx3 Max-3-XOR measurement toolkit."""

import json

from . import _core
from ._core import (
    CapError,
    Error,
    Instance,
    NumericalError,
    ParseError,
    ValidationError,
    evaluate,
    instance_objective,
    parse_instance,
    planted_instance,
    predicate_fourier,
    random_baseline,
    random_instance,
    serialize,
)

__all__ = [
    "CapError",
    "Error",
    "Instance",
    "NumericalError",
    "ParseError",
    "ValidationError",
    "brute_force",
    "check_pairwise_independent",
    "evaluate",
    "gap_experiment",
    "instance_objective",
    "parse_instance",
    "planted_instance",
    "predicate_fourier",
    "random_baseline",
    "random_instance",
    "serialize",
    "two_round",
]


def check_pairwise_independent(dist_text, gamma="1/2", tol="0"):
    """Verdict and marginals for a distribution given in dump format."""
    return json.loads(_core.check_pairwise_independent(dist_text, gamma, tol))


def brute_force(instance, jobs=0):
    """Exact optimum as (value, assignment, number of optimal assignments)."""
    return _core.brute_force(instance, jobs)


def two_round(instance, seed, restarts=5, oracle=False, baseline_trials=10000):
    """Run the two-round pipeline; returns (assignment, report dict)."""
    assignment, report = _core.two_round(instance, seed, restarts, oracle, baseline_trials)
    return assignment, json.loads(report)


def gap_experiment(family, count, sizes, constraints, eps=0.1, seed=0, oracle=False, jobs=1):
    """Pipeline over a generated family; returns {"rows": [...], "aggregate": {...}}."""
    return json.loads(_core.gap_experiment(family, count, list(sizes), constraints, eps, seed, oracle, jobs))
