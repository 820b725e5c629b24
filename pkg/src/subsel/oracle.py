"""Brute-force reference implementations for tests and acceptance checks.

Everything here evaluates objectives from scratch, straight from their
definitions, in plain Python. None of it touches the incremental
gain/update machinery in :mod:`subsel.objectives`; that independence is the
point, since these functions are the yardstick the fast paths are measured
against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .exceptions import ApproximationFailure, EnumerationBoundError, InputError
from .matrices import FeatureMatrix, SimilarityMatrix
from .objectives import SubmodularObjective
from .optimizer import hybrid_maximize

__all__ = [
    "GREEDY_GUARANTEE",
    "OracleReport",
    "facility_location_direct",
    "feature_based_direct",
    "brute_force_max",
    "check_ratio",
]

GREEDY_GUARANTEE = 1.0 - math.exp(-1.0)

ENUMERATION_LIMIT = 10_000_000


def facility_location_direct(S: SimilarityMatrix, X: Iterable[int]) -> float:
    """Facility-location value of X, term by term: sum over every element of
    its best similarity to X. Empty X is worth 0."""
    sel = sorted(set(int(x) for x in X))
    n = S.n_examples
    for x in sel:
        if not 0 <= x < n:
            raise IndexError(f"index {x} out of range for {n} examples")
    total = 0.0
    for y in range(n):
        best = 0.0
        for x in sel:
            s = S.lookup(x, y)
            if s > best:
                best = s
        total += best
    return total


def feature_based_direct(F: FeatureMatrix, X: Iterable[int], concave="sqrt", weights=None) -> float:
    """Feature-based value of X: per feature, saturate the accumulated mass
    and weight it. Empty X is worth 0."""
    if concave == "sqrt":
        phi = math.sqrt
    elif concave == "log":
        phi = math.log1p
    elif callable(concave):
        phi = concave
    else:
        raise InputError(f"unknown saturator {concave!r}")
    sel = sorted(set(int(x) for x in X))
    n, d = F.n_examples, F.n_features
    for x in sel:
        if not 0 <= x < n:
            raise IndexError(f"index {x} out of range for {n} examples")
    if weights is None:
        weights = [1.0] * d
    total = 0.0
    for j in range(d):
        mass = 0.0
        for x in sel:
            mass += float(F.values[x, j])
        total += float(weights[j]) * phi(mass)
    return total


@dataclass(frozen=True)
class OracleReport:
    """Greedy vs exhaustive comparison on one instance."""

    opt_value: float
    opt_set: tuple[int, ...]
    greedy_value: float
    ratio: float

    def __post_init__(self):
        if not (0.0 <= self.ratio <= 1.0 + 1e-12):
            raise InputError(f"greedy/optimal ratio {self.ratio} outside [0, 1]")


def brute_force_max(
    f: Callable[[tuple[int, ...]], float],
    n: int,
    k: int,
    limit: int = ENUMERATION_LIMIT,
) -> tuple[float, tuple[int, ...]]:
    """Exhaustive maximum of f over all size-min(k, n) subsets of range(n).

    Ties go to the lexicographically smallest subset. Refuses instances with
    more than ``limit`` subsets to enumerate.
    """
    if n < 1 or k < 1:
        raise InputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    r = min(k, n)
    count = math.comb(n, r)
    if count > limit:
        raise EnumerationBoundError(
            f"C({n}, {r}) = {count} subsets exceeds the enumeration limit of {limit}"
        )
    best_value = -math.inf
    best_subset: tuple[int, ...] = ()
    for subset in combinations(range(n), r):
        value = float(f(subset))
        if value > best_value:
            best_value, best_subset = value, subset
    return best_value, best_subset


def check_ratio(
    objective: SubmodularObjective,
    direct: Callable[[tuple[int, ...]], float],
    k: int,
) -> OracleReport:
    """Run greedy and exhaustive search on one instance and compare.

    ``objective`` drives the greedy optimizer; ``direct`` is the from-scratch
    evaluator used both to enumerate and to score the greedy set, so the two
    values are measured by the same yardstick. Raises ApproximationFailure
    if greedy falls below the (1 - 1/e) guarantee.
    """
    result = hybrid_maximize(objective, k)
    greedy_set = result.ranking
    greedy_value = float(direct(tuple(greedy_set)))
    opt_value, opt_set = brute_force_max(direct, objective.n_examples, k)
    ratio = 1.0 if opt_value == 0.0 else greedy_value / opt_value
    report = OracleReport(opt_value, opt_set, greedy_value, ratio)
    if ratio < GREEDY_GUARANTEE - 1e-12:
        raise ApproximationFailure(
            f"greedy value {greedy_value} is {ratio:.6f} of optimum {opt_value}, "
            f"below the guaranteed {GREEDY_GUARANTEE:.6f}; greedy set {tuple(greedy_set)}, "
            f"optimal set {opt_set}",
            greedy_set,
            opt_set,
        )
    return report
