"""Ground-truth brute force: exhaustive k-subset search.

Subsets are visited in revolving-door (Gray-code) order so each step costs
one point removal plus one addition on the running power sums, which keeps
even C(25,13) ~ 5.2M-subset instances at desk scale.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .stats import (Dataset, ObjectiveDescriptor, OBJECTIVES, SufficientStats,
                    score, stats_from_subset)
from .sweep import SweepResult

DEFAULT_BUDGET = 10 ** 8
LTS_MIN_COUNT = 3


class BudgetExceededError(RuntimeError):
    """C(n, k) exceeds the configured enumeration budget."""


def _check_budget(n: int, k: int, budget: int):
    total = math.comb(n, k)
    if total > budget:
        raise BudgetExceededError(
            f"C({n},{k}) = {total} exceeds enumeration budget {budget}")
    return total


def lts_sse(s: SufficientStats):
    """Residual sum of squares of the least-squares line, from power sums."""
    k = s.count
    dx = s.s_xx - s.s_x * s.s_x / k
    dy = s.s_yy - s.s_y * s.s_y / k
    cxy = s.s_xy - s.s_x * s.s_y / k
    if dx <= _kernels.ZERO_VAR_TOL:
        return None
    return dy - cxy * cxy / dx


def brute_force_select(data: Dataset, k: int, obj: ObjectiveDescriptor,
                       budget: int = DEFAULT_BUDGET) -> SweepResult:
    """Exhaustive argmax/argmin of obj over all k-subsets.

    Ties resolve to the lexicographically smallest index set.
    """
    if isinstance(obj, str):
        obj = OBJECTIVES[obj.lower()]
    if not (obj.min_count <= k <= data.n):
        raise ValueError(f"k={k} out of range [{obj.min_count}, {data.n}] "
                         f"for objective {obj.id!r}")
    total = _check_budget(data.n, k, budget)
    best_set, _val, visited, found = _kernels.brute_force_kernel(
        data.xs, data.ys, k, obj.code, obj.maximize, obj.min_count)
    if not found:
        raise RuntimeError("every subset scored INVALID; data is degenerate")
    idx = np.sort(best_set)
    exact = score(obj, stats_from_subset(data, idx))
    if exact is None:
        raise RuntimeError("winning subset scored INVALID on recomputation")
    idx.setflags(write=False)
    assert visited == total
    return SweepResult(idx, float(exact), 0, visited)


def lts_brute_force(data: Dataset, k: int,
                    budget: int = DEFAULT_BUDGET) -> SweepResult:
    """Subset with the smallest least-squares residual sum of squares."""
    if not (LTS_MIN_COUNT <= k <= data.n):
        raise ValueError(f"k={k} out of range [{LTS_MIN_COUNT}, {data.n}] for LTS")
    total = _check_budget(data.n, k, budget)
    best_set, _val, visited, found = _kernels.brute_force_kernel(
        data.xs, data.ys, k, _kernels.CODE_LTS, False, LTS_MIN_COUNT)
    if not found:
        raise RuntimeError("every subset has zero x-variance; LTS undefined")
    idx = np.sort(best_set)
    exact = lts_sse(stats_from_subset(data, idx))
    if exact is None:
        raise RuntimeError("winning subset has zero x-variance on recomputation")
    idx.setflags(write=False)
    assert visited == total
    return SweepResult(idx, float(exact), 0, visited)
