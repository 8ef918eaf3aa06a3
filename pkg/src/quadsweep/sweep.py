"""Exact subset selection via hyperplane enumeration in lifted space.

naive_quadratic_sweep enumerates every d-tuple of lifted points, builds the
hyperplane they span, and scores candidate subsets assembled from tuple
subsets plus sorted-projection prefixes of the complement. The univariate
variance problem additionally gets a direct O(n log n) sorted sliding-window
solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .lifting import objective_lift_matrix
from .stats import Dataset, ObjectiveDescriptor, OBJECTIVES, score, stats_from_subset

BRUTE_FALLBACK_MAX_N = 20  # degenerate-input fallback threshold


@dataclass(frozen=True)
class SweepResult:
    indices: np.ndarray  # sorted 0-based k-subset
    score: float
    tuples_examined: int
    candidates_scored: int

    @property
    def k(self) -> int:
        return self.indices.shape[0]


def _finalize(data: Dataset, obj: ObjectiveDescriptor,
              indices: np.ndarray, tuples: int, cands: int) -> SweepResult:
    idx = np.sort(np.asarray(indices, dtype=np.int64))
    val = score(obj, stats_from_subset(data, idx))
    if val is None:
        raise RuntimeError("selected subset scored INVALID; data is degenerate")
    idx.setflags(write=False)
    return SweepResult(idx, float(val), tuples, cands)


def _check_k(data: Dataset, k: int, obj: ObjectiveDescriptor):
    if not (obj.min_count <= k <= data.n):
        raise ValueError(f"k={k} out of range [{obj.min_count}, {data.n}] "
                         f"for objective {obj.id!r}")


def naive_quadratic_sweep(data: Dataset, k: int,
                          obj: ObjectiveDescriptor) -> SweepResult:
    """Optimal k-subset under obj whenever the optimum is separable under
    obj's lift; exact score ties resolve to the lexicographically smallest
    index set.
    """
    if isinstance(obj, str):
        obj = OBJECTIVES[obj.lower()]
    _check_k(data, k, obj)
    d = obj.d
    if data.n < d + 1:
        raise ValueError(f"need at least d+1={d + 1} points, got {data.n}")

    L = objective_lift_matrix(obj, data.xs, data.ys)
    best_set, _val, tuples, cands, nondeg, found = _kernels.sweep_kernel(
        np.ascontiguousarray(L), data.xs, data.ys, k,
        obj.code, obj.maximize, obj.min_count)

    if nondeg == 0 or not found:
        # fully degenerate input (e.g. all points identical): fall back
        if data.n <= BRUTE_FALLBACK_MAX_N:
            from .oracle import brute_force_select
            return brute_force_select(data, k, obj)
        raise RuntimeError("all hyperplane tuples degenerate and n too large "
                           "for brute-force fallback")
    return _finalize(data, obj, best_set, tuples, cands)


def sliding_window_variance(xs, k: int) -> SweepResult:
    """Minimum sum of squared deviations over k points, by sorting.

    The optimal subset is contiguous in sorted order, so a width-k window
    with incremental power sums finds it in O(n log n) total time.
    """
    xs = np.asarray(xs, dtype=np.float64)
    n = xs.shape[0]
    if not (2 <= k <= n):
        raise ValueError(f"k={k} out of range [2, {n}]")
    if not np.all(np.isfinite(xs)):
        raise ValueError("inputs must be finite")

    order = np.argsort(xs, kind="stable")
    s = xs[order]
    c1 = np.concatenate(([0.0], np.cumsum(s)))
    c2 = np.concatenate(([0.0], np.cumsum(s * s)))
    win_sx = c1[k:] - c1[:-k]
    win_sxx = c2[k:] - c2[:-k]
    ssd = win_sxx - win_sx * win_sx / k
    start = int(np.argmin(ssd))  # first minimum: deterministic

    idx = np.sort(order[start:start + k])
    data = Dataset(xs, np.zeros(n))
    val = score(OBJECTIVES["var"], stats_from_subset(data, idx))
    idx.setflags(write=False)
    return SweepResult(idx, float(val), 0, n - k + 1)
