"""Datasets, incremental sufficient statistics, and objective scoring.

Every objective in the package is a function of the power sums
(S_X, S_Y, S_XX, S_YY, S_XY, count) over the selected subset, so all scoring
is O(1) once those sums are known. Scores of degenerate (zero-variance)
subsets are INVALID (returned as None) rather than NaN/Inf; compare() never
prefers an INVALID score over a valid one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ._kernels import (
    CODE_COV,
    CODE_DV,
    CODE_R,
    CODE_R2,
    CODE_TV,
    CODE_VAR,
    ZERO_VAR_TOL,
)

Score = Optional[float]  # None encodes INVALID


@dataclass(frozen=True)
class Dataset:
    """Paired real vectors (X, Y) with index identity."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.float64)
        ys = np.asarray(self.ys, dtype=np.float64)
        if xs.ndim != 1 or ys.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and ys must be 1-d sequences of equal length")
        if xs.shape[0] < 1:
            raise ValueError("dataset must contain at least one point")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("dataset entries must be finite")
        xs = xs.copy()
        ys = ys.copy()
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def n(self) -> int:
        return self.xs.shape[0]

    def subset(self, indices: Iterable[int]) -> "Dataset":
        idx = _check_indices(indices, self.n)
        return Dataset(self.xs[idx], self.ys[idx])

    def complement_indices(self, indices: Iterable[int]) -> np.ndarray:
        idx = _check_indices(indices, self.n)
        mask = np.ones(self.n, dtype=bool)
        mask[idx] = False
        return np.flatnonzero(mask)


@dataclass(frozen=True)
class SufficientStats:
    """Running power sums over a selected subset; supports O(1) add/remove."""

    count: int = 0
    s_x: float = 0.0
    s_y: float = 0.0
    s_xx: float = 0.0
    s_yy: float = 0.0
    s_xy: float = 0.0


@dataclass(frozen=True)
class ObjectiveDescriptor:
    """Identity, direction, lift, and minimum subset size of one objective."""

    id: str
    direction: str  # "minimize" | "maximize"
    lift_id: str  # "l2" | "l4" | "l5"
    d: int
    rho: str  # sort order hint: "ascending" for minimized objectives
    min_count: int
    code: int  # kernel objective code
    # Coordinates fed to the lift. Covariance's separating curve is a rotated
    # hyperbola (x-x0)(y-y0)=c, which the axis-aligned 4-d lift can only
    # linearize after the 45-degree change of variables u=x+y, v=x-y.
    lift_vars: str = "xy"  # "xy" | "uv"

    @property
    def maximize(self) -> bool:
        return self.direction == "maximize"


OBJECTIVES = {
    "var": ObjectiveDescriptor("var", "minimize", "l2", 2, "ascending", 2, CODE_VAR),
    "tv": ObjectiveDescriptor("tv", "minimize", "l4", 4, "ascending", 2, CODE_TV),
    "dv": ObjectiveDescriptor("dv", "maximize", "l4", 4, "descending", 2, CODE_DV),
    "cov": ObjectiveDescriptor("cov", "maximize", "l4", 4, "descending", 2,
                               CODE_COV, "uv"),
    "r": ObjectiveDescriptor("r", "maximize", "l5", 5, "descending", 3, CODE_R),
    "r2": ObjectiveDescriptor("r2", "maximize", "l5", 5, "descending", 3, CODE_R2),
}


def get_objective(obj_id: str) -> ObjectiveDescriptor:
    try:
        return OBJECTIVES[obj_id.lower()]
    except KeyError:
        raise ValueError(f"unknown objective {obj_id!r}; "
                         f"expected one of {sorted(OBJECTIVES)}") from None


def _check_indices(indices: Iterable[int], n: int) -> np.ndarray:
    idx = np.asarray(sorted(int(i) for i in indices), dtype=np.int64)
    if idx.size:
        if idx[0] < 0 or idx[-1] >= n:
            raise IndexError(f"subset index out of range for n={n}")
        if np.any(np.diff(idx) == 0):
            raise ValueError("subset indices must be distinct")
    return idx


def stats_from_subset(data: Dataset, indices: Iterable[int]) -> SufficientStats:
    """Exact power sums over the selected points (0-based indices)."""
    idx = _check_indices(indices, data.n)
    x = data.xs[idx]
    y = data.ys[idx]
    return SufficientStats(
        count=int(idx.size),
        s_x=float(np.sum(x)),
        s_y=float(np.sum(y)),
        s_xx=float(np.sum(x * x)),
        s_yy=float(np.sum(y * y)),
        s_xy=float(np.sum(x * y)),
    )


def add_point(s: SufficientStats, x: float, y: float) -> SufficientStats:
    return SufficientStats(s.count + 1, s.s_x + x, s.s_y + y,
                           s.s_xx + x * x, s.s_yy + y * y, s.s_xy + x * y)


def remove_point(s: SufficientStats, x: float, y: float) -> SufficientStats:
    if s.count < 1:
        raise ValueError("cannot remove a point from empty stats")
    return SufficientStats(s.count - 1, s.s_x - x, s.s_y - y,
                           s.s_xx - x * x, s.s_yy - y * y, s.s_xy - x * y)


def score_from_sums(code: int, k: int, sx: float, sy: float,
                    sxx: float, syy: float, sxy: float) -> Score:
    """Pure-Python mirror of the compiled scoring expression."""
    dx = sxx - sx * sx / k
    dy = syy - sy * sy / k
    cxy = sxy - sx * sy / k
    if code == CODE_VAR:
        return dx
    if code == CODE_TV:
        return dx + dy
    if code == CODE_DV:
        return dx - dy
    if code == CODE_COV:
        return cxy
    if code in (CODE_R, CODE_R2):
        if dx <= ZERO_VAR_TOL or dy <= ZERO_VAR_TOL:
            return None
        if code == CODE_R:
            return cxy / math.sqrt(dx * dy)
        return cxy * cxy / (dx * dy)
    raise ValueError(f"unknown objective code {code}")


def score(obj: ObjectiveDescriptor, s: SufficientStats) -> Score:
    """Objective value over a subset's sufficient statistics.

    Raises if the subset is smaller than the objective's minimum size;
    returns None (INVALID) on zero-variance denominators.
    """
    if s.count < obj.min_count:
        raise ValueError(f"objective {obj.id!r} requires at least "
                         f"{obj.min_count} points, got {s.count}")
    return score_from_sums(obj.code, s.count, s.s_x, s.s_y,
                           s.s_xx, s.s_yy, s.s_xy)


def compare(obj: ObjectiveDescriptor, a: Score, b: Score) -> int:
    """Order two scores under the objective's direction.

    Returns +1 if a is preferred, -1 if b is preferred, 0 on ties.
    INVALID (None) loses to every valid score.
    """
    if a is None and b is None:
        return 0
    if a is None:
        return -1
    if b is None:
        return 1
    if a == b:
        return 0
    better = a > b if obj.maximize else a < b
    return 1 if better else -1
