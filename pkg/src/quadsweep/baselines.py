"""Native, seedable comparison methods: simulated annealing, RANSAC, Theil-Sen.

These target the canonical published algorithms, not bit-compatibility with
any particular package; every call is a deterministic function of
(instance, config, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .stats import (Dataset, ObjectiveDescriptor, OBJECTIVES, score,
                    score_from_sums, stats_from_subset)
from .sweep import SweepResult


@dataclass(frozen=True)
class AnnealConfig:
    t_max: float = 100000.0
    t_min: float = 1.0
    steps: int = 10000
    seed: int = 0

    def __post_init__(self):
        if not (self.t_max > self.t_min > 0):
            raise ValueError("require t_max > t_min > 0")
        if self.steps < 1:
            raise ValueError("require steps >= 1")


@dataclass(frozen=True)
class RansacConfig:
    iterations: int = 100
    min_inliers: int = 2
    residual_threshold: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("require iterations >= 1")


@dataclass(frozen=True)
class RansacResult:
    slope: float
    intercept: float
    inliers: np.ndarray  # sorted consensus index set


def _energy(obj: ObjectiveDescriptor, k, sx, sy, sxx, syy, sxy) -> float:
    val = score_from_sums(obj.code, k, sx, sy, sxx, syy, sxy)
    if val is None:
        return math.inf  # INVALID subsets are never kept
    return -val if obj.maximize else val


def simulated_annealing_select(data: Dataset, k: int, obj: ObjectiveDescriptor,
                               cfg: AnnealConfig) -> SweepResult:
    """Metropolis search over k-subsets with single-swap moves.

    Exponential temperature schedule from t_max to t_min; the best state
    visited is returned, scored exactly from scratch.
    """
    if isinstance(obj, str):
        obj = OBJECTIVES[obj.lower()]
    n = data.n
    if not (obj.min_count <= k <= n):
        raise ValueError(f"k={k} out of range [{obj.min_count}, {n}]")
    rng = np.random.default_rng(cfg.seed)

    perm = rng.permutation(n)
    members = list(perm[:k])
    outside = list(perm[k:])
    xs, ys = data.xs, data.ys
    sx = float(np.sum(xs[members]))
    sy = float(np.sum(ys[members]))
    sxx = float(np.sum(xs[members] ** 2))
    syy = float(np.sum(ys[members] ** 2))
    sxy = float(np.sum(xs[members] * ys[members]))

    cur_e = _energy(obj, k, sx, sy, sxx, syy, sxy)
    best_e = cur_e
    best_members = sorted(members)
    decay = math.log(cfg.t_max / cfg.t_min)
    steps = cfg.steps
    n_out = n - k

    for step in range(steps):
        if n_out == 0:
            break
        t = cfg.t_max * math.exp(-decay * (step / (steps - 1) if steps > 1 else 1.0))
        ii = int(rng.integers(k))
        jj = int(rng.integers(n_out))
        out_pt = members[ii]
        in_pt = outside[jj]
        dx_out, dy_out = xs[out_pt], ys[out_pt]
        dx_in, dy_in = xs[in_pt], ys[in_pt]
        nsx = sx + dx_in - dx_out
        nsy = sy + dy_in - dy_out
        nsxx = sxx + dx_in * dx_in - dx_out * dx_out
        nsyy = syy + dy_in * dy_in - dy_out * dy_out
        nsxy = sxy + dx_in * dy_in - dx_out * dy_out
        new_e = _energy(obj, k, nsx, nsy, nsxx, nsyy, nsxy)
        if math.isinf(new_e):
            accept = math.isinf(cur_e)
        elif new_e <= cur_e:
            accept = True
        else:
            accept = rng.random() < math.exp(-(new_e - cur_e) / t)
        if accept:
            members[ii], outside[jj] = in_pt, out_pt
            sx, sy, sxx, syy, sxy = nsx, nsy, nsxx, nsyy, nsxy
            cur_e = new_e
            if cur_e < best_e:
                best_e = cur_e
                best_members = sorted(members)

    if math.isinf(best_e):
        raise RuntimeError("annealing never reached a valid subset")
    idx = np.asarray(best_members, dtype=np.int64)
    exact = score(obj, stats_from_subset(data, idx))
    idx.setflags(write=False)
    return SweepResult(idx, float(exact), 0, cfg.steps)


def ransac_line(data: Dataset, cfg: RansacConfig) -> Optional[RansacResult]:
    """Classic two-point RANSAC with vertical residuals.

    Keeps the largest consensus set of size >= min_inliers and refits it by
    least squares; returns None when no sample yields a consensus.
    """
    n = data.n
    if n < 2:
        raise ValueError("RANSAC needs at least 2 points")
    rng = np.random.default_rng(cfg.seed)
    xs, ys = data.xs, data.ys

    best_count = 0
    best_inliers = None
    for _ in range(cfg.iterations):
        i, j = rng.choice(n, size=2, replace=False)
        if xs[i] == xs[j]:
            continue
        m = (ys[j] - ys[i]) / (xs[j] - xs[i])
        c = ys[i] - m * xs[i]
        resid = np.abs(ys - (m * xs + c))
        consensus = np.flatnonzero(resid <= cfg.residual_threshold)
        if consensus.size >= cfg.min_inliers and consensus.size > best_count:
            best_count = int(consensus.size)
            best_inliers = consensus

    if best_inliers is None:
        return None
    cx = xs[best_inliers]
    cy = ys[best_inliers]
    dx = float(np.sum(cx * cx) - np.sum(cx) ** 2 / cx.size)
    if dx <= 1e-12:
        return None
    slope = float((np.sum(cx * cy) - np.sum(cx) * np.sum(cy) / cx.size) / dx)
    intercept = float(np.mean(cy) - slope * np.mean(cx))
    best_inliers = np.sort(best_inliers).astype(np.int64)
    best_inliers.setflags(write=False)
    return RansacResult(slope, intercept, best_inliers)


def theil_sen(data: Dataset) -> tuple[float, float]:
    """Median-of-pairwise-slopes line; pairs with equal x are skipped."""
    n = data.n
    if n < 2:
        raise ValueError("Theil-Sen needs at least 2 points")
    xs, ys = data.xs, data.ys
    dxm = xs[:, None] - xs[None, :]
    dym = ys[:, None] - ys[None, :]
    iu = np.triu_indices(n, k=1)
    dx = dxm[iu]
    dy = dym[iu]
    ok = dx != 0
    if not np.any(ok):
        raise ValueError("all x values equal; slope undefined")
    slope = float(np.median(dy[ok] / dx[ok]))
    intercept = float(np.median(ys - slope * xs))
    return slope, intercept
