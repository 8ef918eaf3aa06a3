"""Hyperplane construction and convex-hull distance / separability checks.

hyperplane_from_tuple builds the unique hyperplane through d points in R^d
as the nullspace of the intercept-augmented matrix. hull_distance solves the
squared-distance quadratic program between two convex hulls with an away-step
conditional-gradient (Frank-Wolfe) method, certifying optimality through the
duality gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .lifting import LiftedPoint, lift_matrix, transform_coordinates
from .stats import Dataset

DEFAULT_EPSILON = 1e-10  # separability tolerance on the squared distance
DEFAULT_GAP_TOL = 1e-12
DEFAULT_MAX_ITER = 20000


@dataclass(frozen=True)
class Hyperplane:
    """Unit-normal hyperplane w . p + b = 0 in R^d."""

    w: np.ndarray
    b: float

    @property
    def d(self) -> int:
        return self.w.shape[0]

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=np.float64) @ self.w + self.b


@dataclass(frozen=True)
class SeparabilityReport:
    separable: bool
    distance_sq: float
    gap: float
    iterations: int
    converged: bool
    witness_a: np.ndarray
    witness_b: np.ndarray


def _coords(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=np.float64)
    else:
        rows = [p.coords if isinstance(p, LiftedPoint) else p for p in points]
        arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array of point coordinates")
    return arr


def hyperplane_from_tuple(points: Sequence[LiftedPoint] | np.ndarray) -> Optional[Hyperplane]:
    """Hyperplane through exactly d points of dimension d, or None (degenerate).

    The normal has unit length and a positive first nonzero coordinate; the
    sign ambiguity is resolved downstream by trying both orientations.
    """
    arr = _coords(points)
    n, d = arr.shape
    if n != d:
        raise ValueError(f"need exactly d={d} points, got {n}")
    m = np.empty((d, d + 1))
    m[:, :d] = arr
    m[:, d] = 1.0
    v = np.empty(d + 1)
    if not _kernels.nullspace_vector(m, v):
        return None
    w = v[:d].copy()
    w.setflags(write=False)
    return Hyperplane(w, float(v[d]))


def hull_distance(a, b, max_iter: int = DEFAULT_MAX_ITER,
                  tol: float = DEFAULT_GAP_TOL,
                  epsilon: float = DEFAULT_EPSILON) -> SeparabilityReport:
    """Squared distance between conv(a) and conv(b).

    Away-step Frank-Wolfe over the product of barycentric simplices with
    exact line search; stops when the duality gap drops below tol. The
    report flags non-convergence but still carries the best objective seen.
    """
    va = _coords(a)
    vb = _coords(b)
    if va.shape[0] == 0 or vb.shape[0] == 0:
        raise ValueError("both point sets must be nonempty")
    if va.shape[1] != vb.shape[1]:
        raise ValueError("point sets must share a dimension")
    if not (np.all(np.isfinite(va)) and np.all(np.isfinite(vb))):
        raise ValueError("point coordinates must be finite")

    pa, pb, dist_sq, gap, it, converged = _kernels.hull_distance_kernel(
        np.ascontiguousarray(va), np.ascontiguousarray(vb),
        int(max_iter), float(tol))
    pa.setflags(write=False)
    pb.setflags(write=False)
    return SeparabilityReport(
        separable=float(dist_sq) > epsilon,
        distance_sq=float(dist_sq),
        gap=float(gap),
        iterations=int(it),
        converged=bool(converged),
        witness_a=pa,
        witness_b=pb,
    )


def check_separability(inliers: Dataset, outliers: Dataset, lift_id: str,
                       epsilon: float = DEFAULT_EPSILON,
                       max_iter: int = DEFAULT_MAX_ITER,
                       tol: float = DEFAULT_GAP_TOL,
                       variables: str = "xy") -> SeparabilityReport:
    """Lift both point sets and test whether their hulls are disjoint."""
    ax, ay = transform_coordinates(variables, inliers.xs, inliers.ys)
    bx, by = transform_coordinates(variables, outliers.xs, outliers.ys)
    va = lift_matrix(lift_id, ax, ay)
    vb = lift_matrix(lift_id, bx, by)
    return hull_distance(va, vb, max_iter=max_iter, tol=tol, epsilon=epsilon)


def midpoint_hyperplane(report: SeparabilityReport) -> Optional[Hyperplane]:
    """Separating hyperplane halfway between the two hull witnesses."""
    u = report.witness_a - report.witness_b
    nrm = float(np.linalg.norm(u))
    if nrm < 1e-15:
        return None
    w = u / nrm
    b = -float(w @ (report.witness_a + report.witness_b)) / 2.0
    w.setflags(write=False)
    return Hyperplane(w, b)
