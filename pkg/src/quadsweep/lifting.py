"""Projective lift maps that linearize quadratic decision boundaries.

l2 sends x to (x^2, x); l4 sends (x, y) to (x^2, y^2, x, y); l5 sends (x, y)
to (x^2, xy, y^2, x, y). Hyperplane coefficients downstream are reported in
these coordinate orders, so conic coefficients can be read off directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stats import Dataset

LIFT_DIMS = {"l2": 2, "l4": 4, "l5": 5}


@dataclass(frozen=True)
class LiftedPoint:
    coords: np.ndarray
    source_index: int = -1


def lift_dim(lift_id: str) -> int:
    try:
        return LIFT_DIMS[lift_id.lower()]
    except KeyError:
        raise ValueError(f"unknown lift {lift_id!r}; "
                         f"expected one of {sorted(LIFT_DIMS)}") from None


def lift(lift_id: str, x: float, y: float = 0.0,
         source_index: int = -1) -> LiftedPoint:
    """Lift a single point; l2 ignores y."""
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("lift inputs must be finite")
    lid = lift_id.lower()
    if lid == "l2":
        coords = np.array([x * x, x])
    elif lid == "l4":
        coords = np.array([x * x, y * y, x, y])
    elif lid == "l5":
        coords = np.array([x * x, x * y, y * y, x, y])
    else:
        raise ValueError(f"unknown lift {lift_id!r}")
    coords.setflags(write=False)
    return LiftedPoint(coords, source_index)


def lift_matrix(lift_id: str, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vectorized lift of paired coordinate arrays into an (n, d) matrix."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    lid = lift_id.lower()
    if lid == "l2":
        return np.column_stack([xs * xs, xs])
    if lid == "l4":
        return np.column_stack([xs * xs, ys * ys, xs, ys])
    if lid == "l5":
        return np.column_stack([xs * xs, xs * ys, ys * ys, xs, ys])
    raise ValueError(f"unknown lift {lift_id!r}")


def transform_coordinates(variables: str, xs: np.ndarray,
                          ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return the coordinate pair the lift should act on.

    "xy" is the identity; "uv" rotates into u=x+y, v=x-y so that products
    like xy become differences of squares.
    """
    var = variables.lower()
    if var == "xy":
        return xs, ys
    if var == "uv":
        return xs + ys, xs - ys
    raise ValueError(f"unknown coordinate variables {variables!r}")


def objective_lift_matrix(obj, xs: np.ndarray, ys: np.ndarray,
                          lift_id: str | None = None) -> np.ndarray:
    """Lift a dataset in the coordinates an objective's boundary requires."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    a, b = transform_coordinates(obj.lift_vars, xs, ys)
    return lift_matrix(lift_id or obj.lift_id, a, b)


def lift_dataset(lift_id: str, data: Dataset) -> list[LiftedPoint]:
    """Per-point lifts of the dataset, preserving source indices."""
    coords = lift_matrix(lift_id, data.xs, data.ys)
    out = []
    for i in range(data.n):
        c = coords[i].copy()
        c.setflags(write=False)
        out.append(LiftedPoint(c, i))
    return out


def coordinate_names(lift_id: str, variables: str = "xy") -> list[str]:
    """Monomial labels matching each lift's coordinate order."""
    var = variables.lower()
    if var == "xy":
        a, b = "x", "y"
    elif var == "uv":
        a, b = "u", "v"
    else:
        raise ValueError(f"unknown coordinate variables {variables!r}")
    lid = lift_id.lower()
    if lid == "l2":
        return [f"{a}2", a]
    if lid == "l4":
        return [f"{a}2", f"{b}2", a, b]
    if lid == "l5":
        return [f"{a}2", f"{a}{b}", f"{b}2", a, b]
    raise ValueError(f"unknown lift {lift_id!r}")
