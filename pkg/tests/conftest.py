import numpy as np
import pytest

from quadsweep import Dataset


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


def random_dataset(rng, n: int) -> Dataset:
    return Dataset(rng.random(n), rng.random(n))


def qp_hull_distance_sq(va: np.ndarray, vb: np.ndarray) -> float:
    """Independent hull-distance reference via an interior-point QP."""
    from cvxopt import matrix, solvers

    solvers.options["show_progress"] = False
    na, nb = len(va), len(vb)
    V = np.vstack([va, -vb])
    P = matrix(2.0 * (V @ V.T) + 1e-12 * np.eye(na + nb))
    q = matrix(np.zeros(na + nb))
    G = matrix(-np.eye(na + nb))
    h = matrix(np.zeros(na + nb))
    A = np.zeros((2, na + nb))
    A[0, :na] = 1.0
    A[1, na:] = 1.0
    sol = solvers.qp(P, q, G, h, matrix(A), matrix(np.ones(2)))
    lam = np.array(sol["x"]).ravel()
    p = lam[:na] @ va - lam[na:] @ vb
    return float(p @ p)
