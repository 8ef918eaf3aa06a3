"""Sufficient statistics: incremental updates, scoring, validity rules."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadsweep import (Dataset, OBJECTIVES, add_point, compare, get_objective,
                       remove_point, score, stats_from_subset)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False,
                   allow_infinity=False)


def brute_score(obj_id, xs, ys):
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    k = len(xs)
    dx = float(np.sum((xs - xs.mean()) ** 2))
    dy = float(np.sum((ys - ys.mean()) ** 2))
    cxy = float(np.sum((xs - xs.mean()) * (ys - ys.mean())))
    if obj_id == "var":
        return dx
    if obj_id == "tv":
        return dx + dy
    if obj_id == "dv":
        return dx - dy
    if obj_id == "cov":
        return cxy
    if dx <= 0 or dy <= 0:
        return None
    r = cxy / math.sqrt(dx * dy)
    return r if obj_id == "r" else r * r


def test_dataset_validation():
    with pytest.raises(ValueError):
        Dataset(np.array([1.0, np.nan]), np.array([0.0, 0.0]))
    with pytest.raises(ValueError):
        Dataset(np.array([1.0]), np.array([0.0, 0.0]))
    with pytest.raises(ValueError):
        Dataset(np.array([]), np.array([]))


def test_dataset_arrays_read_only():
    d = Dataset(np.array([1.0, 2.0]), np.array([3.0, 4.0]))
    with pytest.raises(ValueError):
        d.xs[0] = 9.0


def test_subset_and_complement():
    d = Dataset(np.arange(6.0), np.arange(6.0) ** 2)
    idx = np.array([1, 3, 4])
    sub = d.subset(idx)
    assert np.array_equal(sub.xs, [1.0, 3.0, 4.0])
    assert np.array_equal(d.complement_indices(idx), [0, 2, 5])
    with pytest.raises(ValueError):
        d.subset(np.array([0, 0]))
    with pytest.raises(IndexError):
        d.subset(np.array([6]))


@pytest.mark.parametrize("obj_id", sorted(OBJECTIVES))
def test_score_matches_direct_computation(obj_id, rng):
    obj = get_objective(obj_id)
    for _ in range(50):
        n = int(rng.integers(obj.min_count, 12))
        xs = rng.normal(size=n)
        ys = rng.normal(size=n)
        s = stats_from_subset(Dataset(xs, ys), np.arange(n))
        got = score(obj, s)
        want = brute_score(obj_id, xs, ys)
        if want is None:
            assert got is None
        else:
            assert got == pytest.approx(want, abs=1e-9)


def test_min_count_enforced():
    d = Dataset(np.array([1.0, 2.0]), np.array([3.0, 4.0]))
    s = stats_from_subset(d, np.arange(2))
    assert score(get_objective("tv"), s) is not None
    with pytest.raises(ValueError):
        score(get_objective("r2"), s)


def test_zero_variance_is_invalid():
    d = Dataset(np.array([1.0, 1.0, 1.0]), np.array([0.0, 1.0, 2.0]))
    s = stats_from_subset(d, np.arange(3))
    assert score(get_objective("r"), s) is None
    assert score(get_objective("r2"), s) is None
    # variance-family objectives stay valid
    assert score(get_objective("tv"), s) == pytest.approx(2.0)


def test_compare_directions_and_invalid():
    r2 = get_objective("r2")
    var = get_objective("var")
    assert compare(r2, 0.9, 0.5) == 1
    assert compare(var, 0.9, 0.5) == -1  # minimized: smaller wins
    assert compare(r2, None, 0.1) == -1
    assert compare(r2, 0.1, None) == 1
    assert compare(r2, None, None) == 0
    assert compare(r2, 0.3, 0.3) == 0


@given(st.lists(st.tuples(finite, finite), min_size=3, max_size=25))
@settings(max_examples=200, deadline=None)
def test_welford_roundtrip(pts):
    # adding all points then removing the tail reproduces prefix statistics
    d = Dataset(np.array([p[0] for p in pts]), np.array([p[1] for p in pts]))
    n = d.n
    s = stats_from_subset(d, np.arange(n))
    full = s
    for i in range(n - 1, 1, -1):
        s = remove_point(s, float(d.xs[i]), float(d.ys[i]))
        ref = stats_from_subset(d, np.arange(i))
        assert s.count == ref.count
        for field in ("s_x", "s_y", "s_xx", "s_yy", "s_xy"):
            # error scales with the full-set sum the subtraction passed through
            scale = max(1.0, abs(getattr(full, field)))
            assert getattr(s, field) == pytest.approx(
                getattr(ref, field), abs=1e-12 * scale)


@given(st.lists(st.tuples(finite, finite), min_size=2, max_size=20),
       st.tuples(finite, finite))
@settings(max_examples=200, deadline=None)
def test_add_then_remove_is_identity(pts, extra):
    d = Dataset(np.array([p[0] for p in pts]), np.array([p[1] for p in pts]))
    s0 = stats_from_subset(d, np.arange(d.n))
    s1 = remove_point(add_point(s0, *extra), *extra)
    assert s1.count == s0.count
    for field in ("s_x", "s_y", "s_xx", "s_yy", "s_xy"):
        assert getattr(s1, field) == pytest.approx(
            getattr(s0, field), abs=1e-9 * max(1.0, abs(getattr(s0, field))))


def test_remove_below_zero_raises():
    d = Dataset(np.array([1.0]), np.array([2.0]))
    s = stats_from_subset(d, np.array([0]))
    s = remove_point(s, 1.0, 2.0)  # draining to empty is fine
    assert s.count == 0
    with pytest.raises(ValueError):
        remove_point(s, 1.0, 2.0)


def test_r_squared_equals_r2(rng):
    r_obj = get_objective("r")
    r2_obj = get_objective("r2")
    for _ in range(100):
        n = int(rng.integers(3, 15))
        d = Dataset(rng.random(n), rng.random(n))
        s = stats_from_subset(d, np.arange(n))
        r = score(r_obj, s)
        r2 = score(r2_obj, s)
        assert r2 == pytest.approx(r * r, rel=1e-9)


def test_r2_affine_invariance(rng):
    obj = get_objective("r2")
    for _ in range(50):
        n = int(rng.integers(3, 15))
        xs, ys = rng.normal(size=n), rng.normal(size=n)
        a, b, c, e = rng.uniform(-3, 3, size=4)
        if abs(a) < 1e-3 or abs(c) < 1e-3:
            continue
        base = score(obj, stats_from_subset(Dataset(xs, ys), np.arange(n)))
        moved = score(obj, stats_from_subset(
            Dataset(a * xs + b, c * ys + e), np.arange(n)))
        assert moved == pytest.approx(base, rel=1e-9)


def test_dv_on_uv_is_four_cov(rng):
    dv = get_objective("dv")
    cov = get_objective("cov")
    for _ in range(100):
        n = int(rng.integers(2, 20))
        xs, ys = rng.normal(size=n), rng.normal(size=n)
        c = score(cov, stats_from_subset(Dataset(xs, ys), np.arange(n)))
        d = score(dv, stats_from_subset(Dataset(xs + ys, xs - ys), np.arange(n)))
        assert d == pytest.approx(4.0 * c, rel=1e-9, abs=1e-12)
