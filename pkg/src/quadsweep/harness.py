"""Seeded experiment runner: separability, optimality, and timing studies.

Each trial's dataset is generated from a 128-bit seed drawn up front from a
primary stream, so results depend only on (primary_seed, trial_id) and never
on scheduling. Reports are plain dicts serialized to JSON plus a delimited
CSV summary.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .baselines import (AnnealConfig, RansacConfig, ransac_line,
                        simulated_annealing_select, theil_sen)
from .geometry import check_separability
from .oracle import brute_force_select, lts_brute_force
from .stats import Dataset, OBJECTIVES, score, stats_from_subset
from .sweep import naive_quadratic_sweep

SCORE_MATCH_TOL = 1e-9
SEPARABILITY_OBJECTIVES = ("r", "r2", "cov", "tv", "dv")
OPTIMALITY_METHODS = ("sweep", "anneal", "lts", "ransac", "theil_sen")


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    seed_128: int
    n: int
    k: int
    objective: str
    method: str
    success: Optional[bool]
    score_ratio: Optional[float]
    wall_time_ns: int
    distance_sq: Optional[float] = None


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str  # "separability" | "optimality" | "timing"
    n_values: tuple = ()
    trials: int = 100
    primary_seed: int = 123
    epsilon: float = 1e-10
    objectives: tuple = SEPARABILITY_OBJECTIVES
    methods: tuple = OPTIMALITY_METHODS
    budget: int = 10 ** 8

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.n_values:
            defaults = {
                "separability": (20,),
                "optimality": (15, 20, 25),
                "timing": (10, 14, 18, 22, 26, 30),
            }
            if self.experiment not in defaults:
                raise ValueError(f"unknown experiment {self.experiment!r}")
            object.__setattr__(self, "n_values", defaults[self.experiment])


def default_k(n: int) -> int:
    return math.ceil(n / 2)


def trial_seeds(primary_seed: int, count: int) -> list[int]:
    """128-bit per-trial seeds drawn from a primary generator."""
    rng = np.random.default_rng(primary_seed)
    words = rng.integers(0, 1 << 64, size=(count, 2), dtype=np.uint64)
    return [(int(hi) << 64) | int(lo) for hi, lo in words]


def generate_dataset(seed_128: int, n: int) -> Dataset:
    """n points i.i.d. uniform on [0,1]^2 from a deterministic generator."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed_128)
    return Dataset(rng.random(n), rng.random(n))


def _workers() -> int:
    env = os.environ.get("QUADSWEEP_THREADS", "")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _map_trials(fn, args):
    workers = _workers()
    if workers == 1:
        return [fn(a) for a in args]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args))


def _subseed(seed_128: int, tag: int):
    return [seed_128, tag]


def run_separability_experiment(cfg: ExperimentConfig) -> dict:
    """Per (objective, lift) cell: rate at which the ground-truth optimum is
    linearly separable from its complement after lifting."""
    n = cfg.n_values[0]
    k = default_k(n)
    seeds = trial_seeds(cfg.primary_seed, cfg.trials)
    cells = []
    all_records = []

    for obj_id in cfg.objectives:
        obj = OBJECTIVES[obj_id]
        gt_cache = {}

        def gt_split(t):
            if t not in gt_cache:
                data = generate_dataset(seeds[t], n)
                gt = brute_force_select(data, k, obj, budget=cfg.budget)
                gt_cache[t] = (data, gt.indices,
                               data.complement_indices(gt.indices))
            return gt_cache[t]

        for lift_id in ("l4", "l5"):
            def one(t, _lift=lift_id):
                data, inl, outl = gt_split(t)
                t0 = time.perf_counter_ns()
                rep = check_separability(data.subset(inl), data.subset(outl),
                                         _lift, epsilon=cfg.epsilon,
                                         variables=obj.lift_vars)
                dt = time.perf_counter_ns() - t0
                return TrialRecord(t, seeds[t], n, k, obj.id, f"lift:{_lift}",
                                   rep.separable, None, dt, rep.distance_sq)

            records = [one(t) for t in range(cfg.trials)]
            rate = sum(r.success for r in records) / cfg.trials
            cells.append({
                "objective": obj.id,
                "lift": lift_id,
                "trials": cfg.trials,
                "success_rate": rate,
                "min_distance_sq": min(r.distance_sq for r in records),
                "max_distance_sq": max(r.distance_sq for r in records),
            })
            all_records.extend(records)

    return _report(cfg, cells, all_records)


def _r2_of_subset(data: Dataset, indices) -> Optional[float]:
    s = stats_from_subset(data, indices)
    if s.count < 3:
        return None
    return score(OBJECTIVES["r2"], s)


def _line_r2(data: Dataset, slope: float, intercept: float) -> float:
    resid = data.ys - (slope * data.xs + intercept)
    ss_res = float(np.sum(resid * resid))
    ss_tot = float(np.sum((data.ys - np.mean(data.ys)) ** 2))
    if ss_tot <= 0:
        return 0.0
    return 1.0 - ss_res / ss_tot


def run_optimality_experiment(cfg: ExperimentConfig) -> dict:
    """Success rate and R^2 ratio of each method against the brute-force
    ground truth, per dataset size."""
    obj = OBJECTIVES["r2"]
    seeds = trial_seeds(cfg.primary_seed, cfg.trials)
    cells = []
    all_records = []

    for n in cfg.n_values:
        k = default_k(n)

        def one(t):
            data = generate_dataset(seeds[t], n)
            gt = brute_force_select(data, k, obj, budget=cfg.budget)
            out = []
            for method in cfg.methods:
                t0 = time.perf_counter_ns()
                success: Optional[bool] = None
                ratio: Optional[float] = None
                if method == "sweep":
                    res = naive_quadratic_sweep(data, k, obj)
                    success = abs(res.score - gt.score) <= SCORE_MATCH_TOL
                    ratio = res.score / gt.score if gt.score else None
                elif method == "anneal":
                    res = simulated_annealing_select(
                        data, k, obj, AnnealConfig(seed=_subseed(seeds[t], 1)))
                    success = abs(res.score - gt.score) <= SCORE_MATCH_TOL
                    ratio = res.score / gt.score if gt.score else None
                elif method == "lts":
                    res = lts_brute_force(data, k, budget=cfg.budget)
                    r2 = _r2_of_subset(data, res.indices)
                    success = (r2 is not None
                               and abs(r2 - gt.score) <= SCORE_MATCH_TOL)
                    ratio = (r2 / gt.score
                             if (r2 is not None and gt.score) else None)
                elif method == "ransac":
                    res = ransac_line(data, RansacConfig(
                        min_inliers=k, seed=_subseed(seeds[t], 2)))
                    if res is not None:
                        r2 = _r2_of_subset(data, res.inliers)
                        ratio = (r2 / gt.score
                                 if (r2 is not None and gt.score) else None)
                elif method == "theil_sen":
                    slope, intercept = theil_sen(data)
                    ratio = (_line_r2(data, slope, intercept) / gt.score
                             if gt.score else None)
                else:
                    raise ValueError(f"unknown method {method!r}")
                dt = time.perf_counter_ns() - t0
                out.append(TrialRecord(t, seeds[t], n, k, obj.id, method,
                                       success, ratio, dt))
            return out

        per_trial = _map_trials(one, range(cfg.trials))
        for method_i, method in enumerate(cfg.methods):
            records = [trial[method_i] for trial in per_trial]
            with_success = [r for r in records if r.success is not None]
            with_ratio = [r for r in records if r.score_ratio is not None]
            cells.append({
                "method": method,
                "n": n,
                "k": k,
                "trials": cfg.trials,
                "success_rate": (sum(r.success for r in with_success)
                                 / len(with_success) if with_success else None),
                "mean_score_ratio": (sum(r.score_ratio for r in with_ratio)
                                     / len(with_ratio) if with_ratio else None),
            })
            all_records.extend(records)

    return _report(cfg, cells, all_records)


def run_timing_experiment(cfg: ExperimentConfig) -> dict:
    """Wall time of the quadratic sweep per dataset size, oracle-checked for
    n <= 20. One warm-up trial per n is excluded from statistics."""
    obj = OBJECTIVES["r2"]
    seeds = trial_seeds(cfg.primary_seed, cfg.trials + 1)
    cells = []
    all_records = []

    for n in cfg.n_values:
        k = default_k(n)
        naive_quadratic_sweep(generate_dataset(seeds[cfg.trials], n), k, obj)

        records = []
        for t in range(cfg.trials):
            data = generate_dataset(seeds[t], n)
            t0 = time.perf_counter_ns()
            res = naive_quadratic_sweep(data, k, obj)
            dt = time.perf_counter_ns() - t0
            success = None
            if n <= 20:
                gt = brute_force_select(data, k, obj, budget=cfg.budget)
                success = abs(res.score - gt.score) <= SCORE_MATCH_TOL
            records.append(TrialRecord(t, seeds[t], n, k, obj.id, "sweep",
                                       success, None, dt))
        times_ms = np.array([r.wall_time_ns for r in records]) / 1e6
        checked = [r for r in records if r.success is not None]
        cells.append({
            "n": n,
            "k": k,
            "trials": cfg.trials,
            "mean_ms": float(np.mean(times_ms)),
            "median_ms": float(np.median(times_ms)),
            "oracle_checked": len(checked),
            "oracle_all_match": (all(r.success for r in checked)
                                 if checked else None),
        })
        all_records.extend(records)

    return _report(cfg, cells, all_records)


def run_experiment(cfg: ExperimentConfig) -> dict:
    runner = {
        "separability": run_separability_experiment,
        "optimality": run_optimality_experiment,
        "timing": run_timing_experiment,
    }[cfg.experiment]
    return runner(cfg)


def _report(cfg: ExperimentConfig, cells, records) -> dict:
    return {
        "experiment": cfg.experiment,
        "version": f"quadsweep-{__version__}",
        "config": asdict(cfg),
        "cells": cells,
        "trials": [asdict(r) for r in records],
    }


# --- report and point-file I/O ---

def write_report_json(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_report_csv(report: dict, path) -> None:
    cells = report["cells"]
    if not cells:
        raise ValueError("report has no cells")
    fields = list(cells[0].keys())
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(cells)


def write_points_csv(data: Dataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y"])
        for x, y in zip(data.xs, data.ys):
            writer.writerow([repr(float(x)), repr(float(y))])


def read_points_csv(path) -> Dataset:
    xs = []
    ys = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["x", "y"]:
            raise ValueError(f"{path}: expected header 'x,y'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected two columns")
            try:
                xs.append(float(row[0]))
                ys.append(float(row[1]))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed number") from None
    if not xs:
        raise ValueError(f"{path}: no data rows")
    return Dataset(np.asarray(xs), np.asarray(ys))
