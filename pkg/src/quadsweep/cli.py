"""Command-line interface: dataset generation, solving, and experiments."""

from __future__ import annotations

import json
import pathlib
import sys

import click
import numpy as np

from .geometry import check_separability, midpoint_hyperplane
from .harness import (ExperimentConfig, generate_dataset, read_points_csv,
                      run_experiment, write_points_csv, write_report_csv,
                      write_report_json)
from .lifting import coordinate_names
from .oracle import brute_force_select, lts_brute_force
from .stats import OBJECTIVES, get_objective
from .sweep import naive_quadratic_sweep


def _parse_seed(value: str) -> int:
    try:
        if value.lower().startswith("0x"):
            return int(value, 16)
        return int(value)
    except ValueError:
        raise click.BadParameter(f"seed {value!r} is not a decimal or 0x-hex integer")


def _load_points(path):
    try:
        return read_points_csv(path)
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc))


def _conic_for_result(data, indices, lift_id, epsilon, variables="xy"):
    """Separating conic coefficients for the winning subset, if any."""
    outl = data.complement_indices(indices)
    if outl.size == 0:
        return None, None
    rep = check_separability(data.subset(indices), data.subset(outl),
                             lift_id, epsilon=epsilon, variables=variables)
    if not rep.separable:
        return None, rep
    plane = midpoint_hyperplane(rep)
    if plane is None:
        return None, rep
    names = coordinate_names(lift_id, variables)
    conic = {name: float(c) for name, c in zip(names, plane.w)}
    conic["intercept"] = float(plane.b)
    return conic, rep


@click.group()
def main():
    """Exact k-subset selection via lifting and hyperplane sweeps."""


@main.command()
@click.option("--n", type=int, required=True, help="Number of points.")
@click.option("--seed", required=True, help="Seed (decimal or 0x-hex, up to 128 bits).")
@click.option("--out", type=click.Path(dir_okay=False), required=True,
              help="Output CSV path (header x,y).")
def gen(n, seed, out):
    """Generate a uniform [0,1]^2 dataset."""
    if n < 1:
        raise click.BadParameter("--n must be >= 1")
    data = generate_dataset(_parse_seed(seed), n)
    write_points_csv(data, out)
    click.echo(f"wrote {n} points to {out}")


@main.command(name="sweep")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Input CSV with header x,y.")
@click.option("--k", type=int, required=True, help="Subset size.")
@click.option("--objective", default="r2", show_default=True,
              type=click.Choice(sorted(OBJECTIVES), case_sensitive=False))
@click.option("--epsilon", type=float, default=1e-10, show_default=True,
              help="Separability tolerance for the reported conic.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON on stdout.")
def sweep_cmd(input_path, k, objective, epsilon, as_json):
    """Select the optimal k-subset with the quadratic sweep."""
    data = _load_points(input_path)
    obj = get_objective(objective)
    try:
        res = naive_quadratic_sweep(data, k, obj)
    except (ValueError, RuntimeError) as exc:
        raise click.ClickException(str(exc))
    conic, _rep = _conic_for_result(data, res.indices, obj.lift_id, epsilon,
                                    variables=obj.lift_vars)
    indices_1b = [int(i) + 1 for i in res.indices]
    if as_json:
        payload = {
            "objective": obj.id,
            "k": k,
            "indices": indices_1b,
            "score": res.score,
            "conic": conic,
            "tuples_examined": res.tuples_examined,
            "candidates_scored": res.candidates_scored,
        }
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        click.echo("indices: " + " ".join(map(str, indices_1b)))
        click.echo(f"score: {res.score!r}")
        if conic is None:
            click.echo("conic: none (subset not strictly separable)")
        else:
            terms = ", ".join(f"{k_}={v!r}" for k_, v in conic.items())
            click.echo(f"conic: {terms}")


@main.command(name="oracle")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              required=True)
@click.option("--k", type=int, required=True)
@click.option("--objective", default="r2", show_default=True,
              type=click.Choice(sorted(OBJECTIVES), case_sensitive=False))
@click.option("--lts", is_flag=True, help="Minimize least-squares residuals instead.")
@click.option("--budget", type=int, default=10 ** 8, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def oracle_cmd(input_path, k, objective, lts, budget, as_json):
    """Brute-force ground-truth subset selection."""
    data = _load_points(input_path)
    try:
        if lts:
            res = lts_brute_force(data, k, budget=budget)
            label = "lts"
        else:
            res = brute_force_select(data, k, get_objective(objective), budget=budget)
            label = objective.lower()
    except (ValueError, RuntimeError) as exc:
        raise click.ClickException(str(exc))
    indices_1b = [int(i) + 1 for i in res.indices]
    if as_json:
        click.echo(json.dumps({"objective": label, "k": k,
                               "indices": indices_1b, "score": res.score,
                               "subsets_visited": res.candidates_scored},
                              sort_keys=True))
    else:
        click.echo("indices: " + " ".join(map(str, indices_1b)))
        click.echo(f"score: {res.score!r}")


@main.command(name="separability")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              required=True)
@click.option("--k", type=int, required=True)
@click.option("--objective", default="r2", show_default=True,
              type=click.Choice(sorted(OBJECTIVES), case_sensitive=False))
@click.option("--lift", default=None,
              type=click.Choice(["l2", "l4", "l5"], case_sensitive=False),
              help="Lift map (defaults to the objective's own lift).")
@click.option("--epsilon", type=float, default=1e-10, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def separability_cmd(input_path, k, objective, lift, epsilon, as_json):
    """Check hull separability of the ground-truth optimum after lifting."""
    data = _load_points(input_path)
    obj = get_objective(objective)
    lift_id = (lift or obj.lift_id).lower()
    try:
        gt = brute_force_select(data, k, obj)
        outl = data.complement_indices(gt.indices)
        if outl.size == 0:
            raise click.ClickException("k equals n; nothing to separate")
        rep = check_separability(data.subset(gt.indices), data.subset(outl),
                                 lift_id, epsilon=epsilon,
                                 variables=obj.lift_vars)
    except (ValueError, RuntimeError) as exc:
        raise click.ClickException(str(exc))
    if as_json:
        click.echo(json.dumps({
            "objective": obj.id, "lift": lift_id, "k": k,
            "separable": rep.separable, "distance_sq": rep.distance_sq,
            "gap": rep.gap, "iterations": rep.iterations,
            "converged": rep.converged,
            "inliers": [int(i) + 1 for i in gt.indices],
        }, sort_keys=True))
    else:
        click.echo(f"separable: {rep.separable}")
        click.echo(f"distance_sq: {rep.distance_sq!r} (gap {rep.gap!r}, "
                   f"{rep.iterations} iterations)")


@main.command(name="experiment")
@click.option("--name", type=click.Choice(["separability", "optimality", "timing"]),
              required=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", default="123", show_default=True,
              help="Primary seed (decimal or 0x-hex).")
@click.option("--n", "n_values", type=int, multiple=True,
              help="Dataset sizes (repeatable); defaults per experiment.")
@click.option("--epsilon", type=float, default=1e-10, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True,
              help="JSON report path; a CSV summary and PNG figure are "
                   "written next to it.")
def experiment_cmd(name, trials, seed, n_values, epsilon, out):
    """Run a seeded, reproducible experiment and write its report."""
    cfg = ExperimentConfig(experiment=name, n_values=tuple(n_values),
                           trials=trials, primary_seed=_parse_seed(seed),
                           epsilon=epsilon)
    report = run_experiment(cfg)
    out_path = pathlib.Path(out)
    write_report_json(report, out_path)
    csv_path = out_path.with_suffix(".csv")
    png_path = out_path.with_suffix(".png")
    write_report_csv(report, csv_path)
    from .plotting import render_report_figure
    render_report_figure(report, png_path)
    for cell in report["cells"]:
        click.echo(json.dumps(cell, sort_keys=True))
    click.echo(f"report: {out_path} (+ {csv_path.name}, {png_path.name})")


if __name__ == "__main__":
    main()
