"""What each CLI subcommand computes and writes.

Every function takes a validated :class:`ScenarioConfig` and an output
directory, writes its files there and returns a small summary. None of them
print; the CLI does that.
"""

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ..dynamics import (
    integrate_full,
    initial_state,
    saddle_path,
    sandwich_violations,
    shoot_initial_consumption,
    with_bounds,
)
from ..errors import RamseyAlleeError
from ..population import classify_regime
from ..steadystate import case2_steady_state, delta_c, delta_x
from .tables import footer_for, svg_plot, trajectory_csv, write_rows

# Figure 3 runs until the guard fires; blow-up at r = 0.085 takes ~2e3 time units
BLOWUP_R = 0.085
BLOWUP_T_END = 20000.0


@dataclass
class RunResult:
    """Files written by a command plus a short machine-readable summary."""

    files: list
    summary: dict


def _write(out_dir, name, text):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def _svg_name(cfg, csv_name):
    return cfg.svg or os.path.splitext(csv_name)[0] + ".svg"


def run_trajectory(cfg, bounds=True):
    """Trajectory for ``cfg``: the shot saddle path, or a forward run from the given c0."""
    spec, rp, ap = cfg.production, cfg.economy, cfg.population
    if cfg.shoot:
        traj = saddle_path(spec, rp, ap, cfg.k0, t_end=cfg.t_end, rtol=cfg.rtol, atol=cfg.atol)
    else:
        traj = integrate_full(spec, rp, ap, initial_state(ap, cfg.k0, cfg.c0), t_end=cfg.t_end,
                              rtol=cfg.rtol, atol=cfg.atol)
    return with_bounds(traj, cfg.rtol, cfg.atol) if bounds else traj


def _trajectory_files(cfg, out_dir, traj, svg, title):
    files = [_write(out_dir, cfg.csv, trajectory_csv(traj, cfg.stride,
                                                     header_only=cfg.t_end == 0))]
    if svg and cfg.t_end > 0:
        plot = svg_plot([("k", traj.t, traj.k), ("c", traj.t, traj.c)],
                        title=title, ylabel="per unit of labour")
        files.append(_write(out_dir, _svg_name(cfg, cfg.csv), plot))
    return files


def simulate(cfg, out_dir=".", svg=False):
    traj = run_trajectory(cfg)
    files = _trajectory_files(cfg, out_dir, traj, svg, "k(t) and c(t)")
    return RunResult(files, {"termination": traj.termination, "samples": len(traj),
                             "c0": float(traj.c[0])})


def bounds(cfg, out_dir=".", svg=False):
    traj = run_trajectory(cfg)
    files = [_write(out_dir, cfg.csv, trajectory_csv(traj, cfg.stride,
                                                     header_only=cfg.t_end == 0))]
    if svg and cfg.t_end > 0:
        plot = svg_plot([("k_lower", traj.t, traj.k_lower), ("k", traj.t, traj.k),
                         ("k_upper", traj.t, traj.k_upper)],
                        title="capital and its comparison bounds", ylabel="k")
        files.append(_write(out_dir, _svg_name(cfg, cfg.csv), plot))
    return RunResult(files, {"termination": traj.termination,
                             "sandwich_violations": sandwich_violations(traj)})


def shoot(cfg, out_dir=".", svg=False):
    spec, rp, ap = cfg.production, cfg.economy, cfg.population
    c0 = shoot_initial_consumption(spec, rp, ap, cfg.k0, rtol=cfg.rtol, atol=cfg.atol)
    traj = run_trajectory(replace(cfg, c0=None))
    files = _trajectory_files(cfg, out_dir, traj, svg, "saddle path")
    return RunResult(files, {"c0": c0, "termination": traj.termination})


def _nan_or(fn, *args):
    try:
        return fn(*args)
    except RamseyAlleeError:
        return math.nan


STEADY_COLUMNS = ("record", "case", "n_infinity", "k_inf", "c_inf", "x_inf", "z_inf", "value")


def steady_state_rows(cfg):
    """Case-II states for n_inf = -r and n_inf = 0, then the D_c and D_x rows.

    A state that does not exist is written as NaN with the error name in the
    ``case`` column; D rows carry their number in ``value``.
    """
    spec, rp, r = cfg.production, cfg.economy, cfg.population.r
    nan = math.nan
    rows = []
    for label, n_inf in (("declining", -r), ("saturating", 0.0)):
        try:
            s = case2_steady_state(spec, rp, n_inf)
            rows.append((label, s.case.value, s.n_infinity, s.k_inf, s.c_inf, s.x_inf, s.z_inf,
                         nan))
        except RamseyAlleeError as exc:
            rows.append((label, type(exc).__name__, n_inf, nan, nan, nan, nan, nan))
    for label, fn in (("D_c", delta_c), ("D_x", delta_x)):
        rows.append((label, "", nan, nan, nan, nan, nan, _nan_or(fn, spec, rp, r)))
    return rows


def steady_state(cfg, out_dir=".", svg=False):
    rows = steady_state_rows(cfg)
    files = [_write(out_dir, "steady_state.csv", write_rows(STEADY_COLUMNS, rows))]
    values = {row[0]: row[-1] for row in rows}
    return RunResult(files, {"D_c": values["D_c"], "D_x": values["D_x"], "rows": rows})


# -- sweep -------------------------------------------------------------------------

SWEEP_RESULT_COLUMNS = ("n_infinity", "k_inf", "c_inf", "x_inf", "D_c", "D_x", "D_c_positive",
                        "D_x_positive", "c0", "k_end", "c_end", "termination")


def sweep_points(cfg):
    """Grid of configs in deterministic order (last axis varies fastest)."""
    keys = [k for k, _ in cfg.sweep]
    points = []
    for combo in itertools.product(*(vals for _, vals in cfg.sweep)):
        points.append((combo, cfg.with_values(dict(zip(keys, combo)))))
    return keys, points


def sweep_point(cfg):
    """One summary row (without the grid columns) for a single scenario."""
    spec, rp, ap = cfg.production, cfg.economy, cfg.population
    n_inf = classify_regime(ap).n_infinity
    try:
        s = case2_steady_state(spec, rp, n_inf)
        k_inf, c_inf, x_inf = s.k_inf, s.c_inf, s.x_inf
    except RamseyAlleeError:
        k_inf = c_inf = x_inf = math.nan
    dc = _nan_or(delta_c, spec, rp, ap.r)
    dx = _nan_or(delta_x, spec, rp, ap.r)
    try:
        traj = run_trajectory(cfg, bounds=False)
        c0, k_end, c_end, term = float(traj.c[0]), float(traj.k[-1]), float(traj.c[-1]), \
            traj.termination
    except RamseyAlleeError as exc:
        c0 = k_end = c_end = math.nan
        term = type(exc).__name__
    return (n_inf, k_inf, c_inf, x_inf, dc, dx, bool(dc > 0), bool(dx > 0), c0, k_end, c_end,
            term)


def sweep_rows(cfg, jobs=1):
    """Summary rows for every grid point, in grid order regardless of ``jobs``."""
    keys, points = sweep_points(cfg)
    configs = [p for _, p in points]
    if jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(sweep_point, configs))
    else:
        results = [sweep_point(c) for c in configs]
    columns = tuple(keys) + SWEEP_RESULT_COLUMNS
    rows = [tuple(combo) + res for (combo, _), res in zip(points, results)]
    return columns, rows


def sweep(cfg, out_dir=".", svg=False, jobs=1):
    if not cfg.sweep:
        raise RamseyAlleeError("sweep needs at least one 'sweep.<key> = v1, v2, ...' line")
    columns, rows = sweep_rows(cfg, jobs)
    files = [_write(out_dir, "sweep.csv", write_rows(columns, rows))]
    return RunResult(files, {"points": len(rows)})


# -- figures -------------------------------------------------------------------------

def figure_populations(ap):
    """Initial labour below the threshold and between threshold and capacity."""
    return 0.5 * ap.N, 0.5 * (ap.N + ap.M)


def figure_runs(cfg):
    """The three scenarios behind figures 1-3.

    Figures 1-2 are saddle paths for L0 below and above the threshold.
    Figure 3 contrasts that below-threshold saddle path with a forward run
    from the same (k0, c0) under ``BLOWUP_R`` > delta, where capital explodes.
    """
    spec, rp, ap = cfg.production, cfg.economy, cfg.population
    below, above = figure_populations(ap)
    paths = {}
    for label, L0 in (("below", below), ("above", above)):
        paths[label] = saddle_path(spec, rp, replace(ap, L0=L0), cfg.k0, t_end=cfg.t_end,
                                   rtol=cfg.rtol, atol=cfg.atol)
    stable = paths["below"]
    ap_fast = replace(ap, L0=below, r=BLOWUP_R)
    exploding = integrate_full(spec, rp, ap_fast, initial_state(ap_fast, cfg.k0, float(stable.c[0])),
                               t_end=BLOWUP_T_END, rtol=cfg.rtol, atol=cfg.atol)
    return paths, {"stable": stable, "blow_up": exploding}


def reproduce_figures(cfg, out_dir=".", svg=False):
    paths, fig3 = figure_runs(cfg)
    files = []
    for fig, var in (("figure1", "k"), ("figure2", "c")):
        rows = []
        for label, tr in paths.items():
            rows += [(label, float(tr.L[0]), t, v) for t, v in zip(tr.t, getattr(tr, var))]
        footer = "; ".join(f"{label}: {footer_for(tr)}" for label, tr in paths.items()
                           if not tr.completed) or None
        files.append(_write(out_dir, f"{fig}.csv",
                            write_rows(("series", "L0", "t", var), rows, footer)))
        if svg:
            series = [(f"L0 = {tr.L[0]:.4g}", tr.t, getattr(tr, var)) for tr in paths.values()]
            files.append(_write(out_dir, f"{fig}.svg",
                                svg_plot(series, title=f"{var}(t) for different L0", ylabel=var)))
    rows = []
    for label, tr in fig3.items():
        rows += [(label, tr.ap.r, t, k, c) for t, k, c in zip(tr.t, tr.k, tr.c)]
    footer = "; ".join(f"{label}: {footer_for(tr)}" for label, tr in fig3.items()
                       if not tr.completed) or None
    files.append(_write(out_dir, "figure3.csv", write_rows(("series", "r", "t", "k", "c"), rows,
                                                           footer)))
    if svg:
        series = [(f"r = {tr.ap.r:g}", tr.t, np.log10(tr.k)) for tr in fig3.values()]
        files.append(_write(out_dir, "figure3.svg",
                            svg_plot(series, title="blow-up of capital", ylabel="log10 k")))
    summary = {
        "k_end": {label: float(tr.k[-1]) for label, tr in paths.items()},
        "c_end": {label: float(tr.c[-1]) for label, tr in paths.items()},
        "termination": {label: tr.termination for label, tr in {**paths, **fig3}.items()},
        "blow_up_time": float(fig3["blow_up"].t[-1]),
    }
    return RunResult(files, summary)


COMMANDS = {
    "simulate": simulate,
    "steady-state": steady_state,
    "bounds": bounds,
    "shoot": shoot,
    "sweep": sweep,
    "reproduce-figures": reproduce_figures,
}
