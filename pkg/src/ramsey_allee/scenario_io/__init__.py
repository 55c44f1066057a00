"""Scenario documents, CSV/SVG output, the command runners and the CLI."""

from .commands import (
    COMMANDS,
    bounds,
    figure_runs,
    reproduce_figures,
    run_trajectory,
    shoot,
    simulate,
    steady_state,
    steady_state_rows,
    sweep,
    sweep_rows,
)
from .config import ScenarioConfig, emit_config, load_config, parse_config
from .tables import TRAJECTORY_COLUMNS, read_csv, svg_plot, trajectory_csv

__all__ = [
    "COMMANDS",
    "ScenarioConfig",
    "TRAJECTORY_COLUMNS",
    "bounds",
    "emit_config",
    "figure_runs",
    "load_config",
    "parse_config",
    "read_csv",
    "reproduce_figures",
    "run_trajectory",
    "shoot",
    "simulate",
    "steady_state",
    "steady_state_rows",
    "svg_plot",
    "sweep",
    "sweep_rows",
    "trajectory_csv",
]
