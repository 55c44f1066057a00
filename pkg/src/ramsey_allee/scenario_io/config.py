"""Scenario configuration documents.

A document is flat UTF-8 text with one ``key = value`` per line; sections are
key prefixes and ``#`` starts a comment::

    production.kind = CES
    production.alpha = 0.3
    production.tau = 0.01
    economy.rho = 0.02
    economy.delta = 0.075
    economy.sigma = 0.01
    population.r = 0.025
    population.N = 1
    population.M = 2
    population.L0 = 0.5
    initial.k0 = 1
    initial.c0 = shoot

Sweeps add grid axes as ``sweep.<key> = v1, v2, ...`` for any numeric key.
"""

import math
from dataclasses import dataclass, replace

from ..economy import RamseyParams
from ..errors import ConfigError, ParameterError
from ..population import AlleeParams
from ..production import Kind, ProductionSpec

SHOOT = "shoot"

# key -> default; REQUIRED marks keys that must be present
REQUIRED = object()
KEYS = {
    "production.kind": REQUIRED,
    "production.alpha": None,
    "production.tau": None,
    "economy.rho": REQUIRED,
    "economy.delta": REQUIRED,
    "economy.sigma": REQUIRED,
    "population.r": REQUIRED,
    "population.N": REQUIRED,
    "population.M": REQUIRED,
    "population.L0": REQUIRED,
    "initial.k0": REQUIRED,
    "initial.c0": SHOOT,
    "solver.t_end": 2000.0,
    "solver.rtol": 1e-8,
    "solver.atol": 1e-10,
    "output.csv": "trajectory.csv",
    "output.svg": None,
    "output.stride": 1,
}
TEXT_KEYS = {"production.kind", "output.csv", "output.svg"}
INT_KEYS = {"output.stride"}
SWEEPABLE = [k for k in KEYS if k not in TEXT_KEYS | INT_KEYS]


@dataclass(frozen=True)
class ScenarioConfig:
    production: ProductionSpec
    economy: RamseyParams
    population: AlleeParams
    k0: float
    c0: float | None  # None: shoot for the saddle path
    t_end: float = 2000.0
    rtol: float = 1e-8
    atol: float = 1e-10
    csv: str = "trajectory.csv"
    svg: str | None = None
    stride: int = 1
    sweep: tuple = ()  # ((key, (v1, v2, ...)), ...)

    @property
    def shoot(self):
        return self.c0 is None

    def get(self, key):
        """Value of a flat key, as it would be written in a document."""
        return _flatten(self)[key]

    def with_values(self, updates):
        """Copy with flat keys replaced (validated as if parsed)."""
        flat = _flatten(self)
        flat.update(updates)
        return _build(flat, {}, self.sweep)


def _flatten(cfg):
    p, e, a = cfg.production, cfg.economy, cfg.population
    return {
        "production.kind": p.kind.value,
        "production.alpha": p.alpha,
        "production.tau": p.tau,
        "economy.rho": e.rho,
        "economy.delta": e.delta,
        "economy.sigma": e.sigma,
        "population.r": a.r,
        "population.N": a.N,
        "population.M": a.M,
        "population.L0": a.L0,
        "initial.k0": cfg.k0,
        "initial.c0": SHOOT if cfg.c0 is None else cfg.c0,
        "solver.t_end": cfg.t_end,
        "solver.rtol": cfg.rtol,
        "solver.atol": cfg.atol,
        "output.csv": cfg.csv,
        "output.svg": cfg.svg,
        "output.stride": cfg.stride,
    }


def _number(key, raw, line):
    try:
        v = float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got {raw!r}", key, line) from None
    if not math.isfinite(v):
        raise ConfigError(f"expected a finite number, got {raw!r}", key, line)
    return v


def _convert(key, raw, line):
    if key in TEXT_KEYS:
        if not raw:
            raise ConfigError("empty value", key, line)
        return raw
    if key in INT_KEYS:
        try:
            v = int(raw)
        except ValueError:
            raise ConfigError(f"expected an integer, got {raw!r}", key, line) from None
        if v < 1:
            raise ConfigError(f"must be >= 1, got {v}", key, line)
        return v
    if key == "initial.c0" and raw == SHOOT:
        return SHOOT
    return _number(key, raw, line)


def _check(cond, message, key, lines):
    if not cond:
        raise ConfigError(message, key, lines.get(key))


def _build(flat, lines, sweep):
    kind_raw = flat["production.kind"]
    try:
        kind = Kind(kind_raw)
    except ValueError:
        options = ", ".join(k.value for k in Kind)
        raise ConfigError(f"unknown production kind {kind_raw!r} (one of {options})",
                          "production.kind", lines.get("production.kind")) from None

    alpha, tau = flat["production.alpha"], flat["production.tau"]
    uses_alpha = kind in (Kind.CES, Kind.COBB_DOUGLAS)
    _check(uses_alpha or alpha is None, f"not a parameter of {kind.value}", "production.alpha", lines)
    _check(kind is Kind.CES or tau is None, f"not a parameter of {kind.value}", "production.tau", lines)
    if uses_alpha:
        _check(alpha is not None, f"required for {kind.value}", "production.alpha", lines)
        _check(0 < alpha < 1, f"must lie in (0, 1), got {alpha!r}", "production.alpha", lines)
    if kind is Kind.CES:
        _check(tau is not None, "required for CES", "production.tau", lines)
        _check(tau < 1 and tau != 0, f"must lie in (-inf, 1) minus {{0}}, got {tau!r}",
               "production.tau", lines)

    for key in ("economy.rho", "economy.delta", "economy.sigma", "population.r",
                "population.N", "population.M", "population.L0", "initial.k0",
                "solver.rtol", "solver.atol"):
        _check(flat[key] > 0, f"must be > 0, got {flat[key]!r}", key, lines)
    if not flat["population.M"] > flat["population.N"]:
        raise ConfigError(
            f"need N < M, got N={flat['population.N']!r}, M={flat['population.M']!r}",
            "population", lines.get("population.M"))
    c0 = flat["initial.c0"]
    _check(c0 == SHOOT or c0 >= 0, f"must be >= 0 or 'shoot', got {c0!r}", "initial.c0", lines)
    _check(flat["solver.t_end"] >= 0, f"must be >= 0, got {flat['solver.t_end']!r}",
           "solver.t_end", lines)

    try:
        production = ProductionSpec(kind, alpha=alpha, tau=tau)
        economy = RamseyParams(flat["economy.rho"], flat["economy.delta"], flat["economy.sigma"])
        population = AlleeParams(flat["population.r"], flat["population.N"],
                                 flat["population.M"], flat["population.L0"])
    except ParameterError as exc:  # pragma: no cover - field checks above come first
        raise ConfigError(str(exc)) from None

    return ScenarioConfig(
        production=production,
        economy=economy,
        population=population,
        k0=flat["initial.k0"],
        c0=None if c0 == SHOOT else c0,
        t_end=flat["solver.t_end"],
        rtol=flat["solver.rtol"],
        atol=flat["solver.atol"],
        csv=flat["output.csv"],
        svg=flat["output.svg"],
        stride=flat["output.stride"],
        sweep=tuple(sweep),
    )


def parse_config(text):
    """Parse and validate a configuration document.

    Raises :class:`ConfigError` naming the offending key and line for
    unknown, duplicate or missing keys, malformed values and parameter
    invariant violations.
    """
    flat, lines, sweep = {}, {}, []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        body = raw_line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected 'key = value', got {body!r}", line=lineno)
        key, value = (part.strip() for part in body.split("=", 1))
        if key in lines or any(key == "sweep." + k for k, _ in sweep):
            raise ConfigError("duplicate key", key, lineno)
        if key.startswith("sweep."):
            target = key[len("sweep."):]
            if target not in SWEEPABLE:
                raise ConfigError("not a sweepable numeric key", key, lineno)
            values = [v.strip() for v in value.split(",")]
            if not values or any(not v for v in values):
                raise ConfigError("expected a comma separated list of numbers", key, lineno)
            sweep.append((target, tuple(_number(key, v, lineno) for v in values)))
            lines[key] = lineno
            continue
        if key not in KEYS:
            raise ConfigError("unknown key", key, lineno)
        flat[key] = _convert(key, value, lineno)
        lines[key] = lineno

    for key, default in KEYS.items():
        if key not in flat:
            if default is REQUIRED:
                raise ConfigError("missing required key", key)
            flat[key] = default

    cfg = _build(flat, lines, sweep)
    for key, values in sweep:
        for v in values:
            try:
                cfg.with_values({key: v})
            except ConfigError as exc:
                raise ConfigError(f"grid value {v!r} is invalid ({exc})", "sweep." + key,
                                  lines["sweep." + key]) from None
    return cfg


def _render(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_config(cfg):
    """Render ``cfg`` as a document that :func:`parse_config` maps back to ``cfg``."""
    out = []
    section = None
    for key, value in _flatten(cfg).items():
        if value is None:
            continue
        head = key.split(".", 1)[0]
        if head != section:
            if section is not None:
                out.append("")
            section = head
        out.append(f"{key} = {_render(value)}")
    if cfg.sweep:
        out.append("")
        for key, values in cfg.sweep:
            out.append(f"sweep.{key} = " + ", ".join(_render(v) for v in values))
    return "\n".join(out) + "\n"


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def override(cfg, t_end=None, rtol=None):
    """Apply command-line overrides of the solver settings."""
    if t_end is not None:
        if not t_end >= 0:
            raise ConfigError(f"must be >= 0, got {t_end!r}", "solver.t_end")
        cfg = replace(cfg, t_end=float(t_end))
    if rtol is not None:
        if not rtol > 0:
            raise ConfigError(f"must be > 0, got {rtol!r}", "solver.rtol")
        cfg = replace(cfg, rtol=float(rtol))
    return cfg
