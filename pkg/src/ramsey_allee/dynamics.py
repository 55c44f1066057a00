"""Ramsey-Allee dynamics: the (k, c, L) system, its ratio form, comparison
bounds, saddle-path shooting, welfare and the transversality residual.

The full system is::

    k' = f(k) - (delta + n(L)) k - c
    c' = sigma c (f'(k) - rho - delta - n(L))
    L' = n(L) L,       n(L) = r (1 - L/M) (L/N - 1)

Internally labour is carried as ``ln L``: a population below the Allee
threshold decays like exp(-r t), and in log form it stays positive and
relatively accurate no matter how small it gets.
"""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .economy import EconomyState, RamseyParams
from .errors import (
    DomainError,
    InstabilityError,
    NoRootError,
    NoSaddlePathError,
    NoSolutionError,
)
from .ode import SUCCESS, dopri54
from .population import classify_regime, integrate_population
from .production import (
    Kind,
    intensive_output,
    marginal_product,
    second_derivative,
)
from .steadystate import case2_steady_state, solow_equilibrium

DEFAULT_T_END = 2000.0
DEFAULT_RTOL = 1e-8
DEFAULT_ATOL = 1e-10
FIRST_STEP = 1e-3

K_OVERFLOW = 1e12
K_FLOOR = 1e-12
C_FLOOR = 1e-14

COMPLETED = "completed"
BLOW_UP = "blow_up"
K_FLOOR_HIT = "k_floor"
C_FLOOR_HIT = "c_floor"

SHOOT_MAX_ITER = 80
# re-anchor once perturbations may have grown by exp(DRIFT_BUDGET)
DRIFT_BUDGET = 12.0

__all__ = [
    "RamseyParams",
    "EconomyState",
    "Trajectory",
    "RatioPath",
    "rhs_full",
    "integrate_full",
    "initial_state",
    "capital_bounds",
    "consumption_lower_rate",
    "consumption_bounds",
    "with_bounds",
    "sandwich_violations",
    "capital_from_ratio",
    "integrate_ratio",
    "shoot_initial_consumption",
    "saddle_path",
    "utility",
    "welfare",
    "transversality_residual",
]


def _rate_log(r, log_N, log_M, ell):
    # n at L = exp(ell); exactly zero at L = N and L = M
    return -r * math.expm1(ell - log_M) * math.expm1(ell - log_N)


def _rate_log_array(r, log_N, log_M, ell):
    return -r * np.expm1(ell - log_M) * np.expm1(ell - log_N)


def rhs_full(spec, rp, ap, state):
    """Time derivatives ``(dk, dc, dL)`` at an :class:`EconomyState`."""
    k, c, L = state.k, state.c, state.L
    if not k > 0:
        raise DomainError(f"rhs_full requires k > 0, got {k!r}")
    n = ap.r * (1.0 - L / ap.M) * (L / ap.N - 1.0)
    dk = intensive_output(spec, k) - (rp.delta + n) * k - c
    dc = rp.sigma * c * (marginal_product(spec, k) - rp.rho - rp.delta - n)
    return dk, dc, n * L


def _log_rhs(spec, rp, ap):
    delta, rho, sigma = rp.delta, rp.rho, rp.sigma
    r, log_N, log_M = ap.r, math.log(ap.N), math.log(ap.M)

    def rhs(t, y):
        k, c, ell = y
        # f and f' are frozen below the floor so trial stages may cross k = 0;
        # the guard then ends the run at the first accepted step under the floor
        kk = k if k > K_FLOOR else K_FLOOR
        n = _rate_log(r, log_N, log_M, ell)
        return (intensive_output(spec, kk) - (delta + n) * k - c,
                sigma * c * (marginal_product(spec, kk) - rho - delta - n),
                n)

    return rhs


@dataclass
class Trajectory:
    """Accepted integration steps of the full system plus derived series.

    Bound arrays are ``None`` until :func:`with_bounds` fills them.
    ``termination`` is ``"completed"`` or the tag of the guard/failure that
    stopped the integration.
    """

    spec: object
    rp: RamseyParams
    ap: object
    t: np.ndarray
    k: np.ndarray
    c: np.ndarray
    log_L: np.ndarray
    termination: str = COMPLETED
    message: str = ""
    k_lower: np.ndarray | None = None
    k_upper: np.ndarray | None = None
    c_lower: np.ndarray | None = None
    c_upper: np.ndarray | None = None
    joints: list = field(default_factory=list)

    @property
    def L(self):
        return np.exp(self.log_L)

    @property
    def n(self):
        return _rate_log_array(self.ap.r, math.log(self.ap.N), math.log(self.ap.M), self.log_L)

    @property
    def output(self):
        return intensive_output(self.spec, np.maximum(self.k, 0.0))

    @property
    def x(self):
        """Consumption-to-capital ratio c/k (inf where a run ended at k = 0)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.c / self.k

    @property
    def z(self):
        """Capital-to-output ratio k/f(k)."""
        return self.k / self.output

    @property
    def savings_rate(self):
        """s = 1 - c/f(k), from S = sY = Y - C."""
        return 1.0 - self.c / self.output

    @property
    def completed(self):
        return self.termination == COMPLETED

    @property
    def samples(self):
        return [EconomyState(float(t), float(k), float(c), float(L))
                for t, k, c, L in zip(self.t, self.k, self.c, self.L)]

    @property
    def final(self):
        return EconomyState(float(self.t[-1]), float(self.k[-1]), float(self.c[-1]),
                            float(math.exp(self.log_L[-1])))

    def __len__(self):
        return len(self.t)


def _make_guard(check_c):
    def guard(t, y):
        k, c = y[0], y[1]
        if k > K_OVERFLOW:
            return BLOW_UP
        if k < K_FLOOR:
            return K_FLOOR_HIT
        if check_c and c < C_FLOOR:
            return C_FLOOR_HIT
        return None

    return guard


def _integrate_log(spec, rp, ap, t0, k0, c0, log_L0, t_end, rtol, atol, max_step=math.inf,
                   dense=True):
    return dopri54(_log_rhs(spec, rp, ap), t0, [k0, c0, log_L0], t_end, rtol=rtol, atol=atol,
                   first_step=FIRST_STEP, max_step=max_step, guard=_make_guard(c0 > 0),
                   dense=dense)


def integrate_full(spec, rp, ap, initial, t_end=DEFAULT_T_END, rtol=DEFAULT_RTOL,
                   atol=DEFAULT_ATOL, max_step=math.inf):
    """Integrate the three-equation system from ``initial`` up to time ``t_end``.

    Integration stops early when k exceeds 1e12 (``"blow_up"``), k drops
    below 1e-12 (``"k_floor"``) or, for c0 > 0, c drops below 1e-14
    (``"c_floor"``). Integrator failures are reported the same way; the
    samples up to that point are always returned.
    """
    if not (initial.k > 0 and initial.c >= 0 and initial.L > 0):
        raise DomainError(f"need k0 > 0, c0 >= 0, L0 > 0; got {initial}")
    sol = _integrate_log(spec, rp, ap, initial.t, initial.k, initial.c, math.log(initial.L),
                         t_end, rtol, atol, max_step)
    return _trajectory(spec, rp, ap, sol)


def _trajectory(spec, rp, ap, sol):
    status = COMPLETED if sol.status == SUCCESS else sol.status
    # the step that tripped the k floor may overshoot slightly below zero
    k = np.maximum(sol.y[:, 0], 0.0)
    return Trajectory(spec, rp, ap, sol.t, k, sol.y[:, 1], sol.y[:, 2],
                      termination=status, message=sol.message)


def initial_state(ap, k0, c0):
    return EconomyState(0.0, k0, c0, ap.L0)


# -- comparison bounds -------------------------------------------------------

def _growth_integral(ap, t_grid):
    if t_grid[-1] <= 0:
        return np.zeros_like(t_grid)
    path = integrate_population(ap, t_end=float(t_grid[-1]))
    return path.cumulative_growth(t_grid)


def _solow_upper(spec, rp, ap, k0, t_grid, rtol, atol):
    delta = rp.delta
    r, log_N, log_M = ap.r, math.log(ap.N), math.log(ap.M)

    def rhs(t, y):
        k, ell = y
        if not k > 0:
            raise DomainError("k <= 0")
        n = _rate_log(r, log_N, log_M, ell)
        return intensive_output(spec, k) - (delta + n) * k, n

    t_end = float(t_grid[-1])
    sol = dopri54(rhs, 0.0, [k0, math.log(ap.L0)], t_end, rtol=rtol, atol=atol,
                  first_step=FIRST_STEP, guard=lambda t, y: BLOW_UP if y[0] > K_OVERFLOW else None)
    out = np.full(t_grid.shape, np.nan)
    inside = t_grid <= sol.t[-1]
    if t_end <= 0:
        out[inside] = k0
    else:
        out[inside] = sol(t_grid[inside])[:, 0]
    return out


def capital_bounds(spec, rp, ap, k0, t_grid, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Comparison bounds ``(k_lower, k_upper)`` on ``t_grid`` (times since start).

    ``k_lower`` solves k' = -(delta + n) k in closed form, with the integral
    of n done by trapezoid quadrature; ``k_upper`` integrates the Solow
    equation k' = f(k) - (delta + n) k. Both start at ``k0``.
    """
    if not k0 > 0:
        raise DomainError(f"k0 must be > 0, got {k0!r}")
    t_grid = np.asarray(t_grid, dtype=float)
    cum_n = _growth_integral(ap, t_grid)
    k_lower = k0 * np.exp(-rp.delta * t_grid - cum_n)
    k_upper = _solow_upper(spec, rp, ap, k0, t_grid, rtol, atol)
    return k_lower, k_upper


def consumption_lower_rate(spec, rp, ap, k0):
    """The constant B used in the lower consumption bound.

    B = f'(k*) when k0 < k* (k* the Solow equilibrium for n_inf), else f'(k0).
    """
    n_inf = classify_regime(ap).n_infinity
    k_star = solow_equilibrium(spec, rp.delta, n_inf)
    return marginal_product(spec, k_star if k0 < k_star else k0)


def consumption_bounds(spec, rp, ap, trajectory, k_upper=None):
    """``(c_lower, c_upper)`` along ``trajectory``.

    ``c_upper = f(k_upper)``; ``c_lower = c0 exp(sigma (B - delta - rho) t) (L0/L)^sigma``
    where the labour ratio is evaluated as exp(-sigma * integral of n).
    """
    t = trajectory.t - trajectory.t[0]
    k0, c0 = float(trajectory.k[0]), float(trajectory.c[0])
    if k_upper is None:
        _, k_upper = capital_bounds(spec, rp, ap, k0, t)
    c_upper = intensive_output(spec, np.where(np.isnan(k_upper), 0.0, k_upper))
    c_upper[np.isnan(k_upper)] = np.nan
    if c0 == 0.0:
        return np.zeros_like(t), c_upper
    B = consumption_lower_rate(spec, rp, ap, k0)
    cum_n = _growth_integral(ap, t)
    sigma = rp.sigma
    c_lower = c0 * np.exp(sigma * (B - rp.delta - rp.rho) * t - sigma * cum_n)
    return c_lower, c_upper


def with_bounds(trajectory, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Copy of ``trajectory`` with all four bound series attached.

    The consumption lower bound needs a Solow equilibrium; when delta <= r it
    does not exist and that column is NaN.
    """
    spec, rp, ap = trajectory.spec, trajectory.rp, trajectory.ap
    ap0 = replace(ap, L0=float(math.exp(trajectory.log_L[0])))
    t = trajectory.t - trajectory.t[0]
    k_lower, k_upper = capital_bounds(spec, rp, ap0, float(trajectory.k[0]), t, rtol, atol)
    try:
        c_lower, c_upper = consumption_bounds(spec, rp, ap0, trajectory, k_upper)
    except (InstabilityError, NoRootError):
        c_upper = intensive_output(spec, np.nan_to_num(k_upper))
        c_lower = np.full_like(t, np.nan)
    return replace(trajectory, k_lower=k_lower, k_upper=k_upper, c_lower=c_lower, c_upper=c_upper)


def sandwich_violations(trajectory, rel=1e-6):
    """Number of samples with k outside [k_lower, k_upper] beyond rel * (1 + k_upper)."""
    if trajectory.k_lower is None:
        trajectory = with_bounds(trajectory)
    eps = rel * (1.0 + trajectory.k_upper)
    bad = (trajectory.k < trajectory.k_lower - eps) | (trajectory.k > trajectory.k_upper + eps)
    return int(np.count_nonzero(bad))


# -- ratio system -------------------------------------------------------------

def _ratio_range(spec):
    """Open range of z = k/f(k) over k > 0."""
    kind = spec.kind
    if kind in (Kind.LOG, Kind.CARA):
        return 1.0, math.inf
    if kind is Kind.COBB_DOUGLAS:
        return 0.0, math.inf
    limit = spec.alpha ** (-1.0 / spec.tau)
    return (0.0, limit) if spec.tau > 0 else (limit, math.inf)


def capital_from_ratio(spec, z, guess=None):
    """Invert z = k/f(k) (increasing in k) by a bracketed root search in ln k."""
    lo, hi = _ratio_range(spec)
    if not lo < z < hi:
        raise DomainError(f"z={z!r} outside the range ({lo}, {hi}) of k/f(k)")
    log_z = math.log(z)

    def gap(u):
        k = math.exp(u)
        return u - math.log(intensive_output(spec, k)) - log_z

    u0 = math.log(guess) if guess else 0.0
    a, b, width = u0 - 0.5, u0 + 0.5, 0.5
    ga, gb = gap(a), gap(b)
    while ga > 0:
        width *= 2.0
        a = u0 - width
        if a < -700:
            raise DomainError(f"cannot bracket k for z={z!r}")
        ga = gap(a)
    width = 0.5
    while gb < 0:
        width *= 2.0
        b = u0 + width
        if b > 700:
            raise DomainError(f"cannot bracket k for z={z!r}")
        gb = gap(b)
    return math.exp(brentq(gap, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps))


@dataclass
class RatioPath:
    t: np.ndarray
    z: np.ndarray
    x: np.ndarray
    log_L: np.ndarray
    termination: str = COMPLETED

    @property
    def L(self):
        return np.exp(self.log_L)


def integrate_ratio(spec, rp, ap, z0, x0, L0=None, t_end=DEFAULT_T_END, rtol=DEFAULT_RTOL,
                    atol=DEFAULT_ATOL):
    """Integrate the (z, x) system for z = k/f(k), x = c/k.

    ``z'/z = (1 - f'(k) z)(1/z - (delta + n) - x)`` and
    ``x'/x = sigma f'(k) - 1/z + (1 - sigma)(delta + n) - sigma rho + x``,
    with k recovered from z at every stage.
    """
    if not (z0 > 0 and x0 > 0):
        raise DomainError("need z0 > 0 and x0 > 0")
    L0 = ap.L0 if L0 is None else L0
    capital_from_ratio(spec, z0)
    delta, rho, sigma = rp.delta, rp.rho, rp.sigma
    r, log_N, log_M = ap.r, math.log(ap.N), math.log(ap.M)
    last_k = [None]

    def rhs(t, y):
        z, x, ell = y
        k = capital_from_ratio(spec, z, last_k[0])
        last_k[0] = k
        fp = marginal_product(spec, k)
        n = _rate_log(r, log_N, log_M, ell)
        dz = z * (1.0 - fp * z) * (1.0 / z - (delta + n) - x)
        dx = x * ((sigma * fp - 1.0 / z) + (1.0 - sigma) * (delta + n) - sigma * rho + x)
        return dz, dx, n

    sol = dopri54(rhs, 0.0, [z0, x0, math.log(L0)], t_end, rtol=rtol, atol=atol,
                  first_step=FIRST_STEP)
    status = COMPLETED if sol.status == SUCCESS else sol.status
    return RatioPath(sol.t, sol.y[:, 0], sol.y[:, 1], sol.y[:, 2], status)


# -- saddle path ----------------------------------------------------------------

TOO_LOW, TOO_HIGH = -1, 1


class _Shooter:
    """Classifies initial consumption as above or below the saddle path.

    A trajectory that runs k into the floor consumed too much; one whose c
    hits its floor or whose k explodes consumed too little. Otherwise the
    sign of the unstable-mode coordinate ``(c - c_inf) - lambda_u (k - k_inf)``
    at the horizon decides (the stable mode has zero projection on it).
    """

    def __init__(self, spec, rp, ap, horizon, rtol, atol):
        n_inf = classify_regime(ap).n_infinity
        if not rp.delta + n_inf > 0:
            raise NoSaddlePathError(
                f"no saddle path: delta + n_inf = {rp.delta + n_inf!r} <= 0 (need delta > r)")
        try:
            ss = case2_steady_state(spec, rp, n_inf)
        except NoSolutionError as exc:
            raise NoSaddlePathError(f"no case-II steady state: {exc}") from None
        if not ss.k_inf > 0:
            raise NoSaddlePathError("degenerate case-II steady state at k = 0")
        self.spec, self.rp, self.ap = spec, rp, ap
        self.steady = ss
        self.horizon = horizon
        self.rtol, self.atol = rtol, atol
        det = rp.sigma * ss.c_inf * second_derivative(spec, ss.k_inf)
        self.lambda_u = 0.5 * (rp.rho + math.sqrt(rp.rho ** 2 - 4.0 * det))

    def classify(self, t0, k0, c0, log_L0):
        if c0 <= 0.0:
            return TOO_LOW
        sol = _integrate_log(self.spec, self.rp, self.ap, t0, k0, c0, log_L0,
                             t0 + self.horizon, self.rtol, self.atol, dense=False)
        if sol.status == K_FLOOR_HIT:
            return TOO_HIGH
        if sol.status in (C_FLOOR_HIT, BLOW_UP):
            return TOO_LOW
        k, c = sol.y[-1, 0], sol.y[-1, 1]
        if sol.status != SUCCESS:
            return TOO_HIGH if k < self.steady.k_inf else TOO_LOW
        u = (c - self.steady.c_inf) - self.lambda_u * (k - self.steady.k_inf)
        return TOO_HIGH if u > 0 else TOO_LOW

    def solve(self, t0, k0, log_L0, guess=None):
        c_max = intensive_output(self.spec, k0)
        lo, hi = 0.0, c_max
        if guess is not None and 0 < guess < c_max:
            lo, hi = self._warm_bracket(t0, k0, log_L0, guess, c_max)
        elif self.classify(t0, k0, hi, log_L0) != TOO_HIGH:
            raise NoSaddlePathError("consuming all output does not exhaust capital")
        for _ in range(SHOOT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if self.classify(t0, k0, mid, log_L0) == TOO_HIGH:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    def _warm_bracket(self, t0, k0, log_L0, guess, c_max):
        width = 1e-9
        while True:
            lo = max(guess * (1.0 - width), 0.0)
            hi = min(guess * (1.0 + width), c_max)
            if (self.classify(t0, k0, lo, log_L0) == TOO_LOW
                    and self.classify(t0, k0, hi, log_L0) == TOO_HIGH):
                return lo, hi
            if lo == 0.0 and hi == c_max:
                raise NoSaddlePathError("lost the saddle path while re-anchoring")
            width *= 100.0


def _default_horizon(rp):
    return 20.0 / rp.rho


def shoot_initial_consumption(spec, rp, ap, k0, t_horizon=None, rtol=1e-9, atol=1e-12):
    """Initial consumption on the saddle path, by bisection over (0, f(k0)).

    Each candidate is integrated over ``t_horizon`` (default 20/rho) and
    classified as too high or too low; the bracket is halved up to 80
    times. Raises :class:`NoSaddlePathError` when no case-II steady state
    exists (e.g. delta <= r below the threshold).
    """
    if not k0 > 0:
        raise DomainError(f"k0 must be > 0, got {k0!r}")
    horizon = _default_horizon(rp) if t_horizon is None else t_horizon
    shooter = _Shooter(spec, rp, ap, horizon, rtol, atol)
    return shooter.solve(0.0, k0, math.log(ap.L0))


def _local_expansion(spec, rp, ap, y):
    """Largest real part of the (k, c) Jacobian eigenvalues at each row of ``y``."""
    k, c, ell = np.maximum(y[:, 0], K_FLOOR), y[:, 1], y[:, 2]
    n = _rate_log_array(ap.r, math.log(ap.N), math.log(ap.M), ell)
    fp = marginal_product(spec, k)
    a = fp - rp.delta - n
    d = rp.sigma * (fp - rp.rho - rp.delta - n)
    det = a * d + rp.sigma * c * second_derivative(spec, k)
    tr = a + d
    disc = tr * tr - 4.0 * det
    return np.where(disc > 0, 0.5 * (tr + np.sqrt(np.abs(disc))), 0.5 * tr)


def _drift_cut(spec, rp, ap, sol, t_min):
    """First time after ``t_min`` at which the integrated expansion rate hits the budget."""
    lam = np.maximum(_local_expansion(spec, rp, ap, sol.y), 0.0)
    growth = np.concatenate([[0.0], np.cumsum(0.5 * np.diff(sol.t) * (lam[1:] + lam[:-1]))])
    over = np.nonzero(growth >= DRIFT_BUDGET)[0]
    if over.size == 0:
        return None
    return max(float(sol.t[over[0]]), t_min)


def saddle_path(spec, rp, ap, k0, t_end=DEFAULT_T_END, t_horizon=None, rtol=1e-9, atol=1e-12):
    """Saddle-path trajectory on ``[0, t_end]`` by re-anchored shooting.

    A single forward shot drifts off the saddle once perturbations of the
    order of the bisection resolution have been amplified to O(1), which
    happens early when f'(k) is large. The path is therefore built in
    pieces: each piece ends when the integrated local expansion rate reaches
    ``DRIFT_BUDGET`` (and after at most half a horizon); consumption is then
    re-shot from the current (k, L), starting from a narrow bracket around
    the value the piece arrived with. Re-anchoring times and the size of the
    consumption correction are kept in ``Trajectory.joints``.
    """
    horizon = _default_horizon(rp) if t_horizon is None else t_horizon
    keep = 0.5 * horizon
    shooter = _Shooter(spec, rp, ap, horizon, rtol, atol)

    t, k, log_L = 0.0, float(k0), math.log(ap.L0)
    c = shooter.solve(t, k, log_L)
    pieces, joints = [], []
    while True:
        t_stop = min(t + keep, t_end)
        sol = _integrate_log(spec, rp, ap, t, k, c, log_L, t_stop, rtol, atol)
        cut = _drift_cut(spec, rp, ap, sol, t + 1e-3 * keep)
        if cut is not None and cut < sol.t[-1]:
            t_stop = cut
            sol = _integrate_log(spec, rp, ap, t, k, c, log_L, t_stop, rtol, atol)
        pieces.append(sol)
        if sol.status != SUCCESS or t_stop >= t_end:
            break
        t, k, c_end, log_L = sol.t[-1], sol.y[-1, 0], sol.y[-1, 1], sol.y[-1, 2]
        c = shooter.solve(t, k, log_L, guess=c_end)
        joints.append((float(t), float(c_end), float(c)))

    ts = np.concatenate([pieces[0].t] + [p.t[1:] for p in pieces[1:]])
    ys = np.concatenate([pieces[0].y] + [p.y[1:] for p in pieces[1:]])
    last = pieces[-1]
    status = COMPLETED if last.status == SUCCESS else last.status
    return Trajectory(spec, rp, ap, ts, np.maximum(ys[:, 0], 0.0), ys[:, 1], ys[:, 2],
                      termination=status, message=last.message, joints=joints)


# -- welfare and transversality ------------------------------------------------------

def utility(c, sigma):
    """Isoelastic utility (c^(1 - 1/sigma) - 1) / (1 - 1/sigma); ln c at sigma = 1."""
    c = np.asarray(c, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        if sigma == 1.0:
            return np.log(c)
        p = 1.0 - 1.0 / sigma
        return np.expm1(p * np.log(c)) / p


def welfare(spec, rp, trajectory):
    """Discounted utility over the sampled horizon (trapezoid rule).

    Returns ``-inf`` (with a warning) when some c = 0 and sigma <= 1, where
    utility is unbounded below.
    """
    t, c = trajectory.t, trajectory.c
    if np.any(c <= 0) and rp.sigma <= 1.0:
        warnings.warn("c = 0 with sigma <= 1: utility is -inf, so is welfare", RuntimeWarning,
                      stacklevel=2)
        return -math.inf
    integrand = np.exp(-rp.rho * t) * utility(np.maximum(c, 0.0), rp.sigma)
    return float(np.trapezoid(integrand, t))


def transversality_residual(rp, trajectory):
    """exp(-rho t) c^(-1/sigma) k per sample (zero wherever k = 0)."""
    t, k, c = trajectory.t, trajectory.k, trajectory.c
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        log_res = -rp.rho * t - np.log(c) / rp.sigma + np.log(k)
        res = np.exp(log_res)
    return np.where(k == 0, 0.0, res)
