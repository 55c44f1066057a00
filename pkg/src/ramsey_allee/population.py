"""Allee-effect labour dynamics.

Labour follows the cubic law ``L' = r L (1 - L/M) (L/N - 1)``, so the per
capita growth rate is ``n = r (1 - L/M) (L/N - 1)``: negative below the
threshold N, positive between N and the carrying capacity M, negative above M.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, IntegrationError, ParameterError
from .ode import dopri54
from .roots import bisect

DEFAULT_T_END = 2000.0
DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
QUADRATURE_SPACING = 0.1


@dataclass(frozen=True)
class AlleeParams:
    r: float
    N: float
    M: float
    L0: float

    def __post_init__(self):
        if not self.r > 0:
            raise ParameterError(f"r must be > 0, got {self.r!r}")
        if not 0 < self.N < self.M:
            raise ParameterError(f"need 0 < N < M, got N={self.N!r}, M={self.M!r}")
        if not self.L0 > 0:
            raise ParameterError(f"L0 must be > 0, got {self.L0!r}")
        if not all(math.isfinite(v) for v in (self.r, self.N, self.M, self.L0)):
            raise ParameterError("population parameters must be finite")


class RegimeTag(str, Enum):
    BELOW_THRESHOLD = "BelowThreshold"
    MID_LOW = "MidLow"
    MID_HIGH = "MidHigh"
    ABOVE_CAPACITY = "AboveCapacity"
    FIXED = "Fixed"


@dataclass(frozen=True)
class Regime:
    """Qualitative behaviour of n(t) for a given L0.

    ``eta`` bounds |n(t)| for all t >= 0; ``n_infinity`` is the limit of n(t).
    """

    tag: RegimeTag
    n_infinity: float
    eta: float


def growth_rate(params, L):
    """Per capita growth rate n(L) = r (1 - L/M) (L/N - 1)."""
    if isinstance(L, np.ndarray):
        if np.any(L <= 0):
            raise DomainError("population must be > 0")
        return params.r * (1.0 - L / params.M) * (L / params.N - 1.0)
    if not L > 0:
        raise DomainError(f"population must be > 0, got {L!r}")
    return params.r * (1.0 - L / params.M) * (L / params.N - 1.0)


def labour_rhs(params, L):
    """dL/dt; defined (and zero) at L = 0 so trial stages may touch it."""
    return params.r * L * (1.0 - L / params.M) * (L / params.N - 1.0)


def classify_regime(params):
    N, M, L0, r = params.N, params.M, params.L0, params.r
    mid = 0.5 * (N + M)
    if L0 == N or L0 == M:
        return Regime(RegimeTag.FIXED, 0.0, 0.0)
    if L0 < N:
        return Regime(RegimeTag.BELOW_THRESHOLD, -r, r)
    if L0 > M:
        return Regime(RegimeTag.ABOVE_CAPACITY, 0.0, abs(growth_rate(params, L0)))
    # max of n over (N, M) sits at the midpoint for both middle cases
    eta = growth_rate(params, mid)
    tag = RegimeTag.MID_LOW if L0 <= mid else RegimeTag.MID_HIGH
    return Regime(tag, 0.0, eta)


def _regime_coordinates(params):
    """``(w0, rhs, to_labour)`` for the coordinate w used in integration.

    Each regime gets a w in which the fixed points it approaches sit at
    w = +-inf and w' never changes sign, so sampled L(t) is monotone by
    construction rather than up to the tolerance:

    * L < N:      w = ln(L / (N - L)),       w' = -r (1 - L/M)
    * N < L < M:  w = ln((L - N) / (M - L)), w' = r L (M - N) / (M N)
    * L > M:      w = ln(L - M),             w' = -r L (L - N) / (M N)
    """
    r, N, M, L0 = params.r, params.N, params.M, params.L0
    if L0 < N:
        def to_labour(w):
            with np.errstate(over="ignore"):
                return N / (1.0 + np.exp(-w))

        def rhs(t, y):
            L = N / (1.0 + math.exp(-y[0])) if y[0] > -700.0 else 0.0
            return (-r * (1.0 - L / M),)

        return math.log(L0 / (N - L0)), rhs, to_labour
    if L0 < M:
        def to_labour(w):
            e = np.exp(-np.abs(w))
            return np.where(w <= 0, (N + M * e) / (1.0 + e), (N * e + M) / (e + 1.0))

        def rhs(t, y):
            e = math.exp(-abs(y[0]))
            L = (N + M * e) / (1.0 + e) if y[0] <= 0 else (N * e + M) / (e + 1.0)
            return (r * L * (M - N) / (M * N),)

        return math.log((L0 - N) / (M - L0)), rhs, to_labour

    def to_labour(w):
        return M + np.exp(w)

    def rhs(t, y):
        L = M + math.exp(y[0])
        return (-r * L * (L - N) / (M * N),)

    return math.log(L0 - M), rhs, to_labour


class _FixedSolution:
    def __init__(self, L, t_end):
        self.L, self.t_end = L, t_end

    def __call__(self, t):
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(ts < 0) or np.any(ts > self.t_end):
            raise ValueError(f"t outside integrated range [0, {self.t_end}]")
        out = np.full(ts.shape, self.L)
        return out[0] if np.ndim(t) == 0 else out


@dataclass
class PopulationPath:
    """Integrated labour series with its dense interpolant."""

    params: AlleeParams
    t: np.ndarray
    L: np.ndarray
    n: np.ndarray
    solution: object  # t -> L

    def labour_at(self, t):
        return self.solution(t)

    def cumulative_growth(self, t_grid):
        """Trapezoid approximation of the integral of n from 0 to each t.

        Nodes are the integrator's own steps, ``t_grid`` and a uniform grid of
        spacing ``QUADRATURE_SPACING``, which keeps the trapezoid error well
        below the integrator tolerance at rates of order 0.1 or less.
        """
        t_grid = np.asarray(t_grid, dtype=float)
        fine = np.linspace(0.0, self.t[-1], int(math.ceil(self.t[-1] / QUADRATURE_SPACING)) + 1)
        nodes = np.union1d(np.union1d(self.t, t_grid), fine)
        nodes = nodes[nodes <= self.t[-1]]
        L = np.maximum(self.labour_at(nodes), np.finfo(float).tiny)
        n = growth_rate(self.params, L)
        cum = np.concatenate([[0.0], np.cumsum(0.5 * np.diff(nodes) * (n[1:] + n[:-1]))])
        return np.interp(t_grid, nodes, cum)


def integrate_population(params, t_end=DEFAULT_T_END, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Solve the labour ODE from ``L(0) = L0`` on ``[0, t_end]``.

    The adaptive Runge-Kutta solver runs on a regime-specific coordinate
    (see :func:`_regime_coordinates`); ``L`` and ``n`` are mapped back per
    step. Raises :class:`IntegrationError` (carrying the last valid time) if
    the step size underflows.
    """
    if not t_end >= 0 or not rtol > 0:
        raise ParameterError("need t_end >= 0 and rtol > 0")
    if params.L0 in (params.N, params.M):
        t = np.array([0.0, float(t_end)]) if t_end > 0 else np.array([0.0])
        L = np.full(t.shape, params.L0)
        return PopulationPath(params, t, L, np.zeros_like(t), _FixedSolution(params.L0, t_end))
    w0, rhs, to_labour = _regime_coordinates(params)
    sol = dopri54(rhs, 0.0, [w0], t_end, rtol=rtol, atol=atol)
    if not sol.success:
        raise IntegrationError(sol.message, sol.t_last, partial=sol)
    L = to_labour(sol.y[:, 0])
    L[0] = params.L0
    n = growth_rate(params, np.maximum(L, np.finfo(float).tiny))

    def solution(t):
        return to_labour(sol(t)[..., 0])

    return PopulationPath(params, sol.t, L, n, solution)


def crossing_time(params, level, t_end=DEFAULT_T_END, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """First time with L(t) = level, or ``None`` if not reached by ``t_end``.

    Sign changes of ``L - level`` are located on the accepted steps and then
    refined on the dense interpolant.
    """
    if not level > 0:
        raise DomainError(f"level must be > 0, got {level!r}")
    if params.L0 == level:
        return 0.0
    path = integrate_population(params, t_end, rtol, atol)
    gap = path.L - level
    hits = np.nonzero(np.sign(gap[1:]) != np.sign(gap[:-1]))[0]
    if hits.size == 0:
        return None
    i = int(hits[0])
    if gap[i + 1] == 0.0:
        return float(path.t[i + 1])
    return bisect(lambda t: float(path.labour_at(t)) - level, path.t[i], path.t[i + 1],
                  xtol=1e-12, rtol=1e-14)
