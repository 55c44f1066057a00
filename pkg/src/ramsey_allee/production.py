"""Intensive-form production functions f(k) and the quantities derived from them.

Four families are supported::

    CES          f(k) = (alpha k^tau + 1 - alpha)^(1/tau),   tau < 1, tau != 0
    CobbDouglas  f(k) = k^alpha
    Log          f(k) = ln(1 + k)
    CARA         f(k) = 1 - exp(-k)

Every function takes the :class:`ProductionSpec` first and is pure. Scalar
inputs give floats; numpy arrays are mapped elementwise.
"""

import functools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, NoRootError, NoSolutionError, ParameterError
from .roots import bisect, grow_bracket


class Kind(str, Enum):
    CES = "CES"
    COBB_DOUGLAS = "CobbDouglas"
    LOG = "Log"
    CARA = "CARA"


@dataclass(frozen=True)
class ProductionSpec:
    """Tagged choice of production family with its parameters.

    ``alpha`` is used by CES and CobbDouglas, ``tau`` only by CES.
    """

    kind: Kind
    alpha: float | None = None
    tau: float | None = None

    def __post_init__(self):
        try:
            kind = Kind(self.kind)
        except ValueError:
            raise ParameterError(f"unknown production kind {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)

        if kind in (Kind.CES, Kind.COBB_DOUGLAS):
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ParameterError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        elif self.alpha is not None:
            raise ParameterError(f"alpha is not a parameter of {kind.value}")

        if kind is Kind.CES:
            if self.tau is None or not self.tau < 1.0 or self.tau == 0.0:
                raise ParameterError(f"tau must lie in (-inf, 1) minus {{0}}, got {self.tau!r}")
            if not math.isfinite(self.tau):
                raise ParameterError("tau must be finite")
        elif self.tau is not None:
            raise ParameterError(f"tau is not a parameter of {kind.value}")

    @classmethod
    def ces(cls, alpha, tau):
        return cls(Kind.CES, alpha=alpha, tau=tau)

    @classmethod
    def cobb_douglas(cls, alpha):
        return cls(Kind.COBB_DOUGLAS, alpha=alpha)

    @classmethod
    def log(cls):
        return cls(Kind.LOG)

    @classmethod
    def cara(cls):
        return cls(Kind.CARA)


def _elementwise(func):
    """Map a scalar routine over numpy arrays (second positional argument)."""

    @functools.wraps(func)
    def wrapper(spec, x, *args, **kwargs):
        if isinstance(x, np.ndarray):
            out = [func(spec, float(v), *args, **kwargs) for v in x.ravel()]
            return np.asarray(out, dtype=float).reshape(x.shape)
        return func(spec, x, *args, **kwargs)

    return wrapper


def _ces_log_inner(alpha, tau, k):
    """ln(alpha k^tau + 1 - alpha), accurate for small |tau ln k|."""
    s = tau * math.log(k)
    if abs(s) < 1.0:
        return math.log1p(alpha * math.expm1(s))
    return float(np.logaddexp(math.log(alpha) + s, math.log1p(-alpha)))


def _require_positive(k, what):
    if not k > 0.0:
        raise DomainError(f"{what} requires k > 0, got {k!r}")


@_elementwise
def intensive_output(spec, k):
    """Output per unit of labour f(k)."""
    if not k >= 0.0:
        raise DomainError(f"capital per labour must be >= 0, got {k!r}")
    kind = spec.kind
    if kind is Kind.LOG:
        return math.log1p(k)
    if kind is Kind.CARA:
        return -math.expm1(-k)
    if kind is Kind.COBB_DOUGLAS:
        return k ** spec.alpha
    # CES: the k -> 0 limit is (1 - alpha)^(1/tau) for tau > 0 and 0 for tau < 0
    if k == 0.0:
        return (1.0 - spec.alpha) ** (1.0 / spec.tau) if spec.tau > 0 else 0.0
    if math.isinf(k):
        return math.inf
    return math.exp(_ces_log_inner(spec.alpha, spec.tau, k) / spec.tau)


@_elementwise
def marginal_product(spec, k):
    """Analytic derivative f'(k), k > 0."""
    _require_positive(k, "marginal_product")
    kind = spec.kind
    if kind is Kind.LOG:
        return 1.0 / (1.0 + k)
    if kind is Kind.CARA:
        return math.exp(-k)
    a = spec.alpha
    if kind is Kind.COBB_DOUGLAS:
        return a * k ** (a - 1.0)
    t = spec.tau
    log_inner = _ces_log_inner(a, t, k)
    return a * math.exp(log_inner * (1.0 / t - 1.0) + (t - 1.0) * math.log(k))


@_elementwise
def second_derivative(spec, k):
    """Analytic f''(k), k > 0; strictly negative for every family."""
    _require_positive(k, "second_derivative")
    kind = spec.kind
    if kind is Kind.LOG:
        return -1.0 / (1.0 + k) ** 2
    if kind is Kind.CARA:
        return -math.exp(-k)
    a = spec.alpha
    if kind is Kind.COBB_DOUGLAS:
        return a * (a - 1.0) * k ** (a - 2.0)
    t = spec.tau
    # f'' = alpha (1 - tau) f^(1 - tau) k^(tau - 2) (k f'/f - 1), and k f'/f = alpha k^tau / inner
    log_inner = _ces_log_inner(a, t, k)
    log_f = log_inner / t
    share = a * math.exp(t * math.log(k) - log_inner)
    return -a * (1.0 - t) * math.exp((1.0 - t) * log_f + (t - 2.0) * math.log(k)) * (1.0 - share)


def marginal_range(spec):
    """Open interval ``(lo, hi)`` of values taken by f' on k > 0.

    Log and CARA also accept ``hi`` itself (attained as k -> 0).
    """
    kind = spec.kind
    if kind in (Kind.LOG, Kind.CARA):
        return 0.0, 1.0
    if kind is Kind.COBB_DOUGLAS:
        return 0.0, math.inf
    limit = spec.alpha ** (1.0 / spec.tau)
    return (limit, math.inf) if spec.tau > 0 else (0.0, limit)


@_elementwise
def inverse_marginal(spec, y):
    """Capital per labour k with f'(k) = y.

    Closed forms for Log, CARA and CobbDouglas; CES is solved by bisection
    in log k to a relative tolerance of 1e-12.
    """
    lo, hi = marginal_range(spec)
    kind = spec.kind
    boundary_ok = kind in (Kind.LOG, Kind.CARA) and y == hi
    if not (lo < y < hi or boundary_ok):
        raise NoSolutionError(
            f"{kind.value}: marginal product {y!r} outside its range ({lo!r}, {hi!r})")
    if kind is Kind.LOG:
        return 1.0 / y - 1.0
    if kind is Kind.CARA:
        return -math.log(y)
    a = spec.alpha
    if kind is Kind.COBB_DOUGLAS:
        return (y / a) ** (1.0 / (a - 1.0))

    log_y = math.log(y)

    def gap(u):
        # log f'(e^u) - log y, decreasing in u
        return math.log(marginal_product(spec, math.exp(u))) - log_y

    u_lo, u_hi, g_lo, g_hi = _grow_log_bracket(gap)
    u = bisect(gap, u_lo, u_hi, xtol=1e-12, f_lo=g_lo, f_hi=g_hi)
    return math.exp(u)


def _grow_log_bracket(fun, lo=math.log(1e-8), hi=math.log(1e8), step=math.log(10.0),
                      lo_min=-690.0, hi_max=690.0):
    """Geometric bracket growth for a function of u = ln k (additive in u)."""
    f_lo, f_hi = fun(lo), fun(hi)
    while f_lo * f_hi > 0:
        if lo <= lo_min and hi >= hi_max:
            raise NoSolutionError("no sign change over k in [1e-300, 1e300]")
        if lo > lo_min:
            lo = max(lo - step, lo_min)
            f_lo = fun(lo)
        if hi < hi_max:
            hi = min(hi + step, hi_max)
            f_hi = fun(hi)
    return lo, hi, f_lo, f_hi


@_elementwise
def average_product(spec, k):
    """f(k)/k, k > 0; strictly decreasing in k."""
    _require_positive(k, "average_product")
    return intensive_output(spec, k) / k


@_elementwise
def curvature_gap(spec, k):
    """h(k) = f(k)/k - f'(k) > 0."""
    _require_positive(k, "curvature_gap")
    return intensive_output(spec, k) / k - marginal_product(spec, k)


@_elementwise
def curvature_gap_slope(spec, k):
    """h'(k) = (k f'(k) - f(k)) / k^2 - f''(k)."""
    _require_positive(k, "curvature_gap_slope")
    if spec.kind is Kind.CARA:
        # k e^{-k} - (1 - e^{-k}) with the cancellation done by expm1
        numer = k * math.exp(-k) + math.expm1(-k)
    else:
        numer = k * marginal_product(spec, k) - intensive_output(spec, k)
    return numer / (k * k) - second_derivative(spec, k)


def curvature_gap_critical_point(spec, xtol=1e-8):
    """Zero of h' (maximiser of the curvature gap), or ``None``.

    The bracket starts at [1e-6, 1e6] and grows geometrically; if h' never
    changes sign (e.g. Cobb-Douglas, where h is strictly decreasing) the
    function returns ``None``.
    """
    slope = functools.partial(curvature_gap_slope, spec)
    try:
        lo, hi, f_lo, f_hi = grow_bracket(slope, 1e-6, 1e6, lo_min=1e-12, hi_max=1e12)
    except NoRootError:
        return None
    return bisect(slope, lo, hi, xtol=xtol, f_lo=f_lo, f_hi=f_hi)


__all__ = [
    "Kind",
    "ProductionSpec",
    "intensive_output",
    "marginal_product",
    "second_derivative",
    "marginal_range",
    "inverse_marginal",
    "average_product",
    "curvature_gap",
    "curvature_gap_slope",
    "curvature_gap_critical_point",
]
