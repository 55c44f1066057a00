"""Long-run states of the Ramsey-Allee economy.

Two limits are possible once n(t) -> n_inf (and delta + n_inf > 0):

* case I, zero consumption: k settles at the Solow equilibrium
  ``f(k)/k = delta + n_inf``;
* case II, the modified golden rule ``f'(k) = rho + delta + n_inf`` with
  ``c = f(k) - (delta + n_inf) k``.

``n_inf`` is ``-r`` when the population starts below the Allee threshold and
``0`` otherwise, which is what the D_c / D_x comparisons contrast.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InstabilityError, NoRootError
from .production import (
    average_product,
    curvature_gap,
    intensive_output,
    inverse_marginal,
)
from .roots import bisect, grow_bracket


class Case(str, Enum):
    CASE_I = "CaseI"
    CASE_II = "CaseII"


@dataclass(frozen=True)
class SteadyState:
    case: Case
    n_infinity: float
    k_inf: float
    c_inf: float
    x_inf: float
    z_inf: float


def _check_stable(delta, n_inf):
    if not delta + n_inf > 0:
        raise InstabilityError(
            f"delta + n_inf = {delta + n_inf!r} <= 0: no bounded equilibrium (need delta > r)")


def solow_equilibrium(spec, delta, n_inf, xtol=1e-10):
    """Positive root k* of f(k)/k = delta + n_inf.

    Raises :class:`InstabilityError` if ``delta + n_inf <= 0`` and
    :class:`NoRootError` if the average product never reaches the target
    (e.g. CARA with delta + n_inf >= 1, where only k = 0 solves it; the
    error then carries ``trivial_root=0.0``).
    """
    _check_stable(delta, n_inf)
    g = delta + n_inf

    def gap(k):
        return average_product(spec, k) - g

    try:
        lo, hi, f_lo, f_hi = grow_bracket(gap, 1e-8, 1e8, lo_min=1e-300, hi_max=1e300)
    except NoRootError:
        trivial = 0.0 if intensive_output(spec, 0.0) == 0.0 else None
        raise NoRootError(
            f"{spec.kind.value}: f(k)/k never equals {g!r} for k > 0", trivial_root=trivial) from None

    # exactly one sign change on the bracket (average product is decreasing)
    grid = np.geomspace(lo, hi, 257)
    signs = np.sign(average_product(spec, grid) - g)
    signs = signs[signs != 0]
    if np.count_nonzero(np.diff(signs)) != 1:
        raise NoRootError(f"ambiguous Solow root for {spec} on [{lo:g}, {hi:g}]")
    return bisect(gap, lo, hi, xtol=xtol, f_lo=f_lo, f_hi=f_hi)


def case1_steady_state(spec, delta, n_inf):
    k = solow_equilibrium(spec, delta, n_inf)
    return SteadyState(Case.CASE_I, n_inf, k, 0.0, 0.0, k / intensive_output(spec, k))


def case2_steady_state(spec, rp, n_inf):
    """Modified-golden-rule state for the given asymptotic growth rate.

    Raises :class:`NoSolutionError` when rho + delta + n_inf is outside the
    range of f'.
    """
    _check_stable(rp.delta, n_inf)
    k = inverse_marginal(spec, rp.rho + rp.delta + n_inf)
    if k == 0.0:
        # boundary convention of inverse_marginal (f'(0) = 1 for Log/CARA)
        return SteadyState(Case.CASE_II, n_inf, 0.0, 0.0, math.nan, math.nan)
    y = intensive_output(spec, k)
    c = y - (rp.delta + n_inf) * k
    return SteadyState(Case.CASE_II, n_inf, k, c, c / k, k / y)


def regime_pair(spec, rp, r):
    """Case-II states for a declining (n_inf = -r) and a saturating (n_inf = 0) population."""
    if not rp.is_stable(r):
        raise InstabilityError(f"need delta > r, got delta={rp.delta!r}, r={r!r}")
    return case2_steady_state(spec, rp, -r), case2_steady_state(spec, rp, 0.0)


def delta_c(spec, rp, r):
    """c_inf(declining) - c_inf(saturating); positive whenever delta > r."""
    declining, saturating = regime_pair(spec, rp, r)
    return declining.c_inf - saturating.c_inf


def delta_x(spec, rp, r):
    """x_inf(declining) - x_inf(saturating), written as a difference of curvature gaps.

    The sign depends on the production family: always negative for
    Cobb-Douglas, parameter dependent for Log and CARA.
    """
    declining, saturating = regime_pair(spec, rp, r)
    return curvature_gap(spec, declining.k_inf) - curvature_gap(spec, saturating.k_inf)


@dataclass(frozen=True)
class LimitReport:
    matches: bool
    matched_case: Case | None
    k_end: float
    c_end: float
    k_error: float
    c_error: float
    termination: str


def _rel(value, ref):
    return abs(value - ref) / abs(ref) if ref != 0 else abs(value)


def verify_limit(trajectory, steady, tol=1e-3):
    """Compare the trajectory endpoint with ``steady``.

    Errors are relative (absolute when the reference is zero, i.e. c in
    case I). A trajectory cut short by a guard never matches.
    """
    k_end, c_end = float(trajectory.k[-1]), float(trajectory.c[-1])
    ek, ec = _rel(k_end, steady.k_inf), _rel(c_end, steady.c_inf)
    ok = trajectory.completed and ek <= tol and ec <= tol
    return LimitReport(ok, steady.case if ok else None, k_end, c_end, ek, ec,
                       trajectory.termination)
