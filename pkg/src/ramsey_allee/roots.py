"""Bracketing root finders used by the steady-state and inversion routines.

Only bisection is used: every function we solve here is monotone on its
bracket, and a fixed iteration budget keeps the results reproducible.
"""

import math

from .errors import NoRootError

MAX_ITER = 200


def _sign(v):
    return (v > 0) - (v < 0)


def bisect(fun, lo, hi, xtol=1e-10, rtol=0.0, maxiter=MAX_ITER, f_lo=None, f_hi=None):
    """Find a zero of ``fun`` in ``[lo, hi]`` by bisection.

    The interval must contain a sign change. Iteration stops when the
    bracket width drops below ``xtol + rtol * |mid|`` or after ``maxiter``
    halvings, whichever comes first.
    """
    if lo > hi:
        lo, hi = hi, lo
        f_lo, f_hi = f_hi, f_lo
    if f_lo is None:
        f_lo = fun(lo)
    if f_hi is None:
        f_hi = fun(hi)
    s_lo, s_hi = _sign(f_lo), _sign(f_hi)
    if s_lo == 0:
        return lo
    if s_hi == 0:
        return hi
    if s_lo == s_hi:
        raise NoRootError(f"no sign change on [{lo!r}, {hi!r}]")

    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol + rtol * abs(mid) or mid in (lo, hi):
            return mid
        s_mid = _sign(fun(mid))
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def grow_bracket(fun, lo, hi, factor=10.0, lo_min=1e-300, hi_max=1e300):
    """Widen ``[lo, hi]`` geometrically (lo / factor, hi * factor) until
    ``fun`` changes sign across it.

    Returns ``(lo, hi, f_lo, f_hi)``. Raises :class:`NoRootError` once both
    ends hit their limits without a sign change.
    """
    f_lo, f_hi = fun(lo), fun(hi)
    while _sign(f_lo) * _sign(f_hi) > 0:
        if lo <= lo_min and hi >= hi_max:
            raise NoRootError(
                f"no sign change on [{lo:.3g}, {hi:.3g}] after geometric growth")
        if lo > lo_min:
            lo = max(lo / factor, lo_min)
            f_lo = fun(lo)
        if hi < hi_max:
            hi = min(hi * factor, hi_max)
            f_hi = fun(hi)
    return lo, hi, f_lo, f_hi
