"""Dormand-Prince 5(4) integrator with PI step-size control and dense output.

This is the single numerical core behind every ODE in the package. State
vectors are short (1 to 3 components), so the stepper works on plain Python
floats; results are packed into numpy arrays at the end.

Coefficients and the PI controller follow Hairer, Norsett & Wanner,
*Solving Ordinary Differential Equations I*, 2nd ed., section II.5 and the
DOPRI5 code.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = 71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40
D1, D3, D4 = -12715105075 / 11282082432, 87487479700 / 32700410799, -10690763975 / 1880347072
D5, D6, D7 = 701980252875 / 199316789632, -1453857185 / 822651844, 69997945 / 29380423

SAFE = 0.9
FAC_MIN, FAC_MAX = 0.2, 10.0
BETA = 0.04
EXPO1 = 0.2 - 0.75 * BETA

SUCCESS = "success"
STEP_UNDERFLOW = "step_underflow"
MAX_STEPS = "max_steps"


@dataclass
class OdeResult:
    """Accepted steps of one integration.

    ``status`` is ``"success"`` when ``t_end`` was reached, the string
    returned by the guard when it fired, or one of ``"step_underflow"`` /
    ``"max_steps"``.
    """

    t: np.ndarray
    y: np.ndarray
    status: str
    message: str = ""
    _segments: list = field(default_factory=list, repr=False)
    _coef: np.ndarray | None = field(default=None, repr=False)

    @property
    def success(self):
        return self.status == SUCCESS

    @property
    def t_last(self):
        return float(self.t[-1])

    def __call__(self, t):
        """Evaluate the continuous (4th order) extension at time(s) ``t``."""
        scalar = np.ndim(t) == 0
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(ts < self.t[0]) or np.any(ts > self.t[-1]):
            raise ValueError(f"t outside integrated range [{self.t[0]}, {self.t[-1]}]")
        if not self._segments:
            out = np.repeat(self.y[:1], ts.size, axis=0)
            return out[0] if scalar else out
        if self._coef is None:
            self._coef = np.array([seg[2:] for seg in self._segments])  # (steps, 5, dim)
        starts = self.t[:-1]
        idx = np.clip(np.searchsorted(starts, ts, side="right") - 1, 0, len(starts) - 1)
        t0 = starts[idx]
        h = np.array([seg[1] for seg in self._segments])[idx]
        s = ((ts - t0) / h)[:, None]
        s1 = 1.0 - s
        r1, r2, r3, r4, r5 = (self._coef[idx, j] for j in range(5))
        out = r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)))
        return out[0] if scalar else out


def _norm(err, y0, y1, rtol, atol):
    tot = 0.0
    for e, a, b in zip(err, y0, y1):
        sk = atol + rtol * max(abs(a), abs(b))
        tot += (e / sk) ** 2
    return math.sqrt(tot / len(err))


def dopri54(fun, t0, y0, t_end, rtol=1e-8, atol=1e-10, first_step=1e-3, max_step=math.inf,
            guard=None, max_steps=500_000, dense=True):
    """Integrate ``y' = fun(t, y)`` from ``t0`` to ``t_end``.

    Parameters
    ----------
    fun : callable
        ``fun(t, y) -> sequence of floats``. May raise :class:`DomainError`
        for trial states outside its domain; the step is then rejected and
        retried with a smaller size.
    guard : callable, optional
        ``guard(t, y) -> str | None`` checked after every accepted step. A
        non-empty return value stops the integration and becomes ``status``.
    dense : bool
        Keep the continuous extension for :meth:`OdeResult.__call__`.

    Returns
    -------
    OdeResult
    """
    y = [float(v) for v in y0]
    t = float(t0)
    ts, ys, segs = [t], [list(y)], []
    if t_end <= t0:
        return OdeResult(np.array(ts), np.array(ys), SUCCESS, "empty horizon", segs)

    if guard is not None:
        reason = guard(t, y)
        if reason:
            return OdeResult(np.array(ts), np.array(ys), reason, f"guard at t={t}", segs)

    k1 = list(fun(t, y))
    h = min(first_step, max_step, t_end - t)
    facold = 1e-4
    last_rejected = False
    status, message = SUCCESS, ""
    n_steps = 0

    while t < t_end:
        if n_steps >= max_steps:
            status, message = MAX_STEPS, f"exceeded {max_steps} steps at t={t}"
            break
        h_min = 16.0 * math.ulp(max(abs(t), 1.0))
        if h < h_min:
            status, message = STEP_UNDERFLOW, f"step size underflow at t={t}"
            break
        last = t + h >= t_end
        if last:
            h = t_end - t

        try:
            yt = [a + h * A21 * b for a, b in zip(y, k1)]
            k2 = fun(t + C2 * h, yt)
            yt = [a + h * (A31 * b + A32 * c) for a, b, c in zip(y, k1, k2)]
            k3 = fun(t + C3 * h, yt)
            yt = [a + h * (A41 * b + A42 * c + A43 * d) for a, b, c, d in zip(y, k1, k2, k3)]
            k4 = fun(t + C4 * h, yt)
            yt = [a + h * (A51 * b + A52 * c + A53 * d + A54 * e)
                  for a, b, c, d, e in zip(y, k1, k2, k3, k4)]
            k5 = fun(t + C5 * h, yt)
            yt = [a + h * (A61 * b + A62 * c + A63 * d + A64 * e + A65 * g)
                  for a, b, c, d, e, g in zip(y, k1, k2, k3, k4, k5)]
            k6 = fun(t + h, yt)
            y1 = [a + h * (B1 * b + B3 * d + B4 * e + B5 * g + B6 * p)
                  for a, b, d, e, g, p in zip(y, k1, k3, k4, k5, k6)]
            t1 = t_end if last else t + h
            k7 = fun(t1, y1)
            err = [h * (E1 * b + E3 * d + E4 * e + E5 * g + E6 * p + E7 * q)
                   for b, d, e, g, p, q in zip(k1, k3, k4, k5, k6, k7)]
            err_norm = _norm(err, y, y1, rtol, atol)
        except (DomainError, OverflowError, ZeroDivisionError):
            err_norm = math.inf
        if not math.isfinite(err_norm):
            h *= 0.25
            last_rejected = True
            continue

        fac11 = err_norm ** EXPO1
        if err_norm <= 1.0:
            fac = fac11 / facold ** BETA
            fac = max(1.0 / FAC_MAX, min(1.0 / FAC_MIN, fac / SAFE))
            h_new = h / fac
            facold = max(err_norm, 1e-4)
            if last_rejected:
                h_new = min(h_new, h)
            last_rejected = False

            if dense:
                ydiff = [b - a for a, b in zip(y, y1)]
                bspl = [h * a - d for a, d in zip(k1, ydiff)]
                r4 = [d - h * q - b for d, q, b in zip(ydiff, k7, bspl)]
                r5 = [h * (D1 * a + D3 * c + D4 * d + D5 * e + D6 * p + D7 * q)
                      for a, c, d, e, p, q in zip(k1, k3, k4, k5, k6, k7)]
                segs.append((t, h, y, ydiff, bspl, r4, r5))

            t, y, k1 = t1, y1, list(k7)
            ts.append(t)
            ys.append(y)
            n_steps += 1
            h = min(h_new, max_step)

            if guard is not None:
                reason = guard(t, y)
                if reason:
                    status, message = reason, f"guard {reason!r} fired at t={t}"
                    break
        else:
            h = h / min(1.0 / FAC_MIN, fac11 / SAFE)
            last_rejected = True

    return OdeResult(np.array(ts), np.array(ys), status, message, segs)
