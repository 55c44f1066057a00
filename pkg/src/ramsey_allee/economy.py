"""Preference/technology scalars and the (t, k, c, L) state record."""

import math
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class RamseyParams:
    """Discount rate ``rho``, depreciation ``delta`` and intertemporal
    elasticity of substitution ``sigma``; all strictly positive."""

    rho: float
    delta: float
    sigma: float

    def __post_init__(self):
        for name in ("rho", "delta", "sigma"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ParameterError(f"{name} must be a finite positive number, got {v!r}")

    def is_stable(self, r):
        """delta > r: the Solow part (and hence the saddle) is stable in every regime."""
        return self.delta > r


@dataclass(frozen=True)
class EconomyState:
    t: float
    k: float
    c: float
    L: float

    def __post_init__(self):
        if not (self.k >= 0 and self.c >= 0 and self.L > 0):
            raise ParameterError(f"need k >= 0, c >= 0, L > 0; got {self}")
