import math

import pytest

from ramsey_allee import AlleeParams, ProductionSpec, RamseyParams, saddle_path

# CES economy used throughout: alpha=0.3, tau=0.01, rho=0.02, delta=0.075, sigma=0.01,
# Allee labour with r=0.025, N=1, M=2
CES = ProductionSpec.ces(0.3, 0.01)
CES_RP = RamseyParams(rho=0.02, delta=0.075, sigma=0.01)
L0_BELOW, L0_ABOVE = 0.5, 1.5
K0 = 1.0
# the declining economy converges at rate ~0.004, hence the long horizon
SADDLE_T_END = 3000.0

# log / CARA parameter set with delta=0.75, rho=0.2, r=0.25
SECOND_RP = RamseyParams(rho=0.2, delta=0.75, sigma=1.0)
SECOND_R = 0.25


def allee(L0, r=0.025):
    return AlleeParams(r=r, N=1.0, M=2.0, L0=L0)


@pytest.fixture(scope="session")
def ces_saddle_paths():
    """Saddle paths of the CES economy from k0 = 1 for L0 below and above N."""
    return {
        label: saddle_path(CES, CES_RP, allee(L0), K0, t_end=SADDLE_T_END)
        for label, L0 in (("below", L0_BELOW), ("above", L0_ABOVE))
    }


def rel_err(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def isclose_rel(a, b, tol):
    return math.isfinite(a) and rel_err(a, b) <= tol
