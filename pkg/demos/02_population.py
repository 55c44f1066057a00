"""Allee-effect labour: the three regimes and the growth rate along each path.

Run with ``python demos/02_population.py``.
"""

import numpy as np

from ramsey_allee import AlleeParams, classify_regime, growth_rate, integrate_population

N, M, r = 1.0, 2.0, 0.025

# %% Below the threshold labour dies out, between N and M it saturates at M, above M it falls to M
t = np.array([0.0, 50.0, 200.0, 1000.0])
for L0 in (0.5, 1.5, 3.0):
    ap = AlleeParams(r=r, N=N, M=M, L0=L0)
    regime = classify_regime(ap)
    path = integrate_population(ap, t_end=1000.0)
    L = path.labour_at(t)
    print(f"L0={L0}: regime {regime.tag.value}, n_inf={regime.n_infinity:+.3f}")
    print("   L(t) =", np.array2string(L, precision=5))
    print("   n(t) =", np.array2string(growth_rate(ap, L), precision=5))

# %% Starting exactly at a fixed point keeps labour constant
fixed = integrate_population(AlleeParams(r=r, N=N, M=M, L0=N), t_end=100.0)
print("L0 = N stays at", fixed.labour_at(np.array([0.0, 100.0])))
