"""With the growth rate r above delta, a forward run from the saddle-path
consumption of the r = 0.025 economy explodes in finite time.

Run with ``python demos/04_blow_up.py``.
"""

from ramsey_allee import (
    AlleeParams,
    ProductionSpec,
    RamseyParams,
    initial_state,
    integrate_full,
    shoot_initial_consumption,
)

spec = ProductionSpec.ces(0.3, 0.01)
rp = RamseyParams(rho=0.02, delta=0.075, sigma=0.01)
k0 = 1.0
c0 = shoot_initial_consumption(spec, rp, AlleeParams(0.025, 1.0, 2.0, 0.5), k0)

for r in (0.025, 0.085):
    ap = AlleeParams(r=r, N=1.0, M=2.0, L0=0.5)
    traj = integrate_full(spec, rp, ap, initial_state(ap, k0, c0), t_end=20000.0)
    print(f"r={r}: termination {traj.termination} at t={traj.t[-1]:.1f}, max k={traj.k.max():.3g}")
