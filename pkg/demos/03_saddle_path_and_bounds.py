"""Shooting for the saddle path, checking the capital/consumption sandwich and
the limit against the steady state.

Run with ``python demos/03_saddle_path_and_bounds.py`` (about ten seconds).
"""

import numpy as np

from ramsey_allee import (
    AlleeParams,
    ProductionSpec,
    RamseyParams,
    case2_steady_state,
    classify_regime,
    saddle_path,
    sandwich_violations,
    shoot_initial_consumption,
    verify_limit,
    with_bounds,
)

spec = ProductionSpec.ces(0.3, 0.01)
rp = RamseyParams(rho=0.02, delta=0.075, sigma=0.01)
k0 = 1.0

for L0 in (0.5, 1.5):
    ap = AlleeParams(r=0.025, N=1.0, M=2.0, L0=L0)
    c0 = shoot_initial_consumption(spec, rp, ap, k0)
    # the saddle is unstable forwards, so the path is re-anchored as it is integrated
    traj = with_bounds(saddle_path(spec, rp, ap, k0, t_end=3000.0))
    steady = case2_steady_state(spec, rp, classify_regime(ap).n_infinity)
    report = verify_limit(traj, steady)
    print(f"L0={L0}: c0={c0:.8f}, {len(traj)} steps, termination {traj.termination}")
    print(f"   k(end)={traj.k[-1]:.6f} vs k_inf={steady.k_inf:.6f} (rel {report.k_error:.1e})")
    print(f"   c(end)={traj.c[-1]:.6f} vs c_inf={steady.c_inf:.6f} (rel {report.c_error:.1e})")
    print(f"   sandwich violations: {sandwich_violations(traj)}")
    i = np.searchsorted(traj.t, 100.0)
    print(f"   at t={traj.t[i]:.1f}: {traj.k_lower[i]:.4f} <= k={traj.k[i]:.4f} <= {traj.k_upper[i]:.4f}")
