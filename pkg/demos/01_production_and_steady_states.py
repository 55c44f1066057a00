"""Production families, the curvature gap and case-II steady states.

Run with ``python demos/01_production_and_steady_states.py``.
"""

from ramsey_allee import (
    ProductionSpec,
    RamseyParams,
    average_product,
    case2_steady_state,
    curvature_gap,
    curvature_gap_critical_point,
    delta_c,
    delta_x,
    intensive_output,
    marginal_product,
)

# %% The four families at a few capital levels
specs = {
    "CES (alpha=0.3, tau=0.01)": ProductionSpec.ces(0.3, 0.01),
    "Cobb-Douglas (alpha=0.3)": ProductionSpec.cobb_douglas(0.3),
    "Log": ProductionSpec.log(),
    "CARA": ProductionSpec.cara(),
}
for name, spec in specs.items():
    print(name)
    for k in (0.5, 1.0, 4.0):
        print(f"  k={k:<4} f={intensive_output(spec, k):.6f}  f'={marginal_product(spec, k):.6f}"
              f"  f/k={average_product(spec, k):.6f}  h={curvature_gap(spec, k):.6f}")

# %% Where the curvature gap peaks for Log and CARA
for name in ("Log", "CARA"):
    print(f"curvature gap maximum for {name}: k = {curvature_gap_critical_point(specs[name]):.5f}")

# %% Steady states for a shrinking (n = -r) and a saturated (n = 0) population
rp, r = RamseyParams(rho=0.2, delta=0.75, sigma=1.0), 0.25
for name in ("Log", "CARA"):
    spec = specs[name]
    for n_inf in (-r, 0.0):
        s = case2_steady_state(spec, rp, n_inf)
        print(f"{name:4} n_inf={n_inf:+.2f}: k={s.k_inf:.6f} c={s.c_inf:.6f} x={s.x_inf:.6f}")
    # positive D_x: the shrinking economy ends with the higher consumption-capital ratio
    print(f"{name:4} D_c={delta_c(spec, rp, r):+.6f} D_x={delta_x(spec, rp, r):+.6f}")
