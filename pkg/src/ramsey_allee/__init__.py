"""Ramsey optimal growth with Allee-effect population dynamics.

Submodules:

* :mod:`~ramsey_allee.production` - intensive production functions f(k)
* :mod:`~ramsey_allee.population` - the cubic Allee labour ODE and its regimes
* :mod:`~ramsey_allee.dynamics` - the (k, c, L) system, ratio form, bounds, shooting
* :mod:`~ramsey_allee.steadystate` - Solow and modified-golden-rule states, D_c, D_x
* :mod:`~ramsey_allee.scenario_io` - config documents, CSV/SVG, CLI
"""

from .dynamics import (
    Trajectory,
    capital_bounds,
    consumption_bounds,
    initial_state,
    integrate_full,
    integrate_ratio,
    saddle_path,
    sandwich_violations,
    shoot_initial_consumption,
    transversality_residual,
    welfare,
    with_bounds,
)
from .economy import EconomyState, RamseyParams
from .errors import (
    ConfigError,
    DomainError,
    InstabilityError,
    IntegrationError,
    NoRootError,
    NoSaddlePathError,
    NoSolutionError,
    ParameterError,
    RamseyAlleeError,
)
from .population import AlleeParams, classify_regime, growth_rate, integrate_population
from .production import (
    Kind,
    ProductionSpec,
    average_product,
    curvature_gap,
    curvature_gap_critical_point,
    intensive_output,
    inverse_marginal,
    marginal_product,
)
from .steadystate import (
    Case,
    SteadyState,
    case1_steady_state,
    case2_steady_state,
    delta_c,
    delta_x,
    solow_equilibrium,
    verify_limit,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
