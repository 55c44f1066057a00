import math

import numpy as np
import pytest

from ramsey_allee.errors import DomainError
from ramsey_allee.ode import dopri54


def test_exponential_decay_matches_closed_form():
    sol = dopri54(lambda t, y: (-0.5 * y[0],), 0.0, [2.0], 10.0, rtol=1e-11, atol=1e-14)
    assert sol.success
    expected = 2.0 * np.exp(-0.5 * sol.t)
    assert np.max(np.abs(sol.y[:, 0] - expected) / expected) < 1e-9


def test_harmonic_oscillator_dense_output():
    sol = dopri54(lambda t, y: (y[1], -y[0]), 0.0, [0.0, 1.0], 2 * math.pi,
                  rtol=1e-10, atol=1e-12)
    grid = np.linspace(0, 2 * math.pi, 501)
    vals = sol(grid)
    assert np.max(np.abs(vals[:, 0] - np.sin(grid))) < 1e-7
    assert np.max(np.abs(vals[:, 1] - np.cos(grid))) < 1e-7


def test_dense_output_hits_step_values():
    sol = dopri54(lambda t, y: (math.cos(t) * y[0],), 0.0, [1.0], 5.0)
    assert np.allclose(sol(sol.t)[:, 0], sol.y[:, 0], rtol=1e-12, atol=0)


def test_dense_output_rejects_outside_range():
    sol = dopri54(lambda t, y: (1.0,), 0.0, [0.0], 1.0)
    with pytest.raises(ValueError):
        sol(1.5)


def test_order_of_accuracy_improves_with_tolerance():
    def run(rtol):
        s = dopri54(lambda t, y: (y[0] * (1 - y[0]),), 0.0, [0.1], 10.0, rtol=rtol, atol=rtol * 1e-3)
        return abs(s.y[-1, 0] - 1 / (1 + 9 * math.exp(-10)))

    assert run(1e-10) < run(1e-5)
    assert run(1e-10) < 1e-8


def test_guard_stops_integration():
    sol = dopri54(lambda t, y: (1.0,), 0.0, [0.0], 10.0,
                  guard=lambda t, y: "hit" if y[0] > 3.0 else None)
    assert sol.status == "hit"
    assert 3.0 < sol.y[-1, 0] < 10.0


def test_domain_error_triggers_step_rejection():
    # sqrt(y) is undefined for trial states below zero; the solver must back off
    def rhs(t, y):
        if y[0] < 0:
            raise DomainError("negative")
        return (-math.sqrt(y[0]),)

    sol = dopri54(rhs, 0.0, [1.0], 1.9, rtol=1e-9, atol=1e-12)
    assert sol.success
    assert abs(sol.y[-1, 0] - (1 - 0.95) ** 2) < 1e-6


def test_empty_horizon():
    sol = dopri54(lambda t, y: (1.0,), 3.0, [1.0], 3.0)
    assert sol.success and len(sol.t) == 1


def test_step_underflow_reported():
    def rhs(t, y):
        if t > 0.5:
            raise DomainError("wall at t = 0.5")
        return (1.0,)

    sol = dopri54(rhs, 0.0, [1.0], 1.0)
    assert sol.status == "step_underflow"
    assert 0.49 < sol.t_last <= 0.5


def test_domain_error_at_start_propagates():
    def rhs(t, y):
        raise DomainError("bad start")

    with pytest.raises(DomainError):
        dopri54(rhs, 0.0, [1.0], 1.0)
