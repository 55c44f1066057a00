import math

import pytest
from hypothesis import given, strategies as st

from ramsey_allee.errors import NoRootError
from ramsey_allee.roots import bisect, grow_bracket


def test_bisect_sqrt2():
    root = bisect(lambda x: x * x - 2.0, 0.0, 2.0, xtol=1e-14)
    assert abs(root - math.sqrt(2.0)) < 1e-13


def test_bisect_exact_endpoint():
    assert bisect(lambda x: x - 1.0, 1.0, 3.0) == 1.0


def test_bisect_no_sign_change():
    with pytest.raises(NoRootError):
        bisect(lambda x: x * x + 1.0, -1.0, 1.0)


def test_bisect_reversed_bracket():
    root = bisect(lambda x: x - 0.25, 1.0, 0.0, xtol=1e-12)
    assert abs(root - 0.25) < 1e-12


def test_grow_bracket_expands_until_sign_change():
    lo, hi, f_lo, f_hi = grow_bracket(lambda x: math.log(x) - 50.0, 1.0, 2.0)
    assert f_lo * f_hi <= 0
    assert lo <= math.exp(50.0) <= hi


def test_grow_bracket_gives_up():
    with pytest.raises(NoRootError):
        grow_bracket(lambda x: 1.0, 1.0, 2.0, hi_max=1e20, lo_min=1e-20)


@given(st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_bisect_linear_roots(a):
    root = bisect(lambda x: x - a, -100.0, 100.0, xtol=1e-11)
    assert abs(root - a) <= 1e-10
