import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wright_radii.errors import EXIT_CODES, BracketFailure, DerivativeZeroProximity, PoleProximity, exit_code_for
from wright_radii.rootfind import bracketed_root


def test_cosine_root():
    res = bracketed_root(math.cos, 0.0, 3.0, xtol=1e-15)
    assert res.root == pytest.approx(math.pi / 2, abs=1e-14)
    assert res.converged
    assert res.bracket[0] <= res.root <= res.bracket[1]
    assert res.function_calls >= res.iterations


def test_root_at_endpoint():
    res = bracketed_root(lambda x: x - 1.0, 1.0, 2.0)
    assert res.root == 1.0
    assert res.iterations == 0


def test_known_endpoint_values_are_reused():
    calls = []

    def f(x):
        calls.append(x)
        return x - 0.3

    bracketed_root(f, 0.0, 1.0, f_lo=-0.3, f_hi=0.7)
    assert 0.0 not in calls and 1.0 not in calls


def test_same_sign_raises():
    with pytest.raises(BracketFailure) as info:
        bracketed_root(lambda x: x * x + 1.0, -1.0, 1.0)
    assert info.value.interval == (-1.0, 1.0)
    assert info.value.residuals == (2.0, 2.0)


@given(root=st.floats(0.01, 0.99), power=st.sampled_from([1, 3, 5]))
def test_odd_powers(root, power):
    res = bracketed_root(lambda x: (x - root) ** power, 0.0, 1.0, xtol=1e-14)
    tol = 1e-13 if power == 1 else 1e-4
    assert abs(res.root - root) <= tol


def test_exit_codes():
    assert exit_code_for(BracketFailure("x")) == 4
    assert exit_code_for(DerivativeZeroProximity("x")) == 5
    assert exit_code_for(PoleProximity("x")) == 5
    assert exit_code_for(RuntimeError("x")) == 5
    assert set(EXIT_CODES.values()) == {2, 3, 4, 5, 64}


def _kinked(x: float) -> float:
    return 1e3 * (x - 0.3) if x < 0.3 else 1e-3 * (x - 0.3)


def test_width_alone_does_not_stop_when_residual_is_large():
    res = bracketed_root(_kinked, 0.0, 1.0, xtol=1e-6, ftol=1e-12)
    assert res.converged
    assert abs(res.residual) <= 1e-12
    assert abs(_kinked(res.root)) <= 1e-12
    assert res.root == pytest.approx(0.3, abs=1e-9)


def test_unreachable_residual_raises():
    step = lambda x: -1.0 if x < 0.5 else 1.0  # noqa: E731
    with pytest.raises(BracketFailure) as exc:
        bracketed_root(step, 0.0, 1.0, xtol=1e-6, ftol=1e-12)
    lo, hi = exc.value.interval
    assert lo <= 0.5 <= hi
