import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracpade.scalar import lambert_w0, log_gamma


def test_lambert_w0_fixed_points():
    assert lambert_w0(0.0) == 0.0
    assert lambert_w0(math.e) == pytest.approx(1.0, rel=1e-15)
    assert lambert_w0(1.0) == pytest.approx(0.5671432904097838, rel=1e-15)


def test_lambert_w0_branch_point_and_domain():
    assert lambert_w0(-1.0 / math.e) == -1.0
    with pytest.raises(ValueError):
        lambert_w0(-0.5)


@pytest.mark.parametrize("x", [-0.3, -1e-3, 1e-8, 0.2, 0.5, 2.0, 3.5, 50.0, 1e5, 1e12, 1e200])
def test_lambert_w0_matches_mpmath(x):
    ref = float(mpmath.lambertw(mpmath.mpf(x)).real)
    assert lambert_w0(x) == pytest.approx(ref, rel=1e-14, abs=1e-300)


def test_lambert_w0_residual_random():
    rng = np.random.default_rng(1)
    lo = -1.0 / math.e + 1e-6
    xs = np.concatenate([rng.uniform(lo, 3.0, 500), 10.0 ** rng.uniform(0.0, 8.0, 500)])
    for x in xs:
        w = lambert_w0(float(x))
        assert w >= -1.0
        assert abs(w * math.exp(w) - x) <= 1e-13 * max(1.0, abs(x))


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-1.0 / math.e + 1e-9, max_value=1e300))
def test_lambert_w0_inverse_property(x):
    w = lambert_w0(x)
    # residual measured through log for large x to avoid overflow of exp(w)
    if x > 1.0:
        assert abs(w + math.log(w) - math.log(x)) <= 1e-14 * max(1.0, math.log(x))
    else:
        assert abs(w * math.exp(w) - x) <= 1e-13


def test_log_gamma_values():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(2.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(math.log(math.pi) / 2.0, rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, math.inf])
def test_log_gamma_domain(x):
    with pytest.raises(ValueError):
        log_gamma(x)


def test_log_gamma_against_mpmath():
    for x in np.geomspace(1e-3, 200.0, 60):
        ref = float(mpmath.loggamma(mpmath.mpf(x)))
        assert log_gamma(float(x)) == pytest.approx(ref, rel=1e-13, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.1, max_value=100.0))
def test_log_gamma_recurrence(x):
    assert abs(log_gamma(x + 1.0) - log_gamma(x) - math.log(x)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1.0 - 1e-3))
def test_log_gamma_reflection(x):
    lhs = log_gamma(x) + log_gamma(1.0 - x)
    assert abs(lhs - math.log(math.pi / math.sin(math.pi * x))) <= 1e-11
