import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracpade.pade import build_pade, eval_pade, eval_pade_polyform, eval_pade_zeropole
from oracles import pade_mp


def test_one_point_closed_form():
    alpha, tau = 0.4, 3.0
    form = build_pade(1, alpha, tau)
    gamma = tau ** (1 - alpha) / alpha
    assert form.pf_coeffs[0] == pytest.approx(gamma, rel=1e-14)
    assert form.pf_shifts[0] == pytest.approx(tau * (1 - alpha) / alpha, rel=1e-14)
    assert form.num_zeros.size == 0
    assert form.leading_chi == pytest.approx(gamma, rel=1e-13)
    assert eval_pade(form, tau) == pytest.approx(tau ** -alpha, rel=1e-14)


@pytest.mark.parametrize("k", [1, 2, 5, 13, 40])
@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.85])
@pytest.mark.parametrize("tau", [1e-3, 1.0, 7e5])
def test_centre_exactness(k, alpha, tau):
    form = build_pade(k, alpha, tau)
    assert eval_pade(form, tau) == pytest.approx(tau ** -alpha, rel=1e-11)


def test_unit_centre_k8():
    assert eval_pade(build_pade(8, 0.5, 1.0), 1.0) == pytest.approx(1.0, abs=1e-11)


@pytest.mark.parametrize("k,alpha,tau,lam", [(6, 0.3, 2.0, 0.05), (12, 0.75, 10.0, 4e3), (25, 0.5, 1e3, 10.0)])
def test_eval_matches_high_precision(k, alpha, tau, lam):
    assert eval_pade(build_pade(k, alpha, tau), lam) == pytest.approx(float(pade_mp(k, alpha, tau, lam)), rel=1e-12)


def test_large_lambda_decay():
    form = build_pade(6, 0.4, 2.0)
    lam = 1e12
    assert 0 < eval_pade(form, lam) <= form.pf_coeffs.sum() / lam


def test_partial_fraction_vs_pole_zero_k5():
    form = build_pade(5, 0.75, 10.0)
    lam = np.geomspace(1e-5, 1e7, 100)
    pf = eval_pade(form, lam)
    pz = eval_pade_zeropole(form, lam)
    assert np.max(np.abs(pf - pz) / pf) <= 1e-11


@pytest.mark.parametrize("k", [2, 10, 30, 60])
def test_pole_zero_agreement_log_grid(k):
    tau = 37.0
    form = build_pade(k, 0.6, tau)
    lam = np.geomspace(1e-6 * tau, 1e6 * tau, 100)
    pf, pz = eval_pade(form, lam), eval_pade_zeropole(form, lam)
    assert np.max(np.abs(pf - pz) / pf) <= 1e-11


def test_polyform_vanishes_at_roots():
    form = build_pade(6, 0.45, 2.5)
    for eta in form.pf_shifts:
        _, q = eval_pade_polyform(form, -eta)
        assert q == 0.0
    for eps in form.num_zeros:
        p, _ = eval_pade_polyform(form, -eps)
        assert p == 0.0
    p0, q0 = eval_pade_polyform(form, 0.0)
    assert p0 > 0 and q0 > 0
    assert p0 / q0 == pytest.approx(eval_pade(form, 0.0), rel=1e-12)


def _contact_slope(errors, lam):
    return np.polyfit(np.log(lam - 1.0), np.log(errors), 1)[0]


@pytest.mark.parametrize("alpha", [0.3, 0.7])
@pytest.mark.parametrize("k", [1, 2])
def test_contact_order_double(k, alpha):
    # for k <= 2 the error on [1.001, 1.01] is well above binary64 roundoff
    form = build_pade(k, alpha, 1.0)
    lam = np.geomspace(1.001, 1.01, 12)
    err = np.abs(lam ** -alpha - eval_pade(form, lam))
    assert abs(_contact_slope(err, lam) - 2 * k) <= 0.15


@pytest.mark.parametrize("alpha", [0.3, 0.7])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_contact_order_extended_precision(k, alpha):
    # errors reach 1e-33 at k=5, so the construction is evaluated at 60 digits
    lam = np.geomspace(1.001, 1.01, 8)
    with mpmath.workdps(60):
        err = [abs(mpmath.mpf(x) ** -mpmath.mpf(alpha) - pade_mp(k, alpha, 1, x)) for x in lam]
        err = np.array([float(e) for e in err])
    assert abs(_contact_slope(err, lam) - 2 * k) <= 0.15


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=50),
    st.floats(min_value=0.05, max_value=0.95),
    st.floats(min_value=1e-4, max_value=1e8),
)
def test_structure_invariants(k, alpha, tau):
    form = build_pade(k, alpha, tau)
    assert np.all(form.pf_coeffs > 0) and np.all(form.pf_shifts > 0)
    assert np.all(form.num_zeros > 0) and form.leading_chi > 0
    assert np.all(np.diff(form.pf_shifts) > 0)
    assert np.all(form.pf_shifts[:-1] < form.num_zeros)
    assert np.all(form.num_zeros < form.pf_shifts[1:])
    # chi is the leading numerator coefficient, i.e. lim lam R(lam) = sum gamma
    assert form.leading_chi == pytest.approx(form.pf_coeffs.sum(), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=30),
    st.floats(min_value=0.05, max_value=0.95),
    st.floats(min_value=1e-3, max_value=1e6),
    st.floats(min_value=1e-4, max_value=1e4),
)
def test_scaling_law(k, alpha, tau, lam):
    scaled = tau ** -alpha * eval_pade(build_pade(k, alpha, 1.0), lam / tau)
    assert eval_pade(build_pade(k, alpha, tau), lam) == pytest.approx(scaled, rel=1e-11)


def test_callable_and_immutable():
    form = build_pade(3, 0.5, 1.0)
    assert form(2.0) == eval_pade(form, 2.0)
    with pytest.raises(ValueError):
        form.pf_coeffs[0] = 1.0


@pytest.mark.parametrize("kwargs", [dict(alpha=1.2, tau=1.0), dict(alpha=0.5, tau=0.0), dict(alpha=0.5, tau=math.inf)])
def test_domain_errors(kwargs):
    with pytest.raises(ValueError):
        build_pade(3, **kwargs)
