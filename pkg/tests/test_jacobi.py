import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracpade.jacobi import MAX_RULE_SIZE, build_rule, jacobi_eval, jacobi_zeros
from oracles import gauss_jacobi_mp, weighted_moment


def test_jacobi_eval_degree_zero():
    assert jacobi_eval(0, 0.3, -0.2, 0.7) == (1.0, 0.0)


@pytest.mark.parametrize("a,b,t", [(0.0, 0.0, 0.4), (-0.6, -0.4, -0.9), (1.5, 0.2, 0.1)])
def test_jacobi_eval_degree_one(a, b, t):
    value, deriv = jacobi_eval(1, a, b, t)
    assert value == pytest.approx((a + b + 2) * t / 2 + (a - b) / 2, rel=1e-15)
    assert deriv == pytest.approx((a + b + 2) / 2, rel=1e-15)


def test_jacobi_eval_degree_five_matches_mpmath():
    value, deriv = jacobi_eval(5, 0.6, 0.4, 0.3)
    ref = mpmath.jacobi(5, 0.6, 0.4, 0.3)
    ref_d = mpmath.diff(lambda t: mpmath.jacobi(5, 0.6, 0.4, t), 0.3)
    assert value == pytest.approx(float(ref), rel=1e-13)
    assert deriv == pytest.approx(float(ref_d), rel=1e-12)


def test_jacobi_eval_vectorised():
    t = np.linspace(-1, 1, 7)
    values, derivs = jacobi_eval(4, -0.3, -0.7, t)
    for ti, vi, di in zip(t, values, derivs):
        v, d = jacobi_eval(4, -0.3, -0.7, float(ti))
        assert vi == v and di == d


def test_jacobi_eval_rejects_bad_parameters():
    with pytest.raises(ValueError):
        jacobi_eval(3, -1.0, 0.0, 0.0)


def test_zeros_linear_case():
    alpha = 0.35
    z = jacobi_zeros(1, -alpha, alpha - 1)
    assert z[0] == pytest.approx(2 * alpha - 1, rel=1e-15)


def test_zeros_legendre_two_point():
    z = jacobi_zeros(2, 0.0, 0.0)
    assert z == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-15)


def test_zeros_sign_change_count():
    z = jacobi_zeros(10, -0.6, -0.4)
    grid = np.linspace(-1 + 1e-12, 1 - 1e-12, 10_000)
    vals, _ = jacobi_eval(10, -0.6, -0.4, grid)
    assert int(np.sum(np.sign(vals[1:]) != np.sign(vals[:-1]))) == 10
    assert np.all(np.diff(z) > 0) and z[0] > -1 and z[-1] < 1
    # each zero sits between consecutive grid sign changes
    for zero in z:
        value, deriv = jacobi_eval(10, -0.6, -0.4, zero)
        assert abs(value) <= 1e-13 * abs(deriv)


@pytest.mark.parametrize("n,a,b", [(5, -0.3, -0.7), (17, 0.4, 0.6), (40, -0.8, -0.2)])
def test_zeros_match_golub_welsch(n, a, b):
    ref, _ = gauss_jacobi_mp(n, a, b)
    assert jacobi_zeros(n, a, b) == pytest.approx([float(x) for x in ref], abs=1e-14)


def test_rule_one_point():
    rule = build_rule(1, 0.3)
    assert rule.nodes[0] == pytest.approx(-0.4, rel=1e-15)
    assert rule.weights[0] == pytest.approx(math.pi / math.sin(0.3 * math.pi), rel=1e-15)


def test_rule_weight_sum_half():
    assert build_rule(3, 0.5).weights.sum() == pytest.approx(math.pi, rel=1e-14)


def test_rule_moments_k20():
    rule = build_rule(20, 0.3)
    for m in range(40):
        ref = weighted_moment(m, 0.3)
        scale = weighted_moment(m, 0.3, absolute=True)
        assert abs(rule.integrate(lambda t: t ** m) - ref) <= 1e-10 * scale


def test_rule_weights_match_golub_welsch():
    for k in (2, 9, 30):
        _, ref = gauss_jacobi_mp(k, -0.7, -0.3)
        assert build_rule(k, 0.7).weights == pytest.approx([float(w) for w in ref], rel=1e-12)


@pytest.mark.parametrize("alpha", [0.2, 0.35, 0.5, 0.65, 0.8])
def test_weight_sum_identity(alpha):
    total = math.pi / math.sin(alpha * math.pi)
    for k in range(1, 101):
        rule = build_rule(k, alpha)
        assert abs(rule.weights.sum() - total) <= 1e-12 * total


def test_rule_invariants_and_interlacing():
    for alpha in (0.2, 0.65):
        prev = None
        for k in range(1, 30):
            rule = build_rule(k, alpha)
            assert np.all(np.diff(rule.nodes) > 0)
            assert np.all(rule.weights > 0)
            assert np.all(np.abs(rule.nodes) < 1)
            if prev is not None:
                # each gap of the smaller rule holds one node of the larger
                assert np.all(rule.nodes[:-1] < prev.nodes) and np.all(prev.nodes < rule.nodes[1:])
            prev = rule


def test_endpoint_offsets_consistent():
    rule = build_rule(60, 0.9)
    assert np.allclose(rule.one_minus, 1.0 - rule.nodes, rtol=0, atol=4.5e-16)
    assert np.allclose(rule.one_plus, 1.0 + rule.nodes, rtol=0, atol=4.5e-16)
    assert np.all(rule.one_minus > 0) and np.all(rule.one_plus > 0)


def test_extreme_alpha_weight_sum():
    # near-singular endpoint exponents; recurrence conditioning limits accuracy
    for alpha in (0.05, 0.95):
        total = math.pi / math.sin(alpha * math.pi)
        for k in (10, 50, 100):
            assert abs(build_rule(k, alpha).weights.sum() - total) <= 5e-12 * total


def test_rule_immutable():
    rule = build_rule(4, 0.5)
    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0


@pytest.mark.parametrize("k", [0, MAX_RULE_SIZE + 1, 2.5])
def test_rule_rejects_bad_size(k):
    with pytest.raises(ValueError):
        build_rule(k, 0.5)


@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1])
def test_rule_rejects_bad_alpha(alpha):
    with pytest.raises(ValueError):
        build_rule(3, alpha)


def test_rule_largest_size():
    rule = build_rule(MAX_RULE_SIZE, 0.5)
    assert rule.weights.sum() == pytest.approx(math.pi, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=40), st.floats(min_value=0.05, max_value=0.95))
def test_rule_exact_for_low_degree_polynomial(k, alpha):
    rule = build_rule(k, alpha)
    m = min(2 * k - 1, 3)
    ref = weighted_moment(m, alpha)
    scale = weighted_moment(m, alpha, absolute=True)
    assert abs(rule.integrate(lambda t: t ** m) - ref) <= 1e-10 * scale
