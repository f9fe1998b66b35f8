import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from fracstefan.special import ConvergenceError, PoleError, gamma_fn, rgamma, wright

# 50-digit partial sum of 300 terms, see wright_mp below
W_REGRESSION = 0.60333231854443198915


def wright_mp(z, g, d, terms=300, dps=50):
    with mpmath.workdps(dps):
        z, g, d = mpmath.mpf(z), mpmath.mpf(g), mpmath.mpf(d)
        return mpmath.fsum(z**k / mpmath.factorial(k) * mpmath.rgamma(g * k + d) for k in range(terms))


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 1.0), (0.5, math.sqrt(math.pi)), (-0.5, -2.0 * math.sqrt(math.pi)), (5.0, 24.0)],
)
def test_gamma_values(x, expected):
    assert_allclose(gamma_fn(x), expected, rtol=1e-14)


@pytest.mark.parametrize("x", [0, -1, -2, -7.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma_fn(x)


def test_wright_trivial():
    assert wright(0.0, -0.25, 1.0) == 1.0
    assert_allclose(wright(1.0, 0.0, 1.0), math.e, rtol=1e-15)


def test_wright_regression_value():
    assert_allclose(float(wright_mp(-0.546438, -0.125, 1.0)), W_REGRESSION, rtol=1e-15)
    assert_allclose(wright(-0.546438, -0.125, 1.0), W_REGRESSION, rtol=1e-14)


@pytest.mark.parametrize("z", [-2.9, -1.0, -0.3, 0.7, 2.5])
@pytest.mark.parametrize("g, d", [(-0.125, 1.0), (-0.25, 0.75), (-0.375, 1.0), (-0.5, 0.5), (0.3, 1.2)])
def test_wright_against_mpmath(z, g, d):
    assert_allclose(wright(z, g, d), float(wright_mp(z, g, d)), rtol=1e-12, atol=1e-14)


def test_wright_domain():
    with pytest.raises(ValueError):
        wright(0.5, -1.0, 1.0)
    with pytest.raises(ConvergenceError):
        wright(50.0, 0.0, 1.0, max_terms=10)


def test_wright_pole_terms_vanish():
    # 1 - k/2 is a pole for every even k >= 2; those terms are dropped
    expected = math.fsum(
        0.4**k / math.factorial(k) / math.gamma(1 - k / 2) for k in range(40) if k == 0 or k % 2
    )
    assert_allclose(wright(0.4, -0.5, 1.0), expected, rtol=1e-14)


@given(
    g=st.floats(-0.99, 2.0),
    d=st.floats(0.05, 4.0),
)
def test_wright_at_zero_is_reciprocal_gamma(g, d):
    assert wright(0.0, g, d) == 1.0 / math.gamma(d)


@pytest.mark.parametrize("z", np.linspace(-5, 5, 21))
def test_wright_exponential(z):
    assert abs(wright(z, 0.0, 1.0) - math.exp(z)) <= 1e-12 * max(1.0, math.exp(z))


@pytest.mark.parametrize("z", np.linspace(0, 3, 31))
def test_wright_erfc_identity(z):
    assert abs(wright(-z, -0.5, 1.0) - math.erfc(z / 2)) < 1e-10


@settings(max_examples=40)
@given(z=st.floats(-3.0, 3.0), g=st.floats(-0.5, 0.0))
def test_partial_sums_are_settled(z, g):
    # replay the stopping rule, then add ten more terms
    base = wright(z, g, 1.0)
    total, power, quiet = 0.0, 1.0, 0
    for k in range(1000):
        if k:
            power *= z / k
        term = power * rgamma(g * k + 1.0)
        total += term
        quiet = quiet + 1 if abs(term) < 1e-16 * max(1.0, abs(total)) else 0
        if quiet >= 3:
            break
    assert total == base
    for j in range(k + 1, k + 11):
        power *= z / j
        total += power * rgamma(g * j + 1.0)
    assert abs(total - base) <= 1e-14 * max(1.0, abs(base))
