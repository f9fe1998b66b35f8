import functools
import math

import mpmath
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.optimize import brentq

from fracstefan import analytic
from fracstefan.analytic import (
    ModelParams,
    exact_concentration,
    exact_front,
    exact_profile,
    solve_p_transcendental,
    to_dimensionless,
)
from fracstefan.special import wright

ALPHAS = (0.25, 0.5, 0.75, 1.0)
LAMBDAS = (1 / 3, 2 / 3, 1.0)

# extended-precision value of the profile at half the front, see test below
CONC_HALF_FRONT = 0.55441771641562543121


def p_root_mp(alpha, lam):
    """50-digit root of the front equation with brute-force partial sums."""
    with mpmath.workdps(50):
        a = mpmath.mpf(alpha) / 2
        lam = mpmath.mpf(lam)

        def W(z, g, d):
            return mpmath.fsum(z**k / mpmath.factorial(k) * mpmath.rgamma(g * k + d) for k in range(200))

        def f(p):
            return lam * mpmath.gamma(1 - a) * W(-p, -a, 1 - a) - p * mpmath.gamma(1 + a) * (1 - W(-p, -a, 1))

        return float(mpmath.findroot(f, 0.8))


class TestModelParams:
    def test_domains(self):
        with pytest.raises(ValueError):
            ModelParams(alpha=0.0, lam=1.0)
        with pytest.raises(ValueError):
            ModelParams(alpha=1.2, lam=1.0)
        with pytest.raises(ValueError):
            ModelParams(alpha=0.5, lam=-1.0)

    def test_physical_block(self):
        params = ModelParams.from_physical(0.5, D_alpha=4.0, C0=3.0, CS=1.0, l=2.0)
        assert params.lam == pytest.approx(1 / 3)
        with pytest.raises(ValueError):
            ModelParams(alpha=0.5, lam=0.5, D_alpha=4.0, C0=3.0, CS=1.0, l=2.0)
        with pytest.raises(ValueError):
            ModelParams.from_physical(0.5, D_alpha=4.0, C0=1.0, CS=3.0, l=2.0)
        with pytest.raises(ValueError):
            ModelParams(alpha=0.5, lam=0.5, D_alpha=4.0)


class TestToDimensionless:
    def test_unit_scaling(self):
        params = ModelParams.from_physical(0.7, D_alpha=1.0, C0=2.0, CS=1.0, l=1.0)
        assert to_dimensionless(1.0, 1.0, 1.0, params) == (1.0, 1.0, 1.0)
        assert to_dimensionless(0.0, 0.0, 0.0, params) == (0.0, 0.0, 0.0)

    def test_scaled(self):
        params = ModelParams.from_physical(0.5, D_alpha=4.0, C0=3.0, CS=1.0, l=2.0)
        tau, x, c = to_dimensionless(2.0, 0.5, 0.5, params)
        # (4 / 2**2) ** (1 / 0.5) == 1
        assert_allclose((tau, x, c), (2.0, 0.25, 0.5), rtol=1e-15)

    def test_needs_physical_block(self):
        with pytest.raises(ValueError):
            to_dimensionless(1.0, 1.0, 1.0, ModelParams(alpha=0.5, lam=0.5))


class TestSolveP:
    @pytest.mark.parametrize(
        "alpha, lam, p, tol",
        [(0.25, 1 / 3, 0.546438, 5e-6), (1.0, 1.0, 1.24014, 5e-5), (0.5, 2 / 3, 0.808016, 5e-6)],
    )
    def test_published_values(self, alpha, lam, p, tol):
        res = solve_p_transcendental(ModelParams(alpha=alpha, lam=lam))
        assert res.method == "transcendental"
        assert abs(res.p - p) <= tol

    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_against_extended_precision(self, alpha, lam):
        res = solve_p_transcendental(ModelParams(alpha=alpha, lam=lam))
        assert res.residual < 1e-10
        assert abs(res.p - p_root_mp(alpha, lam)) < 1e-9

    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_classical_limit(self, lam):
        # alpha = 1: 2 lam / p = sqrt(pi) erf(p/2) exp(p**2/4)
        f = lambda p: 2 * lam / p - math.sqrt(math.pi) * math.erf(p / 2) * math.exp(p * p / 4)  # noqa: E731
        p_classic = brentq(f, 1e-3, 5.0, xtol=1e-14)
        assert abs(solve_p_transcendental(ModelParams(1.0, lam)).p - p_classic) < 1e-9

    def test_term_budget_invariance(self, monkeypatch):
        base = solve_p_transcendental(ModelParams(0.5, 1 / 3)).p
        monkeypatch.setattr(analytic, "wright", functools.partial(wright, max_terms=2000))
        assert abs(solve_p_transcendental(ModelParams(0.5, 1 / 3)).p - base) < 1e-10

    def test_table_ordering(self):
        table = np.array([[solve_p_transcendental(ModelParams(a, lam)).p for a in ALPHAS] for lam in LAMBDAS])
        assert np.all(np.diff(table, axis=1) > 0)
        assert np.all(np.diff(table, axis=0) > 0)

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            solve_p_transcendental(ModelParams(0.5, 0.5), tol=0.0)


class TestExactSolution:
    def test_boundaries(self):
        p, a = 0.598238, 0.5
        for tau in (0.1, 1.0, 3.0):
            assert exact_concentration(0.0, tau, p, a) == 0.0
            s = exact_front(tau, p, a)
            assert_allclose(exact_concentration(s, tau, p, a), 1.0, rtol=1e-14)

    def test_regression_half_front(self):
        p = 0.598238
        assert_allclose(exact_concentration(p / 2, 1.0, p, 0.5), CONC_HALF_FRONT, rtol=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            exact_concentration(2.0, 1.0, 0.5, 0.5)
        with pytest.raises(ValueError):
            exact_concentration(0.1, 0.0, 0.5, 0.5)

    def test_front(self):
        assert exact_front(0.0, 0.7, 0.5) == 0.0
        assert exact_front(1.0, 0.7, 0.3) == 0.7
        assert_allclose(exact_front(4.0, 0.598238, 0.5), 0.598238 * math.sqrt(2.0), rtol=1e-15)
        assert_allclose(exact_front(4.0, 0.598238, 1.0), 1.196476, rtol=1e-15)

    def test_profile_matches_pointwise(self):
        p, a, tau = 0.9, 0.75, 2.3
        u = np.linspace(0, 1, 11)
        pointwise = [exact_concentration(ui * p * tau ** (a / 2), tau, p, a) for ui in u]
        assert_allclose(exact_profile(u, p, a), pointwise, rtol=1e-13, atol=1e-15)

    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_monotone_and_bounded(self, alpha, lam):
        p = solve_p_transcendental(ModelParams(alpha, lam)).p
        tau = 0.8
        xs = np.linspace(0, exact_front(tau, p, alpha), 100)
        c = np.array([exact_concentration(x, tau, p, alpha) for x in xs])
        assert np.all(np.diff(c) >= 0)
        assert c.min() >= 0 and c.max() <= 1 + 1e-14

    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_classical_erf_ratio(self, lam):
        p = solve_p_transcendental(ModelParams(1.0, lam)).p
        tau = 1.7
        for x in np.linspace(0, p * math.sqrt(tau), 9):
            classical = math.erf(x / (2 * math.sqrt(tau))) / math.erf(p / 2)
            assert abs(exact_concentration(x, tau, p, 1.0) - classical) < 1e-8
