import math
from fractions import Fraction

import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from su11.specfun import (
    bessel_i,
    binomial,
    gamma_ratio,
    hyp2f1_terminating,
    laguerre,
    ln_gamma,
    pochhammer,
)


class TestLnGamma:
    def test_spot_values(self):
        assert ln_gamma(1.0) == 0.0
        assert ln_gamma(2.0) == 0.0
        assert ln_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-14)
        assert ln_gamma(10.0) == pytest.approx(12.801827480081469, rel=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ln_gamma(0.0)
        with pytest.raises(ValueError):
            ln_gamma(-3.2)


class TestPochhammer:
    def test_spot_values(self):
        assert pochhammer(7.3, 0) == 1.0
        assert pochhammer(-2.0, 3) == 0.0
        assert pochhammer(0.5, 3) == pytest.approx(1.875, rel=1e-15)

    @given(
        x=st.floats(-5.0, 5.0, allow_nan=False),
        n=st.integers(0, 30),
    )
    @settings(max_examples=80, deadline=None)
    def test_recurrence(self, x, n):
        left = pochhammer(x, n + 1)
        right = pochhammer(x, n) * (x + n)
        assert left == pytest.approx(right, rel=1e-12, abs=1e-280)


class TestGammaRatio:
    def test_spot_values(self):
        assert gamma_ratio(0, 3.7) == 1.0
        assert gamma_ratio(3, 1.0) == pytest.approx(6.0, rel=1e-14)
        assert gamma_ratio(2, 0.5) == pytest.approx(0.75, rel=1e-14)

    def test_both_routes_cross_cutoff(self):
        # n=100 goes through the lgamma route, the product should agree
        direct = gamma_ratio(100, 1.0)
        assert direct == pytest.approx(math.exp(ln_gamma(101.0)), rel=1e-10)

    @given(
        twok=st.floats(0.05, 10.0, allow_nan=False),
        n=st.integers(0, 80),
    )
    @settings(max_examples=80, deadline=None)
    def test_matches_rising_product(self, twok, n):
        assert gamma_ratio(n, twok) == pytest.approx(
            pochhammer(twok, n), rel=1e-12
        )


class TestBinomial:
    def test_spot_values(self):
        assert binomial(5, 0) == 1
        assert binomial(4, 2) == 6
        assert binomial(40, 20) == 137846528820

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            binomial(3, 5)
        with pytest.raises(ValueError):
            binomial(-1, 0)
        with pytest.raises(ValueError):
            binomial(4, -2)


class TestTerminatingHyp2f1:
    def test_degenerate_cases(self):
        assert hyp2f1_terminating(0, 9, 1.3, -4.2) == 1.0
        assert hyp2f1_terminating(4, 0, 0.7, 2.0) == 1.0
        assert hyp2f1_terminating(1, 1, 1.0, 0.35) == pytest.approx(1.35, rel=1e-15)

    def test_known_value(self):
        assert hyp2f1_terminating(2, 1, 0.5, -3.0) == pytest.approx(-11.0, rel=1e-14)

    def test_rejects_nonpositive_c(self):
        with pytest.raises(ValueError):
            hyp2f1_terminating(2, 2, 0.0, 1.0)

    @given(
        m=st.integers(0, 10),
        n=st.integers(0, 10),
        c=st.floats(0.3, 6.0, allow_nan=False),
        z=st.floats(-50.0, 0.9, allow_nan=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_symmetric_in_upper_indices(self, m, n, c, z):
        assert hyp2f1_terminating(m, n, c, z) == hyp2f1_terminating(n, m, c, z)

    @given(
        m=st.integers(0, 12),
        n=st.integers(0, 12),
        c=st.floats(0.3, 6.0, allow_nan=False),
        z=st.floats(-50.0, 0.9, allow_nan=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_against_scipy(self, m, n, c, z):
        ours = hyp2f1_terminating(m, n, c, z)
        ref = sp.hyp2f1(-m, -n, c, z)
        assert ours == pytest.approx(ref, rel=1e-8, abs=1e-8)


class TestBesselI:
    def test_zero_argument(self):
        assert bessel_i(0.0, 0.0) == 1.0
        assert bessel_i(1.0, 0.0) == 0.0
        assert bessel_i(2.5, 0.0) == 0.0
        with pytest.raises(ValueError):
            bessel_i(-0.5, 0.0)

    def test_against_scipy_spot(self):
        assert bessel_i(1.0, 2.0) == pytest.approx(sp.iv(1.0, 2.0), rel=1e-12)
        # the order -1/2 case backs the smallest Bargmann index
        assert bessel_i(-0.5, 2.0) == pytest.approx(sp.iv(-0.5, 2.0), rel=1e-12)

    @given(
        nu=st.floats(-0.9, 5.0, allow_nan=False),
        x=st.floats(0.01, 30.0, allow_nan=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_against_scipy(self, nu, x):
        assert bessel_i(nu, x) == pytest.approx(sp.iv(nu, x), rel=1e-10)

    @given(
        nu=st.floats(0.25, 5.0, allow_nan=False),
        x=st.floats(0.1, 20.0, allow_nan=False),
    )
    @settings(max_examples=80, deadline=None)
    def test_recurrence(self, nu, x):
        lhs = bessel_i(nu - 1.0, x) - bessel_i(nu + 1.0, x)
        rhs = (2.0 * nu / x) * bessel_i(nu, x)
        assert lhs == pytest.approx(rhs, rel=1e-10)


class TestLaguerre:
    def test_degenerate_cases(self):
        assert laguerre(0, 4.2) == 1.0
        assert laguerre(5, 0.0) == 1.0

    def test_quadratic(self):
        x = 0.37
        assert laguerre(2, x) == pytest.approx(1.0 - 2.0 * x + x * x / 2.0, rel=1e-14)

    def test_against_scipy(self):
        for order in (1, 3, 7, 15):
            for x in (-2.0, 0.5, 3.3, 9.0):
                assert laguerre(order, x) == pytest.approx(
                    sp.eval_laguerre(order, x), rel=1e-10, abs=1e-12
                )

    def test_complex_argument(self):
        z = 0.4 + 0.9j
        expected = 1.0 - 2.0 * z + z * z / 2.0
        assert laguerre(2, z) == pytest.approx(expected, rel=1e-13)

    @given(
        order=st.integers(1, 40),
        x=st.floats(-10.0, 10.0, allow_nan=False),
    )
    @settings(max_examples=80, deadline=None)
    def test_matches_exact_rational_sum(self, order, x):
        # every float is a rational, so the explicit sum is computable
        # exactly; this oracle shares no arithmetic with the recurrence
        xf = Fraction(x)
        exact = sum(
            (-xf) ** q * math.comb(order, q) / Fraction(math.factorial(q))
            for q in range(order + 1)
        )
        assert laguerre(order, x) == pytest.approx(float(exact), rel=1e-12, abs=1e-12)
