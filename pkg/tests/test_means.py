import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meandiv import means
from meandiv.errors import AlphaOutOfRange, GridTooSmall, NonPositiveInput

positive = st.floats(min_value=1e-2, max_value=100.0)
unit = st.floats(min_value=0.0, max_value=1.0)

GENERATORS = [means.IDENTITY, means.LOG, means.RECIP,
              means.power_generator(2.0), means.power_generator(-0.5)]

COMPARABLE_PAIRS = [
    (means.IDENTITY, means.LOG),
    (means.IDENTITY, means.RECIP),
    (means.LOG, means.RECIP),
    (means.power_generator(2.0), means.power_generator(1.0)),
]


class TestQamWeighted:
    def test_affine_combination(self):
        assert means.qam_weighted(means.IDENTITY, 0.25, 1, 3) == pytest.approx(1.5)

    def test_geometric_midpoint(self):
        assert means.qam_weighted(means.LOG, 0.5, 4, 1) == pytest.approx(2.0)

    def test_weighted_geometric(self):
        # 2^0.7 * 5^0.3, frozen from 30-digit evaluation
        got = means.qam_weighted(means.LOG, 0.3, 2, 5)
        assert got == pytest.approx(2.63276440866847482700694044039, rel=1e-14)

    def test_endpoints(self):
        for f in GENERATORS:
            assert means.qam_weighted(f, 0.0, 2.0, 7.0) == pytest.approx(2.0, rel=1e-12)
            assert means.qam_weighted(f, 1.0, 2.0, 7.0) == pytest.approx(7.0, rel=1e-12)

    def test_rejects_bad_input(self):
        with pytest.raises(NonPositiveInput):
            means.qam_weighted(means.LOG, 0.5, -1.0, 2.0)
        with pytest.raises(AlphaOutOfRange):
            means.qam_weighted(means.LOG, 1.5, 1.0, 2.0)

    @given(x=positive, y=positive, alpha=unit)
    @settings(max_examples=300)
    def test_innerness_and_reflexivity(self, x, y, alpha):
        for f in GENERATORS:
            m = means.qam_weighted(f, alpha, x, y)
            assert min(x, y) * (1 - 1e-12) <= m <= max(x, y) * (1 + 1e-12)
            assert means.qam_weighted(f, alpha, x, x) == pytest.approx(x, rel=1e-12)

    @given(x=positive, y=positive, alpha=unit)
    @settings(max_examples=200)
    def test_affine_generator_invariance(self, x, y, alpha):
        for f in (means.LOG, means.RECIP):
            g = f.affine(2.5, -3.0)
            assert means.qam_weighted(g, alpha, x, y) == pytest.approx(
                means.qam_weighted(f, alpha, x, y), rel=1e-10
            )

    @given(x=positive, y=positive, alpha=unit)
    @settings(max_examples=200)
    def test_dominance_for_comparable_pairs(self, x, y, alpha):
        for f, g in COMPARABLE_PAIRS:
            assert means.qam_weighted(f, alpha, x, y) >= means.qam_weighted(g, alpha, x, y) - 1e-10


class TestPowerMean:
    def test_arithmetic(self):
        assert means.power_mean(1, 0.5, 2, 4) == pytest.approx(3.0)

    def test_geometric_limit(self):
        assert means.power_mean(0, 0.5, 4, 1) == pytest.approx(2.0)

    def test_harmonic(self):
        assert means.power_mean(-1, 0.5, 2, 6) == pytest.approx(3.0, rel=1e-14)

    def test_continuity_at_zero(self):
        thr = means.POWER_R_GEOMETRIC_THRESHOLD
        for x, y, a in [(2.0, 6.0, 0.3), (0.1, 30.0, 0.8)]:
            g = means.power_mean(0.0, a, x, y)
            for r in (2 * thr, -2 * thr):
                assert abs(means.power_mean(r, a, x, y) - g) <= 1e-6

    @given(x=positive, y=positive, alpha=unit,
           r=st.floats(min_value=-4, max_value=4), s=st.floats(min_value=-4, max_value=4))
    @settings(max_examples=300)
    def test_monotone_in_exponent(self, x, y, alpha, r, s):
        from hypothesis import assume

        # tiny nonzero exponents amplify rounding by 1/r; the continuity
        # test above covers that regime separately
        assume(r == 0.0 or abs(r) > 1e-6)
        assume(s == 0.0 or abs(s) > 1e-6)
        r, s = max(r, s), min(r, s)
        assert means.power_mean(r, alpha, x, y) >= means.power_mean(s, alpha, x, y) * (1 - 1e-12)

    def test_matches_qam_of_power_generator(self):
        for r in (2.0, 0.5, -1.5):
            f = means.power_generator(r)
            assert means.power_mean(r, 0.3, 2.0, 5.0) == pytest.approx(
                means.qam_weighted(f, 0.3, 2.0, 5.0), rel=1e-12
            )


class TestETerms:
    def test_arithmetic_row(self):
        assert means.e_term(means.IDENTITY, 2, 3) == pytest.approx(1.0)

    def test_geometric_row(self):
        assert means.e_term(means.LOG, 1, math.e) == pytest.approx(1.0, rel=1e-14)

    def test_quadratic_row(self):
        assert means.e_term(means.power_generator(2.0), 1, 3) == pytest.approx(4.0)

    def test_power_table_rows(self):
        # row H: p - p^2/q
        p, q = 2.0, 5.0
        assert means.e_term_power(-1, p, q) == pytest.approx(p - p * p / q, rel=1e-14)
        assert means.e_term_power(1, 5, 5) == 0.0
        assert means.e_term_power(0, 1, 2) == pytest.approx(0.693147180559945309, rel=1e-14)

    @given(p=positive, q=positive, r=st.floats(min_value=-3, max_value=3))
    @settings(max_examples=300)
    def test_matches_generator_form(self, p, q, r):
        if abs(r) < 1e-3:
            return
        f = means.power_generator(r)
        # rounding noise in either path is ~eps*p when q/p is within a few ulp of 1
        assert means.e_term_power(r, p, q) == pytest.approx(
            float(means.e_term(f, p, q)), rel=1e-12, abs=1e-15 * max(p, q)
        )


class TestComparability:
    def test_identity_log_comparable(self):
        assert means.check_strict_comparability(means.IDENTITY, means.LOG).comparable

    def test_log_identity_not_comparable_with_witness(self):
        res = means.check_strict_comparability(means.LOG, means.IDENTITY)
        assert not res.comparable
        (xa, ha), (xb, hb), (xc, hc) = res.witness
        assert xa < xb < xc
        # h(b) lies on or above the chord: that is the violation
        chord = ((xc - xb) * ha + (xb - xa) * hc) / (xc - xa)
        assert hb >= chord - 1e-12 * abs(hb)

    def test_power_pairs(self):
        grid = np.geomspace(0.5, 8, 64)
        assert means.check_strict_comparability(
            means.power_generator(2.0), means.power_generator(1.0), grid
        ).comparable
        assert not means.check_strict_comparability(
            means.power_generator(1.0), means.power_generator(2.0), grid
        ).comparable

    def test_grid_too_small(self):
        with pytest.raises(GridTooSmall):
            means.check_strict_comparability(means.IDENTITY, means.LOG, [1.0, 2.0])


class TestTaylorApprox:
    def test_zeroth_order(self):
        assert means.taylor_qam_approx(means.LOG, 0.0, 3.0, 7.0) == 3.0

    def test_exact_for_identity(self):
        for a in (0.05, 0.3, 0.9):
            assert means.taylor_qam_approx(means.IDENTITY, a, 2.0, 5.0) == pytest.approx(
                means.qam_weighted(means.IDENTITY, a, 2.0, 5.0), rel=1e-14
            )

    def test_error_is_higher_order(self):
        # |exact - approx| / alpha must vanish as alpha -> 0
        p, q = 1.0, 2.0
        ratios = []
        for a in (1e-2, 1e-3, 1e-4):
            exact = means.qam_weighted(means.LOG, a, p, q)
            approx = means.taylor_qam_approx(means.LOG, a, p, q)
            ratios.append(abs(exact - approx) / a)
        assert ratios[0] > ratios[1] > ratios[2]
        assert ratios[2] < 1e-3


class TestRegistryAndSpecs:
    def test_registry_ids(self):
        assert means.get_generator("identity") is means.IDENTITY
        assert means.get_generator("log") is means.LOG
        assert means.get_generator("recip") is means.RECIP
        assert means.get_generator("pow:2").name == "pow:2"
        with pytest.raises(KeyError):
            means.get_generator("nope")

    def test_recip_is_increasing_with_positive_derivative(self):
        u = np.geomspace(1e-3, 1e3, 50)
        vals = means.RECIP.eval(u)
        assert np.all(np.diff(vals) > 0)
        assert np.all(means.RECIP.derivative(u) > 0)
        assert np.allclose(means.RECIP.inverse(vals), u, rtol=1e-12)

    def test_generator_roundtrip(self):
        u = np.geomspace(1e-2, 1e2, 40)
        for f in GENERATORS:
            np.testing.assert_allclose(f.inverse(f.eval(u)), u, rtol=1e-12)

    def test_bisection_inverse(self):
        f = means.Generator.from_callables(
            "cubic-plus", lambda u: u**3 + u, lambda u: 3 * u**2 + 1, bracket=(1e-9, 1e3)
        )
        for y in (0.5, 2.0, 30.0):
            u = f.inverse(y)
            assert f.eval(u) == pytest.approx(y, rel=1e-12)

    def test_weighted_mean_spec_symmetry(self):
        for spec in (means.ARITHMETIC, means.GEOMETRIC, means.HARMONIC):
            assert spec.evaluate(0.3, 2.0, 5.0) == pytest.approx(
                spec.evaluate(0.7, 5.0, 2.0), rel=1e-12
            )

    def test_weighted_mean_spec_homogeneous(self):
        spec = means.WeightedMeanSpec.quasi_arithmetic(means.LOG)
        assert spec.homogeneous
        assert spec.evaluate(0.4, 6.0, 15.0) == pytest.approx(
            spec.evaluate(0.4, 2.0, 5.0) * 3.0, rel=1e-12
        )
