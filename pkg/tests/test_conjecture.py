import math

import numpy as np
import pytest

from zml.conjecture import (
    barnes_g,
    c_k,
    euler_factor,
    gamma_ratio_squared,
    predicted_jk,
)
from zml.primes import CapacityError


class TestBarnesG:
    def test_normalization(self):
        assert barnes_g(1.0) == pytest.approx(1.0, rel=1e-12)
        assert barnes_g(2.0) == pytest.approx(1.0, rel=1e-12)

    def test_recursion_value(self):
        # G(4) = Gamma(3) Gamma(2) G(2) = 2
        assert barnes_g(4.0) == pytest.approx(2.0, rel=1e-12)

    def test_against_reference(self, ref):
        for key, val in ref["barnes_g"].items():
            assert barnes_g(float(key)) == pytest.approx(val, rel=1e-10), key

    def test_recursion_identity_random(self):
        rng = np.random.default_rng(29)
        for z in rng.uniform(1.0, 5.0, size=100):
            lhs = barnes_g(z + 1.0) / barnes_g(z)
            assert lhs == pytest.approx(math.gamma(z), rel=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            barnes_g(0.0)


class TestEulerFactor:
    def test_k1_telescopes(self, table_1e4):
        for p in table_1e4.primes_in(1, 100):
            assert abs(euler_factor(1.0, int(p)) - 1.0) <= 1e-14

    def test_against_reference(self, ref):
        for key, val in ref["euler_factor"].items():
            k, p = key.split("_")
            assert euler_factor(float(k), int(p)) == pytest.approx(val, rel=1e-12)

    def test_k2_closed_form(self):
        # the k=2 series telescopes against (1-1/p)^4 to exactly 1 - 1/p^2
        for p in (2, 3, 5, 101):
            assert euler_factor(2.0, p) == pytest.approx(1 - p**-2, rel=1e-13)

    def test_series_terms_match_gamma_ratio(self):
        # recurrence inside euler_factor vs direct log-gamma evaluation
        for k in (0.5, 1.7, 3.2):
            r = 1.0
            for m in range(1, 8):
                r *= (m - 1 + k) / m
                assert r * r == pytest.approx(gamma_ratio_squared(k, m), rel=1e-12)

    def test_near_one_decay(self, table_1e4):
        """log euler_factor * p^2 stays within a k-dependent band: the tail
        model's justification."""
        for k in (0.5, 2.0):
            vals = [
                math.log(euler_factor(k, int(p))) * p**2
                for p in table_1e4.primes_in(1000, 10000)
            ]
            vals = np.array(vals)
            assert np.all(np.sign(vals) == np.sign(vals[0]))
            assert vals.max() - vals.min() < 0.2 * np.abs(vals).max()


class TestCk:
    def test_c1_is_one_twelfth(self, table_1e6):
        const = c_k(1.0, 10_000, table_1e6)
        assert const.value == pytest.approx(1.0 / 12.0, abs=1e-10)
        assert const.barnes_ratio == pytest.approx(1.0 / 12.0, rel=1e-10)

    @staticmethod
    def _extrapolated_product(ref, k: float) -> float:
        """Limit of the brute-force Euler product from its three checkpoints
        (geometric tail model, measured ratio)."""
        cp = ref["ck"][str(k)]["euler_product_at_cutoff"]
        v1, v2, v3 = cp["100000"], cp["200000"], cp["400000"]
        d1, d2 = v2 - v1, v3 - v2
        if d1 == 0.0 or d2 == 0.0:
            return v3
        r = d2 / d1
        return v3 + d2 * r / (1.0 - r)

    def test_against_brute_force_products(self, ref, table_1e6):
        for k in (0.5, 1.0, 2.0):
            got = c_k(k, 20_000, table_1e6)
            ref_ck = ref["ck"][str(k)]
            assert got.barnes_ratio == pytest.approx(ref_ck["barnes_ratio"],
                                                     rel=1e-9)
            limit = ref_ck["barnes_ratio"] * self._extrapolated_product(ref, k)
            tol = max(2.0 * got.value * got.tail_bound, 5e-12)
            assert abs(got.value - limit) <= tol

    def test_euler_product_at_cutoffs(self, ref, table_1e6):
        # tail-corrected product from a modest cutoff should land within
        # tail_bound of the extrapolated brute-force limit
        for k in (0.5, 2.0):
            limit = self._extrapolated_product(ref, k)
            got = c_k(k, 20_000, table_1e6)
            assert abs(got.euler_product - limit) <= 2 * got.tail_bound

    def test_cutoff_doubling_stability(self, table_1e6):
        for k in (0.5, 1.0, 2.0):
            a = c_k(k, 10_000, table_1e6)
            b = c_k(k, 20_000, table_1e6)
            assert abs(math.log(b.value / a.value)) <= a.tail_bound
            assert b.tail_bound <= a.tail_bound

    def test_k2_analytic_anchor(self, table_1e6):
        # product over all primes of (1 - p^-2) is 1/zeta(2) = 6/pi^2
        got = c_k(2.0, 100_000, table_1e6)
        expect = (4.0 / 34560.0) * (6.0 / math.pi**2)
        assert got.value == pytest.approx(expect, rel=1e-8)

    def test_capacity_guard(self, table_1e4):
        with pytest.raises(CapacityError):
            c_k(1.0, 100_000, table_1e4)
        with pytest.raises(ValueError):
            c_k(1.0, 50, table_1e4)


class TestPredictedJk:
    def test_exponent_scaling(self, table_1e4):
        const = c_k(1.0, 1000, table_1e4)
        T = math.exp(12.0)
        assert predicted_jk(1.0, T, const) == pytest.approx(
            (1.0 / 12.0) * 12.0**3, rel=1e-9
        )

    def test_k0_convention(self):
        assert predicted_jk(0.0, 1000.0, None) == 1.0

    def test_exponent_field(self, table_1e4):
        for k in (0.5, 1.0, 2.0):
            const = c_k(k, 1000, table_1e4)
            ratio = predicted_jk(k, math.e**3, const) / const.value
            assert ratio == pytest.approx(3.0 ** (k * (k + 2)), rel=1e-12)
