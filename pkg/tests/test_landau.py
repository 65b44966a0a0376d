import math

import numpy as np
import pytest

from zml.landau import LandauCheck, landau_sum, landau_survey, mixed_zero_sum
from zml.majorant import beta_schedule_from_log, _range_support
from zml.zeros import CoverageError


class TestLandauSum:
    def test_unit_ratio_counts_zeros(self, ref, zeros_2000):
        chk = landau_sum(1, 1, zeros_2000, 1000.0)
        assert chk.count == ref["landau_sums_1000_2000"]["count_1000_2000"]
        assert chk.empirical == complex(chk.count, 0.0)
        assert chk.main_term == 0.0

    def test_against_oracle_sums(self, ref, zeros_2000):
        for ratio, val in ref["landau_sums_1000_2000"].items():
            if ratio == "count_1000_2000":
                continue
            re, im = val
            chk = landau_sum(int(ratio), 1, zeros_2000, 1000.0)
            assert chk.empirical.real == pytest.approx(re, abs=1e-5)
            assert chk.empirical.imag == pytest.approx(im, abs=1e-5)

    def test_prime_main_term(self, zeros_2000):
        chk = landau_sum(2, 1, zeros_2000, 1000.0)
        expect = -1000.0 * math.log(2.0) / (2 * math.pi * math.sqrt(2.0))
        assert chk.main_term == pytest.approx(expect, rel=1e-13)
        assert chk.deviation <= math.sqrt(2.0) * math.log(1000.0) ** 2

    def test_non_prime_power_has_zero_main(self, zeros_2000):
        chk = landau_sum(6, 1, zeros_2000, 1000.0)
        assert chk.main_term == 0.0
        assert abs(chk.empirical) <= chk.error_envelope

    def test_conjugation_symmetry(self, zeros_2000):
        ab = landau_sum(2, 3, zeros_2000, 1000.0)
        ba = landau_sum(3, 2, zeros_2000, 1000.0)
        assert ab.empirical == ba.empirical.conjugate()
        assert ab.main_term == ba.main_term

    def test_random_prime_power_ratios_within_envelope(self, zeros_2000,
                                                       zeros_1e4):
        prime_powers = [n for n in range(2, 51)
                        if _is_prime_power(n)]
        rng = np.random.default_rng(31)
        picks = rng.choice(prime_powers, size=20)
        for T, zl in ((1000.0, zeros_2000), (2000.0, zeros_1e4)):
            for a in picks:
                chk = landau_sum(int(a), 1, zl, T)
                assert chk.envelope_constant <= 5.0, (a, T)

    def test_random_plain_ratios_within_envelope(self, zeros_2000):
        non_pp = [n for n in range(2, 51) if not _is_prime_power(n)]
        rng = np.random.default_rng(37)
        for a in rng.choice(non_pp, size=20):
            chk = landau_sum(int(a), 1, zeros_2000, 1000.0)
            assert abs(chk.empirical) <= 5.0 * chk.error_envelope

    def test_coverage_error(self, zeros_2000):
        with pytest.raises(CoverageError):
            landau_sum(2, 1, zeros_2000, 1500.0)

    def test_survey_rows(self, zeros_2000):
        rows = landau_survey(zeros_2000, 1000.0, [(2, 1), (3, 2)])
        assert [r.a for r in rows] == [2, 3]
        assert all(isinstance(r, LandauCheck) for r in rows)


def _is_prime_power(n: int) -> bool:
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return False


class TestMixedZeroSum:
    def test_zero_tuple_counts(self, table_1e4, zeros_1e4):
        sched = beta_schedule_from_log(0.5, math.log(2000.0), 2.0)
        res = mixed_zero_sum((0,), 1, sched, zeros_1e4, table_1e4)
        assert res.zero_sum == res.count
        assert res.expectation == 1.0
        assert res.model_bound >= res.count
        assert res.secondary_sign_ok

    def test_single_power_is_negative_up_to_envelope(self, table_1e4,
                                                     zeros_1e4):
        sched = beta_schedule_from_log(0.5, math.log(2000.0), 2.0)
        res = mixed_zero_sum((1,), 1, sched, zeros_1e4, table_1e4)
        ns, w = _range_support(1, 1, sched, table_1e4)
        envelope = 5.0 * math.log(2000.0) ** 2 * float(np.sum(w))
        assert res.zero_sum <= envelope
        assert res.expectation == 0.0

    def test_square_power_bounded_by_model(self, table_1e4, zeros_1e4):
        sched = beta_schedule_from_log(0.5, math.log(2000.0), 2.0)
        res = mixed_zero_sum((2,), 1, sched, zeros_1e4, table_1e4)
        assert res.secondary_sign_ok
        assert res.zero_sum > 0

    def test_hypothesis_constraint(self, table_1e4, zeros_1e4):
        sched = beta_schedule_from_log(0.5, math.log(2000.0), 2.0)
        cap = 2 * math.e**2 * sched.k * sched.threshold(1)
        with pytest.raises(ValueError):
            mixed_zero_sum((int(cap) + 1,), 1, sched, zeros_1e4, table_1e4)
