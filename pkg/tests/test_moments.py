import json
import math

import numpy as np
import pytest

from zml.conjecture import c_k
from zml.moments import (
    EmptyWindowError,
    cauchy_circle_bound,
    cauchy_circle_deriv,
    continuous_moment_ik,
    derivative_moment,
    discrete_moment_jk,
    dyadic_jk,
    hejhal_clt_stats,
    shifted_moment,
)
from zml.zetafun import DomainError, zeta_deriv


class TestDiscreteMoment:
    def test_k0_is_one(self, zeros_2000):
        res = discrete_moment_jk(zeros_2000, 0.0, 0.0, 1000.0)
        assert res.value == 1.0

    def test_single_zero_window(self, ref, zeros_2000):
        g1 = zeros_2000.gammas[0]
        res = discrete_moment_jk(zeros_2000, 1.0, g1 - 0.01, g1 + 0.01)
        expect = ref["abs_zeta_prime"][0] ** 2
        assert res.value == pytest.approx(expect, rel=1e-8)

    def test_empty_window(self, zeros_2000):
        with pytest.raises(EmptyWindowError):
            discrete_moment_jk(zeros_2000, 1.0, 0.0, 10.0)

    def test_predicted_with_constant(self, table_1e6, zeros_2000):
        const = c_k(1.0, 10_000, table_1e6)
        res = discrete_moment_jk(zeros_2000, 1.0, 0.0, 2000.0, const)
        expect = (1.0 / 12.0) * math.log(2000.0) ** 3
        assert res.predicted == pytest.approx(expect, rel=1e-9)
        assert res.ratio == pytest.approx(res.value / expect, rel=1e-12)

    def test_power_mean_monotonicity(self, zeros_2000):
        ks = (0.5, 1.0, 2.0)
        vals = [
            discrete_moment_jk(zeros_2000, k, 0.0, 2000.0).value ** (1.0 / k)
            for k in ks
        ]
        assert vals[0] <= vals[1] <= vals[2]

    def test_cauchy_schwarz(self, zeros_2000):
        for k in (0.5, 1.0, 2.0):
            jk = discrete_moment_jk(zeros_2000, k, 0.0, 2000.0).value
            j2k = discrete_moment_jk(zeros_2000, 2 * k, 0.0, 2000.0).value
            assert jk * jk <= j2k * (1 + 1e-12)

    def test_json_roundtrip(self, zeros_2000):
        res = discrete_moment_jk(zeros_2000, 1.0, 0.0, 1000.0)
        d = json.loads(res.to_json())
        assert d["kind"] == "JK"
        assert d["count"] == 649


class TestShiftedMoment:
    def test_alpha_zero_vanishes(self, zeros_2000):
        res = shifted_moment(zeros_2000, 1.0, 0.0, t_hi=1000.0)
        assert res.value <= 1e-12

    def test_real_shift_ratio_envelope(self, zeros_2000):
        alpha = 1.0 / math.log(1000.0)
        res = shifted_moment(zeros_2000, 1.0, alpha, t_hi=1000.0)
        assert 1e-2 < res.ratio < 1e2

    def test_continuity_in_alpha(self, zeros_2000):
        alpha = 1.0 / math.log(1000.0) * 0.99
        a = shifted_moment(zeros_2000, 1.0, alpha, t_hi=1000.0)
        b = shifted_moment(zeros_2000, 1.0, alpha * (1 + 1e-6), t_hi=1000.0)
        assert abs(b.value / a.value - 1.0) < 1e-3

    def test_negative_real_part_direct(self, zeros_2000):
        alpha = -0.5 / math.log(1000.0)
        res = shifted_moment(zeros_2000, 1.0, alpha, t_hi=1000.0)
        assert math.isfinite(res.value) and res.value > 0

    def test_domain_guard(self, zeros_2000):
        with pytest.raises(DomainError):
            shifted_moment(zeros_2000, 1.0, 0.5, t_hi=1000.0)


class TestDerivativeMoment:
    def test_nu1_matches_jk_exactly(self, zeros_2000):
        jk = discrete_moment_jk(zeros_2000, 1.0, 0.0, 2000.0)
        dm = derivative_moment(zeros_2000, 1.0, 1, t_lo=0.0, t_hi=2000.0)
        assert dm.value == jk.value

    def test_circle_reconstruction_first_zero(self, zeros_2000):
        g1 = float(zeros_2000.gammas[0])
        r = 1.0 / math.log(1000.0)
        rec = cauchy_circle_deriv(g1, 1, r, nodes=64)
        direct = zeta_deriv(complex(0.5, g1), 1)
        assert abs(rec - direct) / abs(direct) < 1e-6

    def test_second_derivative_values(self, zeros_2000):
        res = derivative_moment(zeros_2000, 1.0, 2, t_lo=0.0, t_hi=1000.0)
        assert math.isfinite(res.value) and res.value > 0
        assert res.predicted == math.log(1000.0) ** (1 * (1 + 4))

    def test_bound_chain(self, zeros_2000):
        rep = cauchy_circle_bound(zeros_2000, 1.0, 2, t_lo=0.0, t_hi=1000.0)
        assert math.isfinite(rep["direct"])
        assert math.isfinite(rep["bound"])
        assert rep["holds"]

    def test_order_validation(self, zeros_2000):
        with pytest.raises(ValueError):
            derivative_moment(zeros_2000, 1.0, 0)
        with pytest.raises(ValueError):
            derivative_moment(zeros_2000, 0.25, 1)


class TestContinuousMoment:
    def test_k0_is_one(self):
        res = continuous_moment_ik(0.0, 200.0)
        assert res.value == pytest.approx(1.0, rel=1e-9)

    def test_second_moment_asymptotic(self):
        res = continuous_moment_ik(1.0, 10_000.0)
        expect = math.log(10_000.0) + 2 * 0.5772156649015329 - 1 \
            - math.log(2 * math.pi)
        assert abs(res.value / expect - 1.0) < 0.10

    def test_step_guard(self):
        with pytest.raises(ValueError):
            continuous_moment_ik(1.0, 100.0, step=0.1)

    def test_moment_vs_integral_heuristic(self, zeros_1e4):
        # J_1 tracks (log T)^2 I_1 within an order of magnitude
        j1 = discrete_moment_jk(zeros_1e4, 1.0, 0.0, 10_000.0).value
        i1 = continuous_moment_ik(1.0, 10_000.0).value
        ratio = j1 / (math.log(10_000.0) ** 2 * i1)
        # the heuristic carries no constant; the asymptotic ratio is the
        # moment constant 1/12, and the oracle pre-run at T=1e4 gives ~0.07
        assert 0.02 < ratio < 5.0


class TestHejhalStats:
    def test_requires_enough_zeros(self, zeros_2000):
        with pytest.raises(ValueError):
            hejhal_clt_stats(zeros_2000, 0.0, 100.0)

    def test_empirical_standardization_centers(self, zeros_2000):
        stats = hejhal_clt_stats(zeros_2000, 0.0, 2000.0)
        # empirical KS is computed from a zero-mean, unit-variance sample
        assert stats["ks_distance_empirical"] < 0.5
        assert stats["count"] == 1517
        assert stats["excluded"] == 0

    def test_histogram_shape(self, zeros_2000):
        stats = hejhal_clt_stats(zeros_2000, 0.0, 2000.0)
        assert len(stats["histogram"]) == 50
        assert len(stats["bin_edges"]) == 51
        assert stats["bin_edges"][0] == -5.0
        assert stats["bin_edges"][-1] == 5.0
        assert sum(stats["histogram"]) <= stats["count"]


class TestDyadic:
    def test_recombination_matches_direct(self, zeros_1e4):
        for k in (0.5, 1.0, 2.0):
            dec = dyadic_jk(k, 10_000.0, zeros_1e4)
            direct = discrete_moment_jk(zeros_1e4, k, 0.0, 10_000.0)
            assert dec.moment.value == pytest.approx(direct.value, rel=1e-12)
            assert dec.moment.count_or_length == direct.count_or_length

    def test_window_counts_track_density(self, zeros_1e4):
        dec = dyadic_jk(1.0, 10_000.0, zeros_1e4)
        n_total = sum(w.count for w in dec.windows)
        for i, w in enumerate(dec.windows[:5], start=1):
            frac = w.count / n_total
            assert 0.3 * 2.0**-i < frac < 3.0 * 2.0**-i

    def test_empty_windows_reported(self, zeros_2000):
        dec = dyadic_jk(1.0, 2000.0, zeros_2000)
        assert any(w.count == 0 for w in dec.windows)  # deepest window(s)
        assert all(w.power_sum == 0.0 for w in dec.windows if w.count == 0)
