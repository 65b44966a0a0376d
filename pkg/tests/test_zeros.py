import math

import numpy as np
import pytest

from zml.zetafun import DEFAULT_CONFIG, EvalConfig, hardy_z
from zml.zeros import (
    CoverageError,
    MalformedFileError,
    ZeroList,
    count_zeros_rvm,
    export_zeros_csv,
    find_zeros,
    gram_point,
    load_zeros,
    predicted_count,
    save_zeros,
)


class TestGramPoints:
    def test_reference_values(self, ref):
        for key, val in ref["gram"].items():
            assert gram_point(int(key)) == pytest.approx(val, abs=1e-9)

    def test_defining_equation(self):
        from zml.zetafun import rs_theta

        for n in range(0, 101, 7):
            g = gram_point(n)
            assert rs_theta(g) == pytest.approx(n * math.pi, abs=1e-9)

    def test_monotone(self):
        gs = [gram_point(n) for n in range(-1, 30)]
        assert all(a < b for a, b in zip(gs, gs[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            gram_point(-2)


class TestCountRvm:
    def test_reference_counts(self, ref):
        for T, n in ref["zero_counts"].items():
            assert round(count_zeros_rvm(float(T))) == n

    def test_requires_min_height(self):
        with pytest.raises(ValueError):
            count_zeros_rvm(5.0)

    def test_sharper_than_plain_rvm(self):
        # theta/pi + 1 vs (T/2pi)log(T/2pi e) + 7/8 converge to each other
        def plain(T):
            return T / (2 * math.pi) * math.log(T / (2 * math.pi * math.e)) + 7 / 8

        diffs = [abs(count_zeros_rvm(T) - plain(T)) for T in (100.0, 1e3, 1e4)]
        assert diffs[-1] < 0.01
        assert diffs[0] > diffs[-1]


class TestFindZeros:
    def test_first_window(self, ref, zeros_2000):
        g = zeros_2000.gammas
        assert (g <= 50.0).sum() == 10
        assert g[0] == pytest.approx(14.134725142, abs=1e-9)
        assert (g <= 100.0).sum() == 29

    def test_oracle_table_agreement(self, ref, zeros_2000):
        oracle = np.array(ref["zeros_im"])
        assert len(zeros_2000) == oracle.size
        assert np.max(np.abs(zeros_2000.gammas - oracle)) < 1e-9

    def test_tight_window_single_zero(self, ref):
        g1 = ref["zeros_im"][0]
        zl = find_zeros(g1 - 0.01, g1 + 0.01)
        assert len(zl) == 1
        assert zl.indices[0] == 1

    def test_empty_window(self):
        zl = find_zeros(0.0, 10.0)
        assert len(zl) == 0

    def test_global_ranks(self, ref):
        zl = find_zeros(990.0, 1010.0)
        oracle = np.array(ref["zeros_im"])
        lo = np.searchsorted(oracle, 990.0, side="right")
        hi = np.searchsorted(oracle, 1010.0, side="right")
        assert zl.indices[0] == lo + 1
        assert len(zl) == hi - lo

    def test_count_additive_over_windows(self, zeros_2000):
        a = find_zeros(400.0, 700.0)
        b = find_zeros(700.0, 900.0)
        c = find_zeros(400.0, 900.0)
        assert len(a) + len(b) == len(c)

    def test_residual_and_bracket_signs(self, zeros_2000):
        rng = np.random.default_rng(23)
        pick = rng.choice(len(zeros_2000), size=60, replace=False)
        for i in pick:
            g = float(zeros_2000.gammas[i])
            e = max(float(zeros_2000.gamma_errors[i]), 1e-9)
            assert abs(hardy_z(g)) <= 1e-8
            assert hardy_z(g - e) * hardy_z(g + e) < 0

    def test_mean_gap_matches_local_density(self, zeros_2000):
        idx = zeros_2000.in_window(1000.0, 2000.0)
        g = zeros_2000.gammas[idx]
        gaps = np.diff(g)
        assert np.all(gaps > 0)
        mean_gap = gaps.mean()
        # density formula evaluated mid-window; at the left edge the same
        # expression sits ~7% off, outside the 5% band
        predicted = 2 * math.pi / math.log(1500.0 / (2 * math.pi))
        assert abs(mean_gap / predicted - 1) < 0.05

    def test_zeta_prime_values_against_oracle(self, ref, zeros_2000):
        oracle = np.array(ref["abs_zeta_prime"])
        ours = zeros_2000.abs_zeta_primes[:100]
        assert np.max(np.abs(ours / oracle - 1)) < 1e-8

    def test_validation_rejects_bad_window(self):
        with pytest.raises(ValueError):
            find_zeros(100.0, 50.0)
        with pytest.raises(ValueError):
            find_zeros(0.0, 2.0e6)


class TestPersistence:
    def test_roundtrip(self, tmp_path, zeros_2000):
        path = tmp_path / "z.zml"
        save_zeros(zeros_2000, path)
        back = load_zeros(path, DEFAULT_CONFIG)
        assert back.t_lo == zeros_2000.t_lo
        assert back.t_hi == zeros_2000.t_hi
        assert np.array_equal(back.gammas, zeros_2000.gammas)
        assert np.array_equal(back.indices, zeros_2000.indices)
        assert np.array_equal(back.abs_zeta_primes, zeros_2000.abs_zeta_primes)
        assert np.array_equal(back.gamma_errors, zeros_2000.gamma_errors)
        assert not back.config_mismatch

    def test_truncated_file(self, tmp_path, zeros_2000):
        path = tmp_path / "z.zml"
        save_zeros(zeros_2000, path)
        blob = path.read_bytes()
        path.write_bytes(blob[: len(blob) // 2])
        with pytest.raises(MalformedFileError):
            load_zeros(path)

    def test_corrupted_byte(self, tmp_path, zeros_2000):
        path = tmp_path / "z.zml"
        save_zeros(zeros_2000, path)
        blob = bytearray(path.read_bytes())
        blob[100] ^= 0xFF
        path.write_bytes(bytes(blob))
        with pytest.raises(MalformedFileError):
            load_zeros(path)

    def test_config_mismatch_sets_flag(self, tmp_path, zeros_2000):
        path = tmp_path / "z.zml"
        save_zeros(zeros_2000, path)
        other = EvalConfig(em_terms=11)
        back = load_zeros(path, other)
        assert back.config_mismatch

    def test_csv_export(self, tmp_path, zeros_2000):
        path = tmp_path / "z.csv"
        export_zeros_csv(zeros_2000, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "index,gamma,abs_zeta_prime,gamma_error"
        assert len(lines) == len(zeros_2000) + 1
        first = lines[1].split(",")
        assert int(first[0]) == 1
        assert float(first[1]) == pytest.approx(14.134725142, abs=1e-9)


class TestZeroListApi:
    def test_in_window_coverage_error(self, zeros_2000):
        with pytest.raises(CoverageError):
            zeros_2000.in_window(100.0, 3000.0)

    def test_records_materialization(self, zeros_2000):
        rec = zeros_2000.records[0]
        assert rec.index == 1
        assert not rec.flagged

    def test_predicted_count_simple(self):
        assert predicted_count(0.0, 100.0) == 29
