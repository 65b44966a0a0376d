import json
import math
from pathlib import Path

import pytest

from zml.cli import (
    EXIT_BAD_RANGE,
    EXIT_MISSING_CACHE,
    EXIT_OK,
    main,
)
from zml.zeros import save_zeros


@pytest.fixture(scope="module")
def cache_2000(tmp_path_factory, zeros_2000):
    path = tmp_path_factory.mktemp("cache") / "z2000.zml"
    save_zeros(zeros_2000, path)
    return path


def _run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


class TestZerosCommand:
    def test_small_cache(self, tmp_path):
        cache = tmp_path / "z.zml"
        rc = _run(tmp_path, "zeros", "--t-hi", "100", "--cache", str(cache))
        assert rc == EXIT_OK
        summary = json.loads((tmp_path / "zeros_summary.json").read_text())
        counts = {c["name"]: c["observed"] for c in summary["checks"]}
        assert counts["zeros.count"] == 29
        from zml.zeros import load_zeros

        assert len(load_zeros(cache)) == 29

    def test_csv_export(self, tmp_path):
        cache = tmp_path / "z.zml"
        rc = _run(tmp_path, "zeros", "--t-hi", "50", "--cache", str(cache),
                  "--format", "csv")
        assert rc == EXIT_OK
        lines = (tmp_path / "zeros.csv").read_text().splitlines()
        assert lines[0] == "index,gamma,abs_zeta_prime,gamma_error"
        assert len(lines) == 11


class TestMomentCommands:
    def test_jk_k0_unit(self, tmp_path, cache_2000):
        rc = _run(tmp_path, "jk", "--cache", str(cache_2000), "--k", "0")
        assert rc == EXIT_OK
        summary = json.loads((tmp_path / "jk_summary.json").read_text())
        byname = {c["name"]: c for c in summary["checks"]}
        assert byname["jk.finite_k0.0"]["observed"] == 1.0

    def test_shifted_sweep(self, tmp_path, cache_2000):
        rc = _run(tmp_path, "shifted", "--cache", str(cache_2000),
                  "--k", "1", "--t-hi", "1000")
        assert rc == EXIT_OK
        data = json.loads((tmp_path / "shifted_sweep.json").read_text())
        assert len(data["rows"]) == 8
        assert all(math.isfinite(r["value"]) for r in data["rows"])

    def test_deriv_report(self, tmp_path, cache_2000):
        rc = _run(tmp_path, "deriv", "--cache", str(cache_2000), "--k", "1",
                  "--t-hi", "1000")
        assert rc == EXIT_OK
        data = json.loads((tmp_path / "deriv_report.json").read_text())
        assert data["rows"][0]["holds"]

    def test_clt(self, tmp_path, cache_2000):
        rc = _run(tmp_path, "clt", "--cache", str(cache_2000))
        assert rc == EXIT_OK
        stats = json.loads((tmp_path / "clt_stats.json").read_text())
        assert 0 < stats["ks_distance"] < 1
        hist = (tmp_path / "clt_histogram.json").read_text()
        assert len(json.loads(hist)["rows"]) == 50


class TestTableCommands:
    def test_landau_csv(self, tmp_path, cache_2000):
        rc = _run(tmp_path, "landau", "--cache", str(cache_2000),
                  "--t-lo", "1000", "--t-hi", "2000", "--format", "csv")
        assert rc == EXIT_OK
        lines = (tmp_path / "landau.csv").read_text().splitlines()
        assert lines[0].startswith("# zml ")
        assert lines[1].split(",")[:4] == ["a", "b", "T", "empirical_re"]

    def test_classify(self, tmp_path, cache_2000):
        rc = _run(tmp_path, "classify", "--cache", str(cache_2000),
                  "--k", "0.5", "--threshold-c", "2", "--t-hi", "1000",
                  "--format", "csv")
        assert rc == EXIT_OK
        lines = (tmp_path / "classify.csv").read_text().splitlines()
        assert lines[1] == ("gamma,label,witness_i,witness_ell,"
                            "G_max_over_thresholds")
        assert len(lines) == 651

    def test_randmodel(self, tmp_path):
        rc = _run(tmp_path, "randmodel", "--k", "1", "--n-samples", "5000",
                  "--seed", "3")
        assert rc == EXIT_OK
        data = json.loads((tmp_path / "randmodel.json").read_text())
        assert data["rows"][0]["n_samples"] == 5000

    def test_ck(self, tmp_path):
        rc = _run(tmp_path, "ck", "--k", "1", "--prime-cutoff", "2000")
        assert rc == EXIT_OK
        data = json.loads((tmp_path / "ck.json").read_text())
        assert data["rows"][0]["value"] == pytest.approx(1 / 12, abs=1e-9)


class TestConfigHandling:
    def test_config_file_and_flag_precedence(self, tmp_path):
        cfgfile = tmp_path / "cfg.json"
        cfgfile.write_text(json.dumps({"t_hi": 40.0, "format": "csv"}))
        cache = tmp_path / "z.zml"
        rc = _run(tmp_path, "zeros", "--config", str(cfgfile),
                  "--t-hi", "50", "--cache", str(cache))
        assert rc == EXIT_OK
        summary = json.loads((tmp_path / "zeros_summary.json").read_text())
        assert summary["config"]["t_hi"] == 50.0      # flag wins
        assert summary["config"]["format"] == "csv"   # file beats default

    def test_env_thread_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ZML_THREADS", "2")
        cache = tmp_path / "z.zml"
        rc = _run(tmp_path, "zeros", "--t-hi", "50", "--cache", str(cache))
        assert rc == EXIT_OK
        summary = json.loads((tmp_path / "zeros_summary.json").read_text())
        assert summary["config"]["threads"] == 2

    def test_determinism_modulo_timing(self, tmp_path, cache_2000):
        a_dir = tmp_path / "a"
        b_dir = tmp_path / "b"
        for d in (a_dir, b_dir):
            rc = main(["jk", "--cache", str(cache_2000), "--k", "1",
                       "--out", str(d)])
            assert rc == EXIT_OK
        a = json.loads((a_dir / "jk_summary.json").read_text())
        b = json.loads((b_dir / "jk_summary.json").read_text())
        a.pop("timing_ms")
        b.pop("timing_ms")
        a["config"].pop("out_path")
        b["config"].pop("out_path")
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
        rows_a = (a_dir / "jk_moments.json").read_text()
        rows_b = (b_dir / "jk_moments.json").read_text()
        assert json.loads(rows_a)["rows"] == json.loads(rows_b)["rows"]


class TestExitCodes:
    def test_unknown_command_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 2

    def test_missing_cache(self, tmp_path):
        rc = _run(tmp_path, "jk", "--cache", str(tmp_path / "nope.zml"),
                  "--k", "1")
        assert rc == EXIT_MISSING_CACHE

    def test_invalid_range(self, tmp_path):
        rc = _run(tmp_path, "zeros", "--t-lo", "100", "--t-hi", "50")
        assert rc == EXIT_BAD_RANGE

    def test_corrupt_cache(self, tmp_path, cache_2000):
        bad = tmp_path / "bad.zml"
        blob = bytearray(Path(cache_2000).read_bytes())
        blob[50] ^= 0xFF
        bad.write_bytes(bytes(blob))
        rc = _run(tmp_path, "jk", "--cache", str(bad), "--k", "1")
        assert rc == EXIT_MISSING_CACHE


class TestVerify:
    def test_verify_on_1e4_cache(self, tmp_path, tmp_path_factory, zeros_1e4):
        cache = tmp_path_factory.mktemp("vcache") / "z1e4.zml"
        save_zeros(zeros_1e4, cache)
        rc = _run(tmp_path, "verify", "--cache", str(cache))
        assert rc == EXIT_OK
        summary = json.loads((tmp_path / "verify_summary.json").read_text())
        names = [c["name"] for c in summary["checks"]]
        # every criterion family is represented
        for stem in ("zeros.", "zprime.", "ck.", "landau.", "randmodel.",
                     "majorant.", "moments.", "trend.", "corollary.",
                     "shifted."):
            assert any(n.startswith(stem) for n in names), stem
        assert all(c["status"] in ("pass", "skip")
                   for c in summary["checks"])
        # trend checks skip without a 1e5 cache
        assert any(c["status"] == "skip" and c["name"].startswith("trend")
                   for c in summary["checks"])
