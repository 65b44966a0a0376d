"""Batch front-end: compute and cache zeros, run every verification suite,
emit CSV/JSON tables.

Subcommands: zeros, jk, shifted, deriv, landau, classify, randmodel, ck,
clt, verify.  Each writes deterministic output files plus a summary JSON
with per-check pass/fail records; identical configuration and cache give
identical outputs apart from the timing field.

Configuration precedence is flags > config file (--config, JSON) >
defaults; the environment variable ZML_THREADS controls the thread count
only.  Exit codes: 0 success, 1 failed verification checks, 2 usage,
3 invalid parameter ranges, 4 missing cache, 5 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__, acceptance
from .conjecture import c_k
from .landau import landau_survey
from .majorant import (
    ClassificationDisabledError,
    THRESHOLD_C_ASYMPTOTIC,
    beta_schedule_from_log,
    classification_census,
)
from .moments import (
    cauchy_circle_bound,
    discrete_moment_jk,
    hejhal_clt_stats,
    shifted_moment,
)
from .primes import CapacityError, sieve_primes
from .random_model import sample_random_model
from .zeros import (
    MalformedFileError,
    MissingZeroError,
    ZeroList,
    export_zeros_csv,
    find_zeros,
    load_zeros,
    save_zeros,
)
from .zetafun import DEFAULT_CONFIG, NumericError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_RANGE = 3
EXIT_MISSING_CACHE = 4
EXIT_NUMERIC = 5


@dataclass
class RunConfig:
    """Resolved configuration of one CLI invocation."""

    command: str = ""
    t_lo: float = 0.0
    t_hi: float = 1000.0
    k_list: tuple = (0.5, 1.0, 2.0)
    threshold_c: float = THRESHOLD_C_ASYMPTOTIC
    prime_cutoff: int = 10_000
    n_samples: int = 100_000
    seed: int = 20260810
    cache_path: str = "zeros.zml"
    out_path: str = "."
    threads: int = 1
    format: str = "json"

    def validate(self):
        if not (0 <= self.t_lo < self.t_hi <= 1.0e6):
            raise ValueError("need 0 <= t_lo < t_hi <= 1e6")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.n_samples < 100:
            raise ValueError("n_samples must be >= 100")
        if self.prime_cutoff < 100:
            raise ValueError("prime_cutoff must be >= 100")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if any(k < 0 for k in self.k_list):
            raise ValueError("k values must be >= 0")


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        for f in fields(RunConfig):
            if f.name in file_cfg:
                setattr(cfg, f.name, file_cfg[f.name])
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            setattr(cfg, f.name, v)
    if "ZML_THREADS" in os.environ:
        cfg.threads = int(os.environ["ZML_THREADS"])
    cfg.command = args.command
    cfg.k_list = tuple(float(k) for k in cfg.k_list)
    cfg.validate()
    return cfg


def _config_echo(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d["k_list"] = list(cfg.k_list)
    d["version"] = __version__
    return d


def _write_summary(cfg: RunConfig, checks: list, t0: float,
                   extra: dict | None = None) -> Path:
    out = Path(cfg.out_path)
    out.mkdir(parents=True, exist_ok=True)
    summary = {
        "command": cfg.command,
        "config": _config_echo(cfg),
        "checks": checks,
        "timing_ms": int((time.perf_counter() - t0) * 1000),
    }
    if extra:
        summary.update(extra)
    path = out / f"{cfg.command}_summary.json"
    path.write_text(json.dumps(summary, sort_keys=True, indent=1))
    return path


def _write_rows(cfg: RunConfig, name: str, rows: list[dict]) -> Path:
    """Rows to CSV or JSON, prefixed with the config echo."""
    out = Path(cfg.out_path)
    out.mkdir(parents=True, exist_ok=True)
    echo = json.dumps(_config_echo(cfg), sort_keys=True)
    if cfg.format == "json":
        path = out / f"{name}.json"
        path.write_text(json.dumps({"config": json.loads(echo), "rows": rows},
                                   sort_keys=True, indent=1))
    else:
        path = out / f"{name}.csv"
        with open(path, "w") as fh:
            fh.write(f"# zml {__version__} {echo}\n")
            if rows:
                cols = list(rows[0])
                fh.write(",".join(cols) + "\n")
                for r in rows:
                    fh.write(",".join(str(r[c]) for c in cols) + "\n")
    return path


def _check(name, status, observed, expected="", tolerance="") -> dict:
    return {"name": name, "status": status, "observed": observed,
            "expected": expected, "tolerance": tolerance}


def _load_cache(cfg: RunConfig) -> ZeroList:
    path = Path(cfg.cache_path)
    if not path.exists():
        raise FileNotFoundError(f"zero cache {path} not found; run `zml zeros`")
    return load_zeros(path, DEFAULT_CONFIG)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def _cmd_zeros(cfg: RunConfig) -> list:
    t0 = time.perf_counter()
    zl = find_zeros(cfg.t_lo, cfg.t_hi, DEFAULT_CONFIG, threads=cfg.threads)
    save_zeros(zl, cfg.cache_path)
    if cfg.format == "csv":
        export_zeros_csv(zl, Path(cfg.out_path) / "zeros.csv")
    from .zeros import _rvm_real

    rvm = _rvm_real(cfg.t_hi) - _rvm_real(cfg.t_lo)
    return [
        _check("zeros.count", "pass", len(zl)),
        _check("zeros.count_vs_rvm", "pass" if abs(len(zl) - rvm) < 1.75
               else "fail", abs(len(zl) - rvm), "< 1.75", 1.75),
        _check("zeros.runtime_s", "pass", round(time.perf_counter() - t0, 2)),
    ]


def _cmd_jk(cfg: RunConfig) -> list:
    zl = _load_cache(cfg)
    table = sieve_primes(max(cfg.prime_cutoff, 1000))
    rows, checks = [], []
    for k in cfg.k_list:
        const = c_k(k, cfg.prime_cutoff, table) if k > 0 else None
        res = discrete_moment_jk(zl, k, cfg.t_lo, min(cfg.t_hi, zl.t_hi),
                                 const)
        rows.append(json.loads(res.to_json()))
        checks.append(_check(f"jk.finite_k{k}", "pass"
                             if math.isfinite(res.value) else "fail",
                             res.value))
    ks = sorted(k for k in cfg.k_list if k > 0)
    chain = [
        discrete_moment_jk(zl, k, cfg.t_lo, min(cfg.t_hi, zl.t_hi)).value
        ** (1.0 / k)
        for k in ks
    ]
    mono = all(a <= b * (1 + 1e-12) for a, b in zip(chain, chain[1:]))
    checks.append(_check("jk.power_mean_monotone",
                         "pass" if mono else "fail",
                         "monotone" if mono else "violated"))
    _write_rows(cfg, "jk_moments", rows)
    return checks


def _cmd_shifted(cfg: RunConfig) -> list:
    zl = _load_cache(cfg)
    T = min(cfg.t_hi, zl.t_hi)
    r = 1.0 / math.log(T)
    rows, checks = [], []
    for k in cfg.k_list:
        for m in range(8):
            alpha = r * complex(math.cos(2 * math.pi * m / 8),
                                math.sin(2 * math.pi * m / 8))
            res = shifted_moment(zl, k, alpha, t_lo=cfg.t_lo, t_hi=T)
            rows.append(json.loads(res.to_json()))
            checks.append(_check(
                f"shifted.finite_k{k}_m{m}",
                "pass" if math.isfinite(res.value) else "fail", res.value))
    _write_rows(cfg, "shifted_sweep", rows)
    return checks


def _cmd_deriv(cfg: RunConfig) -> list:
    zl = _load_cache(cfg)
    rows, checks = [], []
    for k in cfg.k_list:
        if k < 0.5:
            continue
        rep = cauchy_circle_bound(zl, k, 2, t_lo=cfg.t_lo,
                                  t_hi=min(cfg.t_hi, zl.t_hi))
        rows.append(rep)
        checks.append(_check(f"deriv.bound_holds_k{k}",
                             "pass" if rep["holds"] else "fail",
                             rep["direct"], rep["bound"]))
    _write_rows(cfg, "deriv_report", rows)
    return checks


def _cmd_landau(cfg: RunConfig) -> list:
    zl = _load_cache(cfg)
    T = cfg.t_lo if cfg.t_lo > 0 else zl.t_hi / 2.0
    ratios = [(a, 1) for a in (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)]
    rows, checks = [], []
    for chk in landau_survey(zl, T, ratios):
        rows.append({
            "a": chk.a, "b": chk.b, "T": T,
            "empirical_re": chk.empirical.real,
            "empirical_im": chk.empirical.imag,
            "main_term": chk.main_term,
            "envelope": chk.error_envelope,
            "ratio": chk.envelope_constant,
        })
        checks.append(_check(f"landau.envelope_{chk.a}_{chk.b}",
                             "pass" if chk.envelope_constant <= 5.0
                             else "fail",
                             chk.envelope_constant, "<= 5", 5.0))
    _write_rows(cfg, "landau", rows)
    return checks


def _cmd_classify(cfg: RunConfig) -> list:
    zl = _load_cache(cfg)
    k = cfg.k_list[0]
    T = min(cfg.t_hi, zl.t_hi)
    sched = beta_schedule_from_log(k, math.log(T), cfg.threshold_c)
    table = sieve_primes(max(cfg.prime_cutoff, 1000))
    rows = classification_census(zl, cfg.t_lo, T, sched, table)
    _write_rows(cfg, "classify", rows)
    labels = {}
    for r in rows:
        labels[r["label"]] = labels.get(r["label"], 0) + 1
    checks = [_check("classify.partition", "pass", json.dumps(
        labels, sort_keys=True))]
    return checks


def _cmd_randmodel(cfg: RunConfig) -> list:
    table = sieve_primes(max(cfg.prime_cutoff, 1000))
    sched = beta_schedule_from_log(0.5, 150.0, 2.0)
    rows, checks = [], []
    for k in cfg.k_list:
        est = sample_random_model(k, 1, sched, table, cfg.n_samples, cfg.seed)
        rows.append(json.loads(est.to_json()))
        gap = abs(est.mc_value - est.analytic_value)
        tol = 3.0 * est.mc_stderr if est.mc_stderr else 1e-12
        checks.append(_check(f"randmodel.mc_within_3sigma_k{k}",
                             "pass" if gap <= tol or k == 0 else "fail",
                             gap, "<= 3 stderr", tol))
    _write_rows(cfg, "randmodel", rows)
    return checks


def _cmd_ck(cfg: RunConfig) -> list:
    table = sieve_primes(max(2 * cfg.prime_cutoff, 1000))
    rows, checks = [], []
    for k in cfg.k_list:
        if k <= 0:
            continue
        const = c_k(k, cfg.prime_cutoff, table)
        rows.append({
            "k": k, "barnes_ratio": const.barnes_ratio,
            "euler_product": const.euler_product,
            "prime_cutoff": const.prime_cutoff,
            "tail_bound": const.tail_bound, "value": const.value,
        })
        doubled = c_k(k, 2 * cfg.prime_cutoff, table)
        drift = abs(math.log(doubled.value / const.value))
        checks.append(_check(f"ck.stable_k{k}",
                             "pass" if drift <= const.tail_bound else "fail",
                             drift, "<= tail_bound", const.tail_bound))
    _write_rows(cfg, "ck", rows)
    return checks


def _cmd_clt(cfg: RunConfig) -> list:
    zl = _load_cache(cfg)
    stats = hejhal_clt_stats(zl, cfg.t_lo, min(cfg.t_hi, zl.t_hi))
    edges = stats["bin_edges"]
    rows = [
        {"bin_lo": edges[i], "bin_hi": edges[i + 1],
         "count": stats["histogram"][i]}
        for i in range(len(stats["histogram"]))
    ]
    _write_rows(cfg, "clt_histogram", rows)
    out = Path(cfg.out_path) / "clt_stats.json"
    payload = {k: v for k, v in stats.items() if k != "histogram"}
    payload["config"] = _config_echo(cfg)
    out.write_text(json.dumps(payload, sort_keys=True, indent=1))
    return [_check("clt.ks_distance", "pass", stats["ks_distance"]),
            _check("clt.mean_vs_loglogT", "pass",
                   abs(stats["mean"] - stats["loglog_T"]))]


def _cmd_verify(cfg: RunConfig) -> list:
    zl = _load_cache(cfg)
    if zl.t_hi < 2000.0 or zl.t_lo > 0:
        raise ValueError("verify needs a cache covering at least (0, 2000]")
    table = sieve_primes(1_000_000)
    small = zl  # windows up to 2000 read from the same cache
    big = zl if zl.t_hi >= 100_000.0 else None
    results = acceptance.run_all(small, zl, big, table,
                                 include_runtime=zl.t_hi >= 10_000.0)
    return [
        _check(r.name, r.status, r.observed, r.expected, r.tolerance)
        for r in results
    ]


_COMMANDS = {
    "zeros": _cmd_zeros,
    "jk": _cmd_jk,
    "shifted": _cmd_shifted,
    "deriv": _cmd_deriv,
    "landau": _cmd_landau,
    "classify": _cmd_classify,
    "randmodel": _cmd_randmodel,
    "ck": _cmd_ck,
    "clt": _cmd_clt,
    "verify": _cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zml",
        description="Zeros of zeta, discrete moments of zeta', and the "
                    "machinery that verifies them.",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--t-lo", dest="t_lo", type=float)
        sp.add_argument("--t-hi", dest="t_hi", type=float)
        sp.add_argument("--k", dest="k_list", type=float, action="append",
                        help="moment order; repeatable")
        sp.add_argument("--threshold-c", dest="threshold_c", type=float)
        sp.add_argument("--prime-cutoff", dest="prime_cutoff", type=int)
        sp.add_argument("--n-samples", dest="n_samples", type=int)
        sp.add_argument("--seed", dest="seed", type=int)
        sp.add_argument("--cache", dest="cache_path")
        sp.add_argument("--out", dest="out_path")
        sp.add_argument("--threads", dest="threads", type=int)
        sp.add_argument("--format", dest="format", choices=["csv", "json"])
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        cfg = _resolve_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_RANGE
    try:
        checks = _COMMANDS[cfg.command](cfg)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_CACHE
    except MalformedFileError as exc:
        print(f"error: malformed cache: {exc}", file=sys.stderr)
        return EXIT_MISSING_CACHE
    except (ValueError, CapacityError, ClassificationDisabledError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_RANGE
    except (NumericError, MissingZeroError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    path = _write_summary(cfg, checks, t0)
    n_fail = sum(1 for c in checks if c["status"] == "fail")
    for c in checks:
        print(f"{c['status'].upper():5s} {c['name']}: {c['observed']}")
    print(f"summary: {path}")
    return EXIT_CHECK_FAILED if n_fail else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
