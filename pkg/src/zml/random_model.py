"""Random completely multiplicative model for the prime-range polynomials.

Each prime gets an independent angle X_p uniform on the unit circle and
X_n extends multiplicatively, so a range polynomial becomes a random sum
whose exponential moments factor over primes:

* primes above log T contribute a modified-Bessel factor I0(2k w(p)/sqrt p);
* primes up to log T couple with their squares, and the factor is computed
  as an exact one-dimensional angular average by periodic-trapezoid
  quadrature (spectrally accurate), rather than through the usual
  upper-bound expansion.

Monte-Carlo sampling draws per-prime substreams from a counter-based
generator keyed by (seed, p), so results are reproducible and independent
of chunking.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from itertools import combinations_with_replacement, product

import numpy as np

from ._util import csum
from .majorant import BetaSchedule, _range_support
from .primes import CapacityError, PrimeTable
from .zetafun import NumericError

_QUAD_START_NODES = 64
_QUAD_MAX_NODES = 4096
_MC_CHUNK = 16384
_EXACT_WORK_LIMIT = 2e7


@dataclass(frozen=True)
class RandomModelEstimate:
    """Analytic and sampled values of a model expectation."""

    analytic_value: float
    mc_value: float | None
    mc_stderr: float | None
    n_samples: int
    seed: int | None
    small_prime_correction: float
    threads: int = 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def bessel_i0(x: float) -> float:
    """Modified Bessel function I0: power series for x <= 15, the standard
    asymptotic e^x/sqrt(2 pi x) (1 + 1/8x + ...) beyond; relative error
    stays under ~1e-12 across the switch."""
    if x < 0:
        raise ValueError("bessel_i0 requires x >= 0")
    if x <= 15.0:
        q = 0.25 * x * x
        term = 1.0
        total = 1.0
        for n in range(1, 200):
            term *= q / (n * n)
            total += term
            if term < 1e-17 * total:
                break
        return total
    # asymptotic series; terms shrink until ~k = 8x, far past what we use
    total = 1.0
    term = 1.0
    for kk in range(1, 30):
        term *= (2 * kk - 1) ** 2 / (8.0 * x * kk)
        total += term
        if term < 1e-16 * total:
            break
    return math.exp(x) / math.sqrt(2 * math.pi * x) * total


# ----------------------------------------------------------------------
# Per-prime structure of the level-j polynomial sum
# ----------------------------------------------------------------------


def _prime_terms(j: int, sched: BetaSchedule, table: PrimeTable) -> dict:
    """{p: [a_p, b_p]} with a_p = w_j(p)/sqrt(p), b_p = w_j(p^2)/p, over
    all ranges i <= j."""
    terms: dict[int, list] = {}
    for i in range(1, j + 1):
        ns, w = _range_support(i, j, sched, table)
        for n, wn in zip(ns, w):
            n = int(n)
            root = math.isqrt(n)
            if root * root == n and root > 1:
                terms.setdefault(root, [0.0, 0.0])[1] += wn / root
            else:
                terms.setdefault(n, [0.0, 0.0])[0] += wn / math.sqrt(n)
    return dict(sorted(terms.items()))


def _angular_average(k: float, a: float, b: float) -> float:
    """E_phi exp(2k (a cos phi + b cos 2 phi)) by periodic trapezoid."""
    m = _QUAD_START_NODES
    prev = None
    while m <= _QUAD_MAX_NODES:
        phi = 2.0 * math.pi * np.arange(m) / m
        vals = np.exp(2.0 * k * (a * np.cos(phi) + b * np.cos(2.0 * phi)))
        est = float(vals.mean())
        if prev is not None and abs(est - prev) <= 1e-10 * abs(est):
            return est
        prev = est
        m *= 2
    raise NumericError("angular average did not converge by 4096 nodes")


def exp_moment_analytic(k: float, j: int, sched: BetaSchedule,
                        table: PrimeTable) -> RandomModelEstimate:
    """E[exp(2k sum_{i<=j} G_i(X))] as a product over primes.

    Primes above log T contribute I0 factors; primes below couple with
    their squares and get the exact angular average.  The latter product
    is recorded as small_prime_correction.
    """
    if not (1 <= j <= sched.n_levels):
        raise ValueError(f"level j={j} outside 1..{sched.n_levels}")
    if k < 0:
        raise ValueError("k must be >= 0")
    terms = _prime_terms(j, sched, table)
    log_total = []
    log_small = []
    for p, (a, b) in terms.items():
        if p <= sched.log_T:
            f = _angular_average(k, a, b)
            log_small.append(math.log(f))
        else:
            f = bessel_i0(2.0 * k * a)
        log_total.append(math.log(f))
    return RandomModelEstimate(
        analytic_value=math.exp(csum(log_total)),
        mc_value=None,
        mc_stderr=None,
        n_samples=0,
        seed=None,
        small_prime_correction=math.exp(csum(log_small)),
    )


# ----------------------------------------------------------------------
# Monte-Carlo sampling
# ----------------------------------------------------------------------


def _substreams(seed: int, primes) -> list:
    """One counter-based generator per prime, keyed by (seed, p)."""
    return [
        np.random.Generator(np.random.Philox(key=np.array([seed, p],
                                                          dtype=np.uint64)))
        for p in primes
    ]


def sample_random_model(k: float, j: int, sched: BetaSchedule,
                        table: PrimeTable, n_samples: int,
                        seed: int) -> RandomModelEstimate:
    """Sample mean and standard error of exp(2k sum_{i<=j} G_i(X)).

    Deterministic for a fixed seed: per-prime substreams are keyed by
    (seed, p) and the reduction runs over fixed-size chunks.
    """
    if n_samples < 100:
        raise ValueError("n_samples must be >= 100")
    terms = _prime_terms(j, sched, table)
    primes = list(terms)
    coeff = np.array([terms[p] for p in primes])  # columns a_p, b_p
    gens = _substreams(seed, primes)
    total, total2 = [], []
    done = 0
    while done < n_samples:
        m = min(_MC_CHUNK, n_samples - done)
        s = np.zeros(m)
        for gen, (a, b) in zip(gens, coeff):
            phi = gen.random(m) * (2.0 * math.pi)
            s += a * np.cos(phi)
            if b:
                s += b * np.cos(2.0 * phi)
        vals = np.exp(2.0 * k * s)
        total.append(float(vals.sum()))
        total2.append(float((vals * vals).sum()))
        done += m
    mean = csum(total) / n_samples
    var = max(csum(total2) / n_samples - mean * mean, 0.0)
    stderr = math.sqrt(var / max(n_samples - 1, 1))
    analytic = exp_moment_analytic(k, j, sched, table)
    return RandomModelEstimate(
        analytic_value=analytic.analytic_value,
        mc_value=mean,
        mc_stderr=stderr,
        n_samples=n_samples,
        seed=seed,
        small_prime_correction=analytic.small_prime_correction,
    )


# ----------------------------------------------------------------------
# Mixed moments E[prod_i G_i(X)^{ell_i}]
# ----------------------------------------------------------------------


def _range_entries(i: int, j: int, sched: BetaSchedule, table: PrimeTable):
    """(coefficient, exponent-vector) per supported n in range i."""
    ns, w = _range_support(i, j, sched, table)
    entries = []
    for n, wn in zip(ns, w):
        n = int(n)
        root = math.isqrt(n)
        if root * root == n and root > 1:
            vec = (root, 2)
        else:
            vec = (n, 1)
        entries.append((wn / math.sqrt(n), vec))
    return entries


def _multiset_count(combo) -> float:
    """Number of ordered tuples realizing a sorted index combination."""
    total = math.factorial(len(combo))
    run = 1
    for a, b in zip(combo, combo[1:]):
        run = run + 1 if a == b else 1
        if a == b:
            total //= run
            # dividing stepwise by 2, 3, ... within each equal run
    return float(total)


def _cancellation_count(vecs) -> int:
    """Number of sign vectors e with sum_l e_l v_l = 0 (integer arithmetic)."""
    L = len(vecs)
    count = 0
    for signs in product((1, -1), repeat=L):
        acc: dict[int, int] = {}
        for s, (p, e) in zip(signs, vecs):
            acc[p] = acc.get(p, 0) + s * e
        if all(v == 0 for v in acc.values()):
            count += 1
    return count


def mixed_moment_expectation(ell, j: int, sched: BetaSchedule,
                             table: PrimeTable, mode: str = "exact",
                             n_samples: int = 100_000,
                             seed: int = 0) -> float:
    """E[prod_i G_i(X)^{ell_i}] for a tuple of per-range exponents.

    Exact mode expands the product over n-multisets and keeps the sign
    assignments whose exponent vectors cancel (detected in integer
    arithmetic); every surviving term is nonnegative.  Work beyond the
    enumeration budget raises CapacityError.
    """
    ell = tuple(int(x) for x in ell)
    if len(ell) > j or any(x < 0 for x in ell):
        raise ValueError("ell must fit within levels 1..j and be nonnegative")
    if mode == "mc":
        return sample_mixed_moment(ell, j, sched, table, n_samples, seed)[0]
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    L = sum(ell)
    if L == 0:
        return 1.0
    entries = {
        i: _range_entries(i, j, sched, table)
        for i, li in enumerate(ell, start=1)
        if li > 0
    }
    work = 2.0**L
    for i, li in enumerate(ell, start=1):
        if li > 0:
            work *= math.comb(len(entries[i]) + li - 1, li)
    if work > _EXACT_WORK_LIMIT:
        raise CapacityError(
            f"exact mixed moment needs ~{work:.2e} operations; "
            "use mode='mc'"
        )
    per_range_combos = [
        (li, list(combinations_with_replacement(range(len(entries[i])), li)),
         entries[i])
        for i, li in enumerate(ell, start=1)
        if li > 0
    ]
    total = []
    for chosen in product(*[c for (_, c, _) in per_range_combos]):
        weight = 1.0
        vecs = []
        for (li, _, ent), combo in zip(per_range_combos, chosen):
            weight *= _multiset_count(combo)
            for idx in combo:
                c, v = ent[idx]
                weight *= c
                vecs.append(v)
        hits = _cancellation_count(vecs)
        if hits:
            total.append(weight * hits / 2.0**L)
    return csum(total) if total else 0.0


def sample_mixed_moment(ell, j: int, sched: BetaSchedule, table: PrimeTable,
                        n_samples: int = 100_000,
                        seed: int = 0) -> tuple[float, float]:
    """Monte-Carlo (mean, stderr) of prod_i G_i(X)^{ell_i}."""
    ell = tuple(int(x) for x in ell)
    ranges = [
        (i, _range_entries(i, j, sched, table))
        for i, li in enumerate(ell, start=1)
        if li > 0
    ]
    primes = sorted({p for (_, ent) in ranges for (_, (p, _)) in ent})
    gens = dict(zip(primes, _substreams(seed, primes)))
    total, total2 = [], []
    done = 0
    while done < n_samples:
        m = min(_MC_CHUNK, n_samples - done)
        phase = {p: gens[p].random(m) * (2.0 * math.pi) for p in primes}
        vals = np.ones(m)
        for (i, ent), li in zip(ranges, [x for x in ell if x > 0]):
            g = np.zeros(m)
            for c, (p, e) in ent:
                g += c * np.cos(e * phase[p])
            vals *= g**li
        total.append(float(vals.sum()))
        total2.append(float((vals * vals).sum()))
        done += m
    mean = csum(total) / n_samples
    var = max(csum(total2) / n_samples - mean * mean, 0.0)
    return mean, math.sqrt(var / max(n_samples - 1, 1))
