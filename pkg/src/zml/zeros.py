"""Locating zeros of zeta on the critical line.

The scan walks Gram points, brackets sign changes of Hardy's Z, refines
each bracket by batched bisection, and insists that the final count agrees
with the Riemann-von Mangoldt prediction theta(T)/pi + 1 before anything is
returned.  Missed zeros (Rosser violations, close pairs) are recovered by
recursive step halving inside the deficient region, up to depth 8.

All zeros are assumed to lie on the critical line in the working range
(verified far beyond t = 1e6 in the computational literature); no off-line
search is attempted.
"""

from __future__ import annotations

import io
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import lambertw

from ._util import chunked, refine_brackets, stable_hash64
from .zetafun import (
    DEFAULT_CONFIG,
    EvalConfig,
    NumericError,
    hardy_z_many,
    rs_theta,
    rs_theta_deriv,
)

#: No zero lies below this height (the first is 14.1347...).
FIRST_ZERO_FLOOR = 14.0

#: Records whose |Z'| falls below this are flagged as numerically degenerate.
DEGENERATE_ZPRIME = 1e-6

#: Contract ceiling on the localization radius of a stored zero.
GAMMA_ERROR_CAP = 1e-9

MAX_RESCAN_DEPTH = 8

_MAGIC = b"ZML1"
_VERSION = 1


class MissingZeroError(NumericError):
    """The window's sign-change count could not reach the predicted count."""


class MalformedFileError(ValueError):
    """A zero cache failed structural or checksum validation."""


class CoverageError(ValueError):
    """A computation needed zeros outside the loaded window."""


class InvariantError(AssertionError):
    """A ZeroList failed its structural invariants."""


@dataclass(frozen=True)
class ZeroRecord:
    """One zero rho = 1/2 + i gamma with its derivative magnitude."""

    index: int
    gamma: float
    abs_zeta_prime: float
    gamma_error: float

    @property
    def flagged(self) -> bool:
        """Numerically degenerate: |Z'| tiny or localization above the cap."""
        return (
            self.abs_zeta_prime < DEGENERATE_ZPRIME
            or self.gamma_error > GAMMA_ERROR_CAP
        )


@dataclass
class ZeroList:
    """Ordered zeros in (t_lo, t_hi], immutable once built."""

    t_lo: float
    t_hi: float
    eval_config_hash: int
    indices: np.ndarray = field(repr=False)
    gammas: np.ndarray = field(repr=False)
    abs_zeta_primes: np.ndarray = field(repr=False)
    gamma_errors: np.ndarray = field(repr=False)
    config_mismatch: bool = False

    def __len__(self) -> int:
        return self.gammas.size

    def __iter__(self):
        return iter(self.records)

    @property
    def records(self) -> list[ZeroRecord]:
        return [
            ZeroRecord(int(i), float(g), float(a), float(e))
            for i, g, a, e in zip(
                self.indices, self.gammas, self.abs_zeta_primes, self.gamma_errors
            )
        ]

    def in_window(self, lo: float, hi: float) -> np.ndarray:
        """Indices (into the arrays) of zeros with lo < gamma <= hi."""
        if lo < self.t_lo - 1e-12 or hi > self.t_hi + 1e-12:
            raise CoverageError(
                f"window ({lo}, {hi}] not covered by cache ({self.t_lo}, {self.t_hi}]"
            )
        i = np.searchsorted(self.gammas, lo, side="right")
        j = np.searchsorted(self.gammas, hi, side="right")
        return np.arange(i, j)

    def validate(self) -> None:
        g = self.gammas
        rvm_diff = _rvm_real(self.t_hi) - _rvm_real(self.t_lo)
        if g.size == 0:
            if rvm_diff > 1.0 and self.t_hi > FIRST_ZERO_FLOOR:
                raise InvariantError("empty list for a window predicted non-empty")
            return
        if not np.all(g > 0):
            raise InvariantError("non-positive ordinate")
        if not np.all(np.diff(g) > 0):
            raise InvariantError("ordinates not strictly increasing")
        if not np.all(np.diff(self.indices) == 1):
            raise InvariantError("indices not consecutive")
        if not (self.t_lo < g[0] and g[-1] <= self.t_hi):
            raise InvariantError("ordinates outside window")
        # true count differs from the RvM proxy by S(t_hi) - S(t_lo)
        if abs(g.size - rvm_diff) > 1.75:
            raise InvariantError(
                f"count {g.size} inconsistent with RvM difference {rvm_diff:.3f}"
            )
        clean = self.abs_zeta_primes >= DEGENERATE_ZPRIME
        if not np.all(self.abs_zeta_primes[clean] > 0):
            raise InvariantError("non-positive |zeta'|")
        if not np.all(self.gamma_errors[clean] <= GAMMA_ERROR_CAP):
            raise InvariantError("unflagged record with gamma_error above cap")


# ----------------------------------------------------------------------
# Riemann-von Mangoldt count and Gram points
# ----------------------------------------------------------------------


def count_zeros_rvm(T: float) -> float:
    """Zero-count proxy theta(T)/pi + 1 (a real number, not rounded).

    The true N(T) differs from this by S(T), which stays below 1 in
    magnitude throughout the desk range apart from short excursions.
    """
    if T < 10:
        raise ValueError("count_zeros_rvm requires T >= 10")
    return rs_theta(T) / math.pi + 1.0


def _rvm_real(t: float) -> float:
    return 0.0 if t < 10.0 else count_zeros_rvm(t)


def predicted_count(t_lo: float, t_hi: float) -> int:
    """Predicted number of zeros in (t_lo, t_hi], by rounded RvM counts.

    Can be off by one when an endpoint sits on an S(T) excursion with
    |S| > 1/2 (e.g. t = 1e4); the scanner itself uses exact Gram-block
    accounting instead.
    """

    def n_below(t: float) -> int:
        if t < FIRST_ZERO_FLOOR:
            return 0
        return int(round(count_zeros_rvm(max(t, 10.0))))

    return n_below(t_hi) - n_below(t_lo)


def gram_point(n: int) -> float:
    """The unique t >= 7 with theta(t) = n*pi, Newton-refined to 1e-10."""
    if n < -1:
        raise ValueError("gram_point requires n >= -1")
    if n <= 1:
        return float(brentq(lambda t: rs_theta(t) - n * math.pi, 7.0, 40.0,
                            xtol=1e-12))
    t = _gram_initial_guess(np.array([float(n)]))[0]
    target = n * math.pi
    for _ in range(50):
        step = (rs_theta(t) - target) / rs_theta_deriv(t)
        t -= step
        if abs(step) < 1e-11:
            return float(t)
    raise NumericError(f"gram_point({n}) did not converge")


def _gram_initial_guess(ns: np.ndarray) -> np.ndarray:
    # invert theta(t) ~ (t/2) log(t/(2 pi e)) - pi/8 with a Lambert W
    y = (ns + 0.125) * math.pi
    v = y / (math.pi * math.e)
    u = v / lambertw(v).real
    return TWO_PI_E * u


TWO_PI_E = 2.0 * math.pi * math.e


def _gram_points_between(t_lo: float, t_hi: float) -> np.ndarray:
    """All Gram points strictly inside (t_lo, t_hi), vectorized Newton."""
    th_lo = rs_theta(max(t_lo, 7.5))
    th_hi = rs_theta(t_hi)
    n_lo = max(-1, int(math.floor(th_lo / math.pi)) - 1)
    n_hi = int(math.ceil(th_hi / math.pi)) + 1
    if n_hi < n_lo:
        return np.zeros(0)
    ns = np.arange(n_lo, n_hi + 1, dtype=float)
    t = _gram_initial_guess(ns)
    t = np.clip(t, 8.0, None)
    target = ns * math.pi
    for _ in range(6):
        t = t - (rs_theta(t) - target) / rs_theta_deriv(t)
    resid = np.abs(rs_theta(t) - target)
    if np.any(resid > 1e-9):
        bad = np.flatnonzero(resid > 1e-9)
        for i in bad:
            t[i] = gram_point(int(ns[i]))
    return t[(t > t_lo) & (t < t_hi)]


# ----------------------------------------------------------------------
# Zero finding
# ----------------------------------------------------------------------


def _parallel_eval(f, xs: np.ndarray, threads: int) -> np.ndarray:
    if threads <= 1 or xs.size < 4096:
        return f(xs)
    out = np.empty_like(xs)
    bounds = list(chunked(xs.size, max(2048, xs.size // threads + 1)))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for (lo, hi), res in zip(
            bounds, pool.map(lambda b: f(xs[b[0]:b[1]]), bounds)
        ):
            out[lo:hi] = res
    return out


def _sign_changes(vals: np.ndarray) -> np.ndarray:
    signs = np.sign(vals)
    signs[signs == 0] = 1.0
    return signs[:-1] * signs[1:] < 0


def _refine_two_stage(zfun, zfun_fast, lo, hi, f_lo):
    """Bisect brackets with the cheap route first, then polish accurately.

    In the band where the accurate route is Euler-Maclaurin (expensive) but
    the Riemann-Siegel route is already good to ~1e-9, stage one bisects
    with the cheap route down to 1e-6 and stage two re-brackets the root
    with a 1e-6 pad and finishes on the accurate route.  The pad exceeds
    the worst inter-route root shift (~4e-9) by orders of magnitude.
    """
    from .zetafun import RS_ACCURATE_T

    roots = np.empty_like(lo)
    errs = np.empty_like(lo)
    mid_t = 0.5 * (lo + hi)
    band = (mid_t > 300.0) & (mid_t < RS_ACCURATE_T)
    if band.any():
        r1, _ = refine_brackets(zfun_fast, lo[band], hi[band], f_lo[band],
                                xtol_abs=1e-6)
        lo2, hi2 = r1 - 1e-6, r1 + 1e-6
        fl2 = zfun(lo2)
        fh2 = zfun(hi2)
        stuck = np.sign(fl2) == np.sign(fh2)
        r2, e2 = refine_brackets(zfun, lo2, hi2, fl2)
        if stuck.any():
            # pad failed to straddle (should not happen); redo from scratch
            sl = zfun(lo[band][stuck])
            r2[stuck], e2[stuck] = refine_brackets(
                zfun, lo[band][stuck], hi[band][stuck], sl)
        roots[band], errs[band] = r2, e2
    rest = ~band
    if rest.any():
        fl = zfun(lo[rest])
        roots[rest], errs[rest] = refine_brackets(zfun, lo[rest], hi[rest], fl)
    return roots, errs


def find_zeros(t_lo: float, t_hi: float, cfg: EvalConfig = DEFAULT_CONFIG,
               threads: int = 1) -> ZeroList:
    """All zeros with t_lo < gamma <= t_hi, localized to ~1e-12.

    Zeros are counted Gram block by Gram block.  A Gram point g_n is good
    when (-1)^n Z(g_n) > 0; a block bounded by good points of indices a < b
    contains exactly b - a zeros throughout the supported height range (the
    first failure of this rule sits near t = 6.8e6, beyond the 1e6 ceiling),
    so each block is rescanned at halved steps until its own quota is met.
    This also makes the 1-based global ranks exact: N(g_a) = a + 1.
    """
    if not (0 <= t_lo < t_hi <= 1.0e6):
        raise ValueError("need 0 <= t_lo < t_hi <= 1e6")

    def zfun(xs):
        return _parallel_eval(lambda a: hardy_z_many(a, cfg), xs, threads)

    def zfun_fast(xs):
        return _parallel_eval(
            lambda a: hardy_z_many(a, cfg, fast=True), xs, threads)

    if t_hi <= FIRST_ZERO_FLOOR:
        zl = ZeroList(
            t_lo=float(t_lo), t_hi=float(t_hi),
            eval_config_hash=cfg.content_hash(),
            indices=np.zeros(0, dtype=np.int64), gammas=np.zeros(0),
            abs_zeta_primes=np.zeros(0), gamma_errors=np.zeros(0),
        )
        zl.validate()
        return zl

    n_anchor, grams, gvals = _good_gram_cover(t_lo, t_hi, zfun_fast)

    # walk blocks between consecutive good Gram points
    parity = np.where((np.arange(n_anchor, n_anchor + grams.size) % 2) == 0, 1.0, -1.0)
    good = parity * gvals > 0
    good_idx = np.flatnonzero(good)

    bracket_lo: list[np.ndarray] = []
    bracket_hi: list[np.ndarray] = []
    f_lo: list[np.ndarray] = []
    for a, b in zip(good_idx[:-1], good_idx[1:]):
        target = int(b - a)
        grid = grams[a : b + 1]
        vals = gvals[a : b + 1]
        depth = 0
        while True:
            change = _sign_changes(vals)
            found = int(change.sum())
            if found == target:
                break
            if found > target:
                raise MissingZeroError(
                    f"Gram block {n_anchor + a}..{n_anchor + b} shows {found} "
                    f"sign changes against a quota of {target}"
                )
            if depth >= MAX_RESCAN_DEPTH:
                raise MissingZeroError(
                    f"found {found} of {target} zeros in Gram block "
                    f"{n_anchor + a}..{n_anchor + b} "
                    f"(t in [{grid[0]:.6f}, {grid[-1]:.6f}]) after depth-"
                    f"{MAX_RESCAN_DEPTH} rescans"
                )
            mids = 0.5 * (grid[:-1] + grid[1:])
            mvals = zfun_fast(mids)
            merged = np.empty(grid.size + mids.size)
            merged[0::2] = grid
            merged[1::2] = mids
            mval = np.empty_like(merged)
            mval[0::2] = vals
            mval[1::2] = mvals
            grid, vals = merged, mval
            depth += 1
        idx = np.flatnonzero(change)
        bracket_lo.append(grid[idx])
        bracket_hi.append(grid[idx + 1])
        f_lo.append(vals[idx])

    lo = np.concatenate(bracket_lo) if bracket_lo else np.zeros(0)
    hi = np.concatenate(bracket_hi) if bracket_hi else np.zeros(0)
    fl = np.concatenate(f_lo) if f_lo else np.zeros(0)
    roots, errs = _refine_two_stage(zfun, zfun_fast, lo, hi, fl)
    order = np.argsort(roots)
    roots = roots[order]
    errs = errs[order]

    # exact ranks: zeros up to the anchor Gram point number n_anchor + 1
    ranks = np.arange(1, roots.size + 1, dtype=np.int64) + (n_anchor + good_idx[0] + 1)
    keep = (roots > t_lo) & (roots <= t_hi)
    roots, errs, ranks = roots[keep], errs[keep], ranks[keep]

    zprimes = np.abs(_parallel_eval(
        lambda a: hardy_z_many(a, cfg, deriv=True), roots, threads))

    zl = ZeroList(
        t_lo=float(t_lo),
        t_hi=float(t_hi),
        eval_config_hash=cfg.content_hash(),
        indices=ranks,
        gammas=roots,
        abs_zeta_primes=zprimes,
        gamma_errors=np.maximum(errs, 1e-13),
    )
    zl.validate()
    return zl


def _good_gram_cover(t_lo: float, t_hi: float, zfun):
    """Gram points g_n with values, n from a good anchor <= t_lo to a good
    endpoint >= t_hi.

    Returns (n_start, gram points, Z values).  The anchor for windows
    reaching below the first Gram point is n = -1, which is always good
    (Z < 0 up to the first zero).
    """
    th_hi = rs_theta(t_hi)
    n_hi = int(math.ceil(th_hi / math.pi)) + 1
    if t_lo <= 9.67:
        n_lo = -1
    else:
        n_lo = max(-1, int(math.floor(rs_theta(t_lo) / math.pi)) - 1)
    for _attempt in range(8):
        ns = np.arange(n_lo, n_hi + 1)
        grams = _gram_points_for(ns)
        gvals = zfun(grams)
        parity = np.where(ns % 2 == 0, 1.0, -1.0)
        good = parity * gvals > 0
        ok_lo = np.flatnonzero(good & (grams <= max(t_lo, 9.67)))
        ok_hi = np.flatnonzero(good & (grams >= t_hi))
        if ok_lo.size and ok_hi.size:
            i, j = ok_lo[-1], ok_hi[0]
            return int(ns[i]), grams[i : j + 1], gvals[i : j + 1]
        if not ok_lo.size:
            n_lo = max(-1, n_lo - 8)
        if not ok_hi.size:
            n_hi += 8
    raise MissingZeroError(
        f"no good Gram anchor found around window ({t_lo}, {t_hi}]"
    )


def _gram_points_for(ns: np.ndarray) -> np.ndarray:
    """Gram points for an integer index array (n >= -1), Newton-refined."""
    out = np.empty(ns.size, dtype=float)
    small = ns <= 1
    for i in np.flatnonzero(small):
        out[i] = gram_point(int(ns[i]))
    big = ~small
    if big.any():
        nb = ns[big].astype(float)
        t = np.clip(_gram_initial_guess(nb), 8.0, None)
        target = nb * math.pi
        for _ in range(6):
            t = t - (rs_theta(t) - target) / rs_theta_deriv(t)
        resid = np.abs(rs_theta(t) - target)
        for k in np.flatnonzero(resid > 1e-9):
            t[k] = gram_point(int(nb[k]))
        out[big] = t
    return out


# ----------------------------------------------------------------------
# Persistence: little-endian binary cache and CSV export
# ----------------------------------------------------------------------


def save_zeros(zl: ZeroList, path) -> None:
    """Write the binary cache: magic, version, window, config hash, records,
    trailing checksum."""
    buf = io.BytesIO()
    buf.write(_MAGIC)
    buf.write(struct.pack("<B", _VERSION))
    buf.write(struct.pack("<ddQ", zl.t_lo, zl.t_hi, zl.eval_config_hash))
    buf.write(struct.pack("<Q", len(zl)))
    rec = np.empty(
        len(zl),
        dtype=[("index", "<u8"), ("gamma", "<f8"),
               ("azp", "<f8"), ("gerr", "<f8")],
    )
    rec["index"] = zl.indices
    rec["gamma"] = zl.gammas
    rec["azp"] = zl.abs_zeta_primes
    rec["gerr"] = zl.gamma_errors
    buf.write(rec.tobytes())
    payload = buf.getvalue()
    checksum = stable_hash64(payload)
    with open(path, "wb") as fh:
        fh.write(payload)
        fh.write(struct.pack("<Q", checksum))


def load_zeros(path, cfg: EvalConfig | None = None) -> ZeroList:
    """Read a binary cache back, re-validating structure and invariants.

    A config hash differing from ``cfg`` sets ``config_mismatch`` on the
    result rather than raising.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < len(_MAGIC) + 1 + 24 + 8 + 8:
        raise MalformedFileError("file too short")
    payload, tail = blob[:-8], blob[-8:]
    if stable_hash64(payload) != struct.unpack("<Q", tail)[0]:
        raise MalformedFileError("checksum mismatch")
    if payload[:4] != _MAGIC:
        raise MalformedFileError("bad magic")
    version = payload[4]
    if version != _VERSION:
        raise MalformedFileError(f"unsupported version {version}")
    t_lo, t_hi, cfg_hash = struct.unpack_from("<ddQ", payload, 5)
    (count,) = struct.unpack_from("<Q", payload, 29)
    body = payload[37:]
    expect_bytes = count * 32
    if len(body) != expect_bytes:
        raise MalformedFileError(
            f"record section is {len(body)} bytes; expected {expect_bytes}"
        )
    rec = np.frombuffer(
        body,
        dtype=[("index", "<u8"), ("gamma", "<f8"),
               ("azp", "<f8"), ("gerr", "<f8")],
    )
    zl = ZeroList(
        t_lo=t_lo,
        t_hi=t_hi,
        eval_config_hash=cfg_hash,
        indices=rec["index"].astype(np.int64),
        gammas=rec["gamma"].copy(),
        abs_zeta_primes=rec["azp"].copy(),
        gamma_errors=rec["gerr"].copy(),
        config_mismatch=(cfg is not None and cfg.content_hash() != cfg_hash),
    )
    zl.validate()
    return zl


def export_zeros_csv(zl: ZeroList, path) -> None:
    with open(path, "w") as fh:
        fh.write("index,gamma,abs_zeta_prime,gamma_error\n")
        for i, g, a, e in zip(zl.indices, zl.gammas, zl.abs_zeta_primes,
                              zl.gamma_errors):
            fh.write(f"{int(i)},{float(g)!r},{float(a)!r},{float(e)!r}\n")
