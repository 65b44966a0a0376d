"""Shared numerical helpers: compensated summation and bracket refinement."""

from __future__ import annotations

import math

import numpy as np


def csum(values) -> float:
    """Exactly rounded sum of a 1-D array of floats.

    Used for every oscillatory sum whose terms can run into the tens of
    thousands; plain left-to-right accumulation would lose digits there.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return 0.0
    return math.fsum(arr)


def csum_complex(values) -> complex:
    arr = np.asarray(values)
    if arr.size == 0:
        return 0.0 + 0.0j
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


def chunked(n: int, size: int):
    """Yield (lo, hi) index pairs covering range(n) in fixed-size blocks."""
    for lo in range(0, n, size):
        yield lo, min(lo + size, n)


def refine_brackets(f_batch, lo, hi, f_lo, xtol_abs: float = 1e-12,
                    max_iter: int = 80):
    """Vectorized bisection of many sign-change brackets at once.

    ``f_batch`` maps an array of abscissas to an array of values.  Each
    bracket (lo[i], hi[i]) must satisfy sign(f(lo)) != sign(f(hi)); the sign
    at ``lo`` is passed in to avoid re-evaluation.  Returns (root, err) where
    err is the final half-width, floored at a few ulp of the abscissa.

    Bisection is deliberate: it keeps a guaranteed bracket at every step,
    which the per-zero sign-flip validation relies on, and the batch
    evaluation amortizes the cost that would otherwise favor a secant method.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    sign_lo = np.sign(f_lo)
    active = np.ones(lo.shape, dtype=bool)
    for _ in range(max_iter):
        width = hi - lo
        tol = np.maximum(xtol_abs, 8.0 * np.spacing(hi))
        active = width > tol
        if not active.any():
            break
        mid = 0.5 * (lo[active] + hi[active])
        fm = f_batch(mid)
        sm = np.sign(fm)
        go_right = sm == sign_lo[active]
        # exact zeros: collapse the bracket
        exact = sm == 0
        idx = np.flatnonzero(active)
        lo_a = lo[idx]
        hi_a = hi[idx]
        lo_a[go_right] = mid[go_right]
        hi_a[~go_right] = mid[~go_right]
        lo_a[exact] = mid[exact]
        hi_a[exact] = mid[exact]
        lo[idx] = lo_a
        hi[idx] = hi_a
    root = 0.5 * (lo + hi)
    err = np.maximum(0.5 * (hi - lo), 2.0 * np.spacing(root))
    return root, err


def stable_hash64(payload: bytes) -> int:
    """64-bit content hash (blake2b prefix), stable across runs/platforms."""
    import hashlib

    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")
