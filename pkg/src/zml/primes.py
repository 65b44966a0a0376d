"""Prime tables, von Mangoldt functions, and prime sums.

Everything downstream (Dirichlet polynomials, Euler products, explicit
formula checks) pulls its primes from a :class:`PrimeTable`, a flat
smallest-prime-factor sieve.  The sieve layout favors fast factorization
queries, which dominate the workload.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._util import csum

#: Hard ceiling on sieve size; above this the flat table would not fit the
#: memory budget of a desk run.
MAX_SIEVE_LIMIT = 200_000_000


class CapacityError(Exception):
    """A request exceeded the configured table/memory budget."""


class RangeError(Exception):
    """A query fell outside the range covered by the table."""


@dataclass(frozen=True)
class PrimeTable:
    """Primes up to ``limit`` plus a smallest-prime-factor array.

    ``smallest_factor[n]`` is the least prime dividing n (0 for n < 2), so a
    factorization of any n <= limit is a chain of table lookups.  Instances
    are immutable and safe to share between threads.
    """

    limit: int
    primes: np.ndarray = field(repr=False)
    smallest_factor: np.ndarray = field(repr=False)

    def is_prime(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            return False
        return self.smallest_factor[n] == n

    def factorize(self, n: int) -> dict[int, int]:
        """Prime factorization {p: exponent} of 1 <= n <= limit."""
        if n < 1 or n > self.limit:
            raise RangeError(f"{n} outside table range [1, {self.limit}]")
        out: dict[int, int] = {}
        while n > 1:
            p = int(self.smallest_factor[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return out

    def primes_in(self, lo: float, hi: float) -> np.ndarray:
        """Primes p with lo < p <= hi."""
        if hi > self.limit:
            raise CapacityError(f"range ({lo}, {hi}] exceeds table limit {self.limit}")
        i = np.searchsorted(self.primes, lo, side="right")
        j = np.searchsorted(self.primes, hi, side="right")
        return self.primes[i:j]


def sieve_primes(limit: int) -> PrimeTable:
    """Build a :class:`PrimeTable` with all primes <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > MAX_SIEVE_LIMIT:
        raise CapacityError(
            f"sieve limit {limit} exceeds memory budget {MAX_SIEVE_LIMIT}"
        )
    spf = np.zeros(limit + 1, dtype=np.uint32)
    if limit >= 2:
        sqrt = int(math.isqrt(limit))
        for p in range(2, sqrt + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
                spf[p * p :: p] = block
        rest = np.flatnonzero(spf[2:] == 0) + 2
        spf[rest] = rest
    primes = np.flatnonzero(spf == np.arange(limit + 1, dtype=np.uint32))
    primes = primes[primes >= 2].astype(np.int64)
    return PrimeTable(limit=limit, primes=primes, smallest_factor=spf)


_INT_RTOL = 1e-12  # relative tolerance for "x is an integer" on real input


def _as_integer(x: float) -> int | None:
    n = round(x)
    if n < 1:
        return None
    if abs(x - n) <= _INT_RTOL * max(1.0, abs(x)):
        return n
    return None


def _prime_power_base(n: int) -> int | None:
    """Return p if n = p^h for a prime p and h >= 1, else None."""
    if n < 2:
        return None
    # strip the smallest prime found by trial division
    p = None
    m = n
    for q in range(2, math.isqrt(n) + 1):
        if m % q == 0:
            p = q
            break
    if p is None:
        return n  # n itself is prime
    while m % p == 0:
        m //= p
    return p if m == 1 else None


def von_mangoldt(x: float) -> float:
    """Von Mangoldt function, extended by 0 off the natural numbers.

    Returns log p when x = p^h (p prime, h a natural number), else 0.  Real
    arguments are accepted because explicit-formula checks feed in ratios
    a/b; integrality is decided within a relative tolerance of 1e-12.
    """
    if x <= 0:
        raise ValueError("von_mangoldt requires x > 0")
    n = _as_integer(x)
    if n is None or n == 1:
        return 0.0
    p = _prime_power_base(n)
    return math.log(p) if p is not None else 0.0


def von_mangoldt_L(n: int, L: float) -> float:
    """Restriction of von Mangoldt used in the zeta' majorant.

    Supported on primes (any size) and on squares p^2 with p <= L; cubes
    and higher powers are dropped, as are squares of primes above L.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if L <= 0:
        raise ValueError("L must be > 0")
    if n < 2:
        return 0.0
    p = _prime_power_base(n)
    if p is None:
        return 0.0
    if n == p:
        return math.log(p)
    if n == p * p and p <= L:
        return math.log(p)
    return 0.0


def von_mangoldt_sieve(table: PrimeTable) -> np.ndarray:
    """Vectorized Lambda(n) for all 0 <= n <= table.limit."""
    lam = np.zeros(table.limit + 1)
    for p in table.primes:
        p = int(p)
        logp = math.log(p)
        pk = p
        while pk <= table.limit:
            lam[pk] = logp
            pk *= p
    return lam


def prime_reciprocal_sum(a: float, b: float, table: PrimeTable) -> float:
    """Sum of 1/p over primes a < p <= b, as an exact finite sum."""
    if not (0 <= a < b):
        raise ValueError("need 0 <= a < b")
    if b > table.limit:
        raise RangeError(f"range ({a}, {b}] exceeds table limit {table.limit}")
    ps = table.primes_in(a, b)
    return csum(1.0 / ps) if ps.size else 0.0
