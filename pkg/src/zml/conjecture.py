"""The conjectured leading constant C_k for discrete moments of zeta'.

C_k couples a Barnes G-function ratio G(k+2)^2 / G(2k+3) with an Euler
product over primes,

    (1 - 1/p)^{k^2} * sum_{m>=0} (Gamma(m+k) / (m! Gamma(k)))^2 p^{-m},

whose factors approach 1 like 1/p^2, so the product is truncated at a
prime cutoff and the tail re-added through its leading asymptotics.  The
consistency anchor is C_1 = 1/12 exactly (both pieces collapse), matching
the classical cubic growth of the first moment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ._util import csum
from .primes import CapacityError, PrimeTable
from .zetafun import NumericError

#: Euler gamma, used by the base-window series for log G.
EULER_GAMMA = 0.5772156649015328606

_SERIES_MAX_TERMS = 10_000


@dataclass(frozen=True)
class ConjectureConstant:
    """C_k split into its Barnes ratio and Euler product components."""

    k: float
    barnes_ratio: float
    euler_product: float
    prime_cutoff: int
    tail_bound: float
    value: float


def _log_barnes_base(w: float) -> float:
    """log G(1 + w) for |w| <= 0.75 via the zeta-series Taylor expansion."""
    from scipy.special import zeta as zeta_real

    total = 0.5 * w * math.log(2 * math.pi) - 0.5 * (w + w * w * (1 + EULER_GAMMA))
    term_sign = 1.0
    wm = w * w * w
    for m in range(3, 400):
        term = term_sign * float(zeta_real(m - 1)) * wm / m
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
        wm *= w
        term_sign = -term_sign
    return total


def barnes_g(z: float) -> float:
    """Barnes G-function for z > 0, G(z+1) = Gamma(z) G(z), G(1) = G(2) = 1.

    Recursion walks z down into [1, 2]; the base window is covered by a
    convergent log-G series.  Relative error ~1e-12.
    """
    if z <= 0:
        raise ValueError("barnes_g requires z > 0")
    log_g = 0.0
    while z > 2.0:
        z -= 1.0
        log_g += math.lgamma(z)
    while z < 1.0:
        # G(z) = G(z+1)/Gamma(z)
        log_g -= math.lgamma(z)
        z += 1.0
    w = z - 1.0
    if w <= 0.5:
        log_g += _log_barnes_base(w)
    else:
        # pull the argument into the fast-converging half of the window
        log_g += math.lgamma(z - 1.0) + _log_barnes_base(w - 1.0)
    return math.exp(log_g)


def euler_factor(k: float, p: int) -> float:
    """One Euler-product factor of C_k at the prime p.

    The m-series has positive terms that become geometric with ratio 1/p;
    summation stops when a term drops below 1e-16 of the partial sum.
    """
    if k <= 0:
        raise ValueError("euler_factor requires k > 0")
    inv_p = 1.0 / p
    s = 1.0
    r = 1.0  # Gamma(m+k)/(m! Gamma(k)) via a stable recurrence
    x = 1.0
    for m in range(_SERIES_MAX_TERMS):
        r *= (m + k) / (m + 1)
        x *= inv_p
        term = r * r * x
        s += term
        if term < 1e-16 * s:
            break
    else:
        raise NumericError(f"euler_factor series did not converge at p={p}")
    return (1.0 - inv_p) ** (k * k) * s


def _tail_coefficients(k: float) -> tuple[float, float]:
    """Leading coefficients of log euler_factor(k, p) ~ c2/p^2 + c3/p^3."""
    c2 = -(k * k) * (k - 1.0) ** 2 / 4.0
    c3 = (k * k) * (
        (k + 1.0) ** 2 * (k + 2.0) ** 2 / 36.0
        - k * k * (k + 1.0) ** 2 / 4.0
        + k**4 / 3.0
        - 1.0 / 3.0
    )
    return c2, c3


def _prime_zeta_tail(exponent: int, cutoff: int, table: PrimeTable) -> float:
    """sum_{p > cutoff} p^-exponent: exact over the table, integral beyond."""
    ps = table.primes_in(cutoff, table.limit)
    exact = csum(np.asarray(ps, dtype=float) ** (-float(exponent))) if ps.size else 0.0
    # integral bound for p > table.limit with density 1/log t
    L = float(table.limit)
    e = float(exponent)
    tail = L ** (1.0 - e) / ((e - 1.0) * math.log(L))
    return exact + tail


def c_k(k: float, prime_cutoff: int, table: PrimeTable) -> ConjectureConstant:
    """The conjectured moment constant C_k, tail-accelerated.

    The product runs over p <= prime_cutoff; the omitted tail is re-added
    as exp(c2(k) P(2, cutoff)) with P the prime zeta tail, and tail_bound
    records the magnitude of that correction plus the next-order term.
    """
    if k <= 0:
        raise ValueError("c_k requires k > 0")
    if prime_cutoff < 100:
        raise ValueError("prime_cutoff must be >= 100")
    if prime_cutoff > table.limit:
        raise CapacityError(
            f"cutoff {prime_cutoff} beyond table limit {table.limit}"
        )
    barnes_ratio = barnes_g(k + 2.0) ** 2 / barnes_g(2.0 * k + 3.0)
    logs = [math.log(euler_factor(k, int(p)))
            for p in table.primes_in(1, prime_cutoff)]
    log_product = csum(logs)
    c2, c3 = _tail_coefficients(k)
    p2 = _prime_zeta_tail(2, prime_cutoff, table)
    p3 = _prime_zeta_tail(3, prime_cutoff, table)
    tail = c2 * p2
    tail_bound = abs(c2) * p2 + (abs(c3) + 1.0) * p3
    euler_product = math.exp(log_product + tail)
    return ConjectureConstant(
        k=k,
        barnes_ratio=barnes_ratio,
        euler_product=euler_product,
        prime_cutoff=prime_cutoff,
        tail_bound=tail_bound,
        value=barnes_ratio * euler_product,
    )


def predicted_jk(k: float, T: float, const: ConjectureConstant | None) -> float:
    """Conjectured size C_k (log T)^{k(k+2)} of the 2k-th discrete moment."""
    if T < 10:
        raise ValueError("predicted_jk requires T >= 10")
    if k == 0:
        return 1.0
    value = const.value if const is not None else 1.0
    return value * math.log(T) ** (k * (k + 2.0))


def gamma_ratio_squared(k: float, m: int) -> float:
    """(Gamma(m+k)/(m! Gamma(k)))^2 via log-gamma, for test cross-checks."""
    return math.exp(2.0 * (gammaln(m + k) - gammaln(m + 1) - gammaln(k)))
