"""Explicit-formula checks: sums of (a/b)^{i gamma} over zeros.

The uniform Landau-type formula predicts, for integers a > b >= 1,

    sum_{T < gamma <= 2T} (a/b)^{i gamma}
        = -(T/2pi) Lambda(a/b)/sqrt(a/b) + O(sqrt(ab) (log T)^2),

with the a < b case handled by conjugation.  The implied constant is not
quantified, so checks report the empirical constant against envelope
multiples of sqrt(ab) (log T)^2 rather than asserting a fixed one.  The
same diagonal/off-diagonal split powers the comparison of mixed zero sums
against their random-model expectations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import csum
from .majorant import BetaSchedule, dirichlet_block_many
from .primes import PrimeTable, von_mangoldt
from .random_model import mixed_moment_expectation
from .zeros import CoverageError, ZeroList

#: Exponent of the off-diagonal error term T^{e/25} in mixed zero sums.
MIXED_ERROR_EXPONENT = math.e / 25.0


@dataclass(frozen=True)
class LandauCheck:
    """Empirical zero sum for the ratio a/b over (T, 2T] vs its main term."""

    a: int
    b: int
    t_lo: float
    t_hi: float
    count: int
    empirical: complex
    main_term: float
    error_envelope: float

    @property
    def deviation(self) -> float:
        """|empirical - main term|, the quantity the envelope bounds."""
        return abs(self.empirical - self.main_term)

    @property
    def envelope_constant(self) -> float:
        """Smallest constant c with deviation <= c * envelope."""
        return self.deviation / self.error_envelope


def _ratio_von_mangoldt(a: int, b: int) -> float:
    """Lambda(a/b), nonzero only when the reduced ratio is a prime power."""
    g = math.gcd(a, b)
    r, s = a // g, b // g
    if s != 1 or r == 1:
        return 0.0
    return von_mangoldt(r)


def landau_sum(a: int, b: int, zeros: ZeroList, T: float) -> LandauCheck:
    """Evaluate sum (a/b)^{i gamma} over (T, 2T] against the main term."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive integers")
    if zeros.t_lo > T or zeros.t_hi < 2 * T:
        raise CoverageError(
            f"zeros cover ({zeros.t_lo}, {zeros.t_hi}]; need ({T}, {2*T}]"
        )
    idx = zeros.in_window(T, 2 * T)
    g = zeros.gammas[idx]
    log_ratio = math.log(a) - math.log(b)
    re = csum(np.cos(g * log_ratio))
    im = csum(np.sin(g * log_ratio))
    if a >= b:
        lam = _ratio_von_mangoldt(a, b)
        root = math.sqrt(a / b)
    else:
        lam = _ratio_von_mangoldt(b, a)
        root = math.sqrt(b / a)
    main = -(T / (2 * math.pi)) * lam / root if a != b else 0.0
    return LandauCheck(
        a=a, b=b, t_lo=T, t_hi=2 * T, count=int(idx.size),
        empirical=complex(re, im), main_term=main,
        error_envelope=math.sqrt(a * b) * math.log(T) ** 2,
    )


def landau_survey(zeros: ZeroList, T: float, ratios) -> list[LandauCheck]:
    """landau_sum over a list of (a, b) pairs; rows for the report CSV."""
    return [landau_sum(a, b, zeros, T) for (a, b) in ratios]


@dataclass(frozen=True)
class MixedZeroSum:
    """Mixed zero sum against its random-model prediction.

    model_bound combines count * expectation with the magnitude of the
    off-diagonal error term; secondary_sign_ok records whether dropping
    the (non-positive) off-diagonal main terms indeed left an upper bound.
    """

    ell: tuple
    t_lo: float
    t_hi: float
    count: int
    zero_sum: float
    expectation: float
    error_magnitude: float
    model_bound: float
    secondary_sign_ok: bool


def mixed_zero_sum(ell, j: int, sched: BetaSchedule, zeros: ZeroList,
                   table: PrimeTable) -> MixedZeroSum:
    """sum over (T, 2T] of prod_i G_i(gamma)^{ell_i} vs the model bound.

    T is the schedule's T; the exponent tuple must obey the moment-method
    constraint ell_i <= 2 e^2 k beta_i^{-3/4}.
    """
    ell = tuple(int(x) for x in ell)
    if len(ell) > j:
        raise ValueError("ell longer than the level count")
    if sched.n_levels < 1:
        raise ValueError("schedule has no active range")
    T = sched.T
    if not math.isfinite(T):
        raise ValueError("schedule T out of float range; zero sums need T")
    for i, li in enumerate(ell, start=1):
        cap = 2.0 * math.e**2 * sched.k * sched.threshold(i)
        if li > cap:
            raise ValueError(
                f"ell_{i}={li} violates the constraint {cap:.2f}"
            )
    idx = zeros.in_window(T, 2 * T)
    g = zeros.gammas[idx]
    prod = np.ones(g.size)
    for i, li in enumerate(ell, start=1):
        if li:
            prod *= dirichlet_block_many(g, i, j, sched, table) ** li
    zero_sum = csum(prod)
    expectation = mixed_moment_expectation(ell, j, sched, table)
    err = T**MIXED_ERROR_EXPONENT * math.log(T) ** 2
    bound = g.size * expectation + err
    return MixedZeroSum(
        ell=ell, t_lo=T, t_hi=2 * T, count=int(g.size),
        zero_sum=zero_sum, expectation=expectation, error_magnitude=err,
        model_bound=bound, secondary_sign_ok=bool(zero_sum <= bound),
    )
