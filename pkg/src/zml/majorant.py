"""Dirichlet-polynomial majorant for log|zeta'(rho)| and zero classification.

The central inequality bounds log|zeta'(1/2 + i gamma)| by a smoothed
prime sum at sigma_x = 1/2 + 1/log x plus loglog T + log T/log x, up to a
bounded constant that is never assumed: every check here reports empirical
slack.  Splitting the primes into geometric ranges T^{beta_i} turns the
sum into per-range Dirichlet polynomials whose size thresholds sort zeros
into a compliant set and exceptional classes.

Parameters are carried in log scale: the regimes where several ranges are
active correspond to T far beyond floating-point range (the schedule for
threshold constant 1000 needs log T > e^{1000 k}), and the desk-scale
threshold constant of 2 keeps every quantity computable while exercising
exactly the same machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from ._util import csum
from .primes import CapacityError, PrimeTable, von_mangoldt_L
from .zeros import CoverageError, ZeroList
from .zetafun import DEFAULT_CONFIG, EvalConfig, hardy_z_deriv

#: Threshold constant as stated for the asymptotic regime; with this value
#: no computable T admits even one active range.
THRESHOLD_C_ASYMPTOTIC = 1000.0

#: Desk-mode default: small enough that moderate log T activates ranges.
THRESHOLD_C_DESK = 2.0

#: Range-size growth ratio of the geometric exponent schedule.
BETA_RATIO = 20.0

#: Exponent of the classification thresholds beta_i^(-3/4).
THRESHOLD_EXPONENT = -0.75

#: |zeta'| below this is treated as numerically degenerate (log unreliable).
DEGENERATE_ZPRIME = 1e-6


class ClassificationDisabledError(RuntimeError):
    """The schedule has no active range (n_levels = 0)."""


@dataclass(frozen=True)
class BetaSchedule:
    """Geometric exponent schedule beta_i = 20^(i-1) / (loglog T)^2.

    ``betas`` holds beta_0 = 0 through beta_{n_levels+1} (one past the last
    active level, so the cut can be checked); ``interval_bounds[i]`` is
    T^{beta_i}, spanning the active prime ranges only.  ``T`` may be inf
    when log_T exceeds float range; all computations use log_T.
    """

    k: float
    T: float
    log_T: float
    loglog_T: float
    threshold_c: float
    betas: tuple
    n_levels: int
    interval_bounds: tuple

    def beta(self, i: int) -> float:
        return self.betas[i]

    def bound(self, i: int) -> float:
        """T^{beta_i}, the upper end of range i."""
        return self.interval_bounds[i]

    def threshold(self, i: int) -> float:
        """Classification threshold beta_i^{-3/4} for range i >= 1."""
        return self.betas[i] ** THRESHOLD_EXPONENT


def beta_schedule_from_log(k: float, log_T: float,
                           threshold_c: float = THRESHOLD_C_ASYMPTOTIC
                           ) -> BetaSchedule:
    """Build the schedule from log T directly (T itself may overflow)."""
    if k <= 0:
        raise ValueError("k must be > 0")
    if threshold_c <= 0:
        raise ValueError("threshold_c must be > 0")
    if log_T < math.log(100.0):
        raise ValueError("requires T >= 100")
    loglog_T = math.log(log_T)
    denom = loglog_T * loglog_T
    cut = math.exp(-threshold_c * k)
    n_levels = 0
    while BETA_RATIO**n_levels / denom <= cut:
        n_levels += 1
    betas = [0.0] + [BETA_RATIO ** (i - 1) / denom
                     for i in range(1, n_levels + 2)]
    bounds = [1.0] + [
        math.exp(b * log_T) if b * log_T < 709.0 else math.inf
        for b in betas[1 : n_levels + 1]
    ]
    T = math.exp(log_T) if log_T < 700.0 else math.inf
    return BetaSchedule(
        k=k, T=T, log_T=log_T, loglog_T=loglog_T, threshold_c=threshold_c,
        betas=tuple(betas), n_levels=n_levels, interval_bounds=tuple(bounds),
    )


def beta_schedule(k: float, T: float,
                  threshold_c: float = THRESHOLD_C_ASYMPTOTIC) -> BetaSchedule:
    """Schedule for an explicit T >= 100 (see beta_schedule_from_log)."""
    if not T >= 100.0:
        raise ValueError("requires T >= 100")
    return beta_schedule_from_log(k, math.log(T), threshold_c)


# ----------------------------------------------------------------------
# Weights and per-range Dirichlet polynomials
# ----------------------------------------------------------------------


def dirichlet_weight(n: int, j: int, sched: BetaSchedule) -> float:
    """Taper weight of n in the level-j prime sum; always in [0, 1].

    Combines the restricted von Mangoldt density Lambda_L(n)/log n (L =
    log T), the damping n^{-1/(beta_j log T)}, and a logarithmic taper that
    vanishes at the range's upper end T^{beta_j}.
    """
    if not (1 <= j <= sched.n_levels):
        raise ValueError(f"level j={j} outside 1..{sched.n_levels}")
    if n < 2:
        raise ValueError("n must be >= 2")
    log_bound = sched.betas[j] * sched.log_T
    logn = math.log(n)
    if logn > log_bound:
        raise ValueError(f"n={n} beyond range bound T^beta_j")
    lam = von_mangoldt_L(n, sched.log_T)
    if lam == 0.0:
        return 0.0
    return (lam / logn) * math.exp(-logn / log_bound) * (1.0 - logn / log_bound)


def _range_support(i: int, j: int, sched: BetaSchedule, table: PrimeTable):
    """Support of range i at level j: (n values, weights w_j(n))."""
    lo = sched.interval_bounds[i - 1]
    hi = sched.interval_bounds[i]
    if hi > table.limit:
        raise CapacityError(
            f"range bound {hi:.3e} exceeds prime table limit {table.limit}"
        )
    ns: list[int] = [int(p) for p in table.primes_in(lo, hi)]
    sq_lo, sq_hi = math.sqrt(lo), math.sqrt(hi)
    for q in table.primes_in(sq_lo, sq_hi):
        if q <= sched.log_T:
            ns.append(int(q) * int(q))
    ns.sort()
    w = np.array([dirichlet_weight(n, j, sched) for n in ns])
    keep = w > 0
    return np.array(ns, dtype=float)[keep], w[keep]


def dirichlet_block_many(ts, i: int, j: int, sched: BetaSchedule,
                         table: PrimeTable) -> np.ndarray:
    """Level-j range-i Dirichlet polynomial Re sum w_j(n) n^{-1/2-it},
    evaluated over an array of ordinates."""
    if not (1 <= i <= j <= sched.n_levels):
        raise ValueError(f"need 1 <= i <= j <= {sched.n_levels}")
    ts = np.asarray(ts, dtype=float)
    ns, w = _range_support(i, j, sched, table)
    if ns.size == 0:
        return np.zeros(ts.shape)
    coeff = w / np.sqrt(ns)
    return np.cos(np.outer(ts, np.log(ns))) @ coeff


def dirichlet_block(t: float, i: int, j: int, sched: BetaSchedule,
                    table: PrimeTable) -> float:
    """Scalar version of dirichlet_block_many with compensated summation."""
    if not (1 <= i <= j <= sched.n_levels):
        raise ValueError(f"need 1 <= i <= j <= {sched.n_levels}")
    ns, w = _range_support(i, j, sched, table)
    if ns.size == 0:
        return 0.0
    return csum(w / np.sqrt(ns) * np.cos(t * np.log(ns)))


# ----------------------------------------------------------------------
# The majorant for log |zeta'(rho)|
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MajorantBreakdown:
    """Both sides of the log|zeta'| bound at one zero, term by term.

    slack = (dirichlet_sum + loglog_term + ratio_term) - lhs; positive
    slack means the inequality holds with the bounded constant set to 0.
    """

    gamma: float
    x: float
    sigma_x: float
    dirichlet_sum: float
    loglog_term: float
    ratio_term: float
    lhs: float
    slack: float
    degenerate: bool = False


def _majorant_coefficients(x: float, L: float, table: PrimeTable):
    """Support and sigma-independent pieces of the smoothed prime sum."""
    if x > table.limit:
        raise CapacityError(f"x={x} exceeds prime table limit {table.limit}")
    logx = math.log(x)
    ns = [int(p) for p in table.primes_in(1, x)]
    ns += [int(q) ** 2 for q in table.primes_in(1, math.sqrt(x)) if q <= L]
    ns.sort()
    ns = np.array(ns, dtype=float)
    logn = np.log(ns)
    lam_over_logn = np.array(
        [von_mangoldt_L(int(n), L) for n in ns]
    ) / logn
    taper = (logx - logn) / logx
    return ns, logn, lam_over_logn * taper


def majorant_dirichlet_sum(gammas, x: float, T: float,
                           table: PrimeTable) -> np.ndarray:
    """Re sum_{n <= x} Lambda_L(n) n^{-sigma_x - i gamma} taper / log n,
    vectorized over ordinates (L = log T)."""
    logx = math.log(x)
    sigma_x = 0.5 + 1.0 / logx
    ns, logn, coeff = _majorant_coefficients(x, math.log(T), table)
    damped = coeff * np.exp(-sigma_x * logn)
    gammas = np.atleast_1d(np.asarray(gammas, dtype=float))
    return np.cos(np.outer(gammas, logn)) @ damped


def majorant_breakdown(gamma: float, x: float, T: float, table: PrimeTable,
                       cfg: EvalConfig = DEFAULT_CONFIG) -> MajorantBreakdown:
    """Evaluate the log|zeta'| bound at one zero ordinate."""
    if not (2.0 <= x <= T * T):
        raise ValueError("need 2 <= x <= T^2")
    logx = math.log(x)
    sigma_x = 0.5 + 1.0 / logx
    dsum = float(majorant_dirichlet_sum(gamma, x, T, table)[0])
    loglog_term = math.log(math.log(T))
    ratio_term = math.log(T) / logx
    azp = abs(hardy_z_deriv(gamma, cfg))
    degenerate = azp < DEGENERATE_ZPRIME
    lhs = math.log(azp) if not degenerate else float("nan")
    rhs = dsum + loglog_term + ratio_term
    return MajorantBreakdown(
        gamma=gamma, x=x, sigma_x=sigma_x, dirichlet_sum=dsum,
        loglog_term=loglog_term, ratio_term=ratio_term, lhs=lhs,
        slack=rhs - lhs if not degenerate else float("nan"),
        degenerate=degenerate,
    )


def majorant_slack_scan(zeros: ZeroList, table: PrimeTable) -> dict:
    """Slack of the bound over dyadic windows (T, 2T] with x = T.

    Stored |zeta'| values supply the left side.  Returns per-window
    statistics plus the global minimum slack; the per-window maxima of the
    deficit (-slack) quantify the bounded constant empirically.
    """
    t_hi = zeros.t_hi
    windows = []
    upper = t_hi
    while upper / 2.0 >= FIRST_WINDOW_FLOOR:
        windows.append((upper / 2.0, upper))
        upper /= 2.0
    out = {"windows": [], "min_slack": math.inf}
    for (a, b) in reversed(windows):
        idx = zeros.in_window(a, b)
        if idx.size == 0:
            continue
        g = zeros.gammas[idx]
        lhs = np.log(zeros.abs_zeta_primes[idx])
        dsum = majorant_dirichlet_sum(g, a, a, table)
        rhs = dsum + math.log(math.log(a)) + 1.0
        slack = rhs - lhs
        rec = {
            "t_lo": a,
            "t_hi": b,
            "count": int(idx.size),
            "min_slack": float(slack.min()),
            "max_deficit": float((-slack).max()),
        }
        out["windows"].append(rec)
        out["min_slack"] = min(out["min_slack"], rec["min_slack"])
    return out


FIRST_WINDOW_FLOOR = 20.0


# ----------------------------------------------------------------------
# Sum over neighboring zeros of the Poisson-type kernel
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroKernelSum:
    """Sum over zeros != rho of a/(a^2 + (gamma - gamma~)^2), a = 1/log x.

    ``value`` includes the density-model tail for zeros outside the window;
    ``tail`` reports that correction's size, and doubling the window moves
    the value by less than it.
    """

    value: float
    explicit: float
    tail: float
    window: float


def zero_kernel_sum(gamma: float, x: float, zeros: ZeroList,
                    window: float | None = None) -> ZeroKernelSum:
    """Aggregate kernel mass near one zero; strictly positive."""
    a = 1.0 / math.log(x)
    W = window if window is not None else max(1000.0 / math.log(x), 50.0)
    if W < 1000.0 / math.log(x):
        raise ValueError("window below the 1000/log x coverage floor")
    if zeros.t_hi < gamma + W:
        raise CoverageError(
            f"kernel sum at gamma={gamma} needs zeros up to {gamma + W:.1f}"
        )
    if zeros.t_lo > max(0.0, gamma - W):
        raise CoverageError("kernel sum needs zeros from the window start")
    g = zeros.gammas
    near = g[(g > gamma - W) & (g < gamma + W)]
    near = near[np.abs(near - gamma) > 1e-9]  # exclude rho itself
    # conjugate zeros at negative ordinates enter through reflection
    reflected = -g[(g < W - gamma) & (g > 0)]
    offsets = np.concatenate([near, reflected]) - gamma
    explicit = csum(a / (a * a + offsets * offsets))

    def density_kernel(u: float) -> float:
        dens = max(0.0, math.log(abs(u) / (2 * math.pi))) / (2 * math.pi)
        return a / (a * a + (gamma - u) ** 2) * dens

    tail_hi, _ = quad(density_kernel, gamma + W, math.inf)
    tail_lo, _ = quad(density_kernel, -math.inf, gamma - W)
    tail = tail_hi + tail_lo
    return ZeroKernelSum(value=explicit + tail, explicit=explicit, tail=tail,
                         window=W)


# ----------------------------------------------------------------------
# Classification of zeros by Dirichlet-polynomial size
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroClass:
    """Label of one zero: "T" (all thresholds met) or "S(j)".

    witness records the first violated threshold as a pair (i, level);
    present exactly when the label is not "T".
    """

    label: str
    witness: tuple | None

    def __post_init__(self):
        if (self.witness is None) != (self.label == "T"):
            raise ValueError("witness present iff label != 'T'")


def classify_zero(gamma: float, sched: BetaSchedule, table: PrimeTable,
                  g_eval: Callable[[int, int], float] | None = None,
                  ) -> ZeroClass:
    """Sort one zero into "T", "S(0)", ..., "S(n_levels - 1)".

    Class "S(0)" means the range-1 polynomial breaches its threshold at
    some level; "S(j)" that ranges up to j comply at every level but range
    j+1 breaches somewhere; "T" that every range complies everywhere.
    ``g_eval`` overrides the polynomial evaluation (testing hook).
    """
    I = sched.n_levels
    if I < 1:
        raise ClassificationDisabledError(
            "schedule has no active range: beta_1 = "
            f"{sched.betas[1]:.3e} exceeds exp(-c k) = "
            f"{math.exp(-sched.threshold_c * sched.k):.3e}; lower "
            "threshold_c (desk mode uses 2) or raise T"
        )
    if g_eval is None:
        def g_eval(i, ell):
            return dirichlet_block(gamma, i, ell, sched, table)

    memo: dict[tuple, float] = {}

    def G(i, ell):
        if (i, ell) not in memo:
            memo[(i, ell)] = g_eval(i, ell)
        return memo[(i, ell)]

    def level_compliant(i):
        thr = sched.threshold(i)
        for ell in range(i, I + 1):
            if abs(G(i, ell)) > thr:
                return (i, ell)
        return None

    first_breach = level_compliant(1)
    if first_breach is not None:
        return ZeroClass(label="S(0)", witness=first_breach)
    j = 1
    while j <= I - 1:
        breach = level_compliant(j + 1)
        if breach is None:
            j += 1
            continue
        # ranges 1..j comply everywhere, range j+1 breaches
        return ZeroClass(label=f"S({j})", witness=breach)
    return ZeroClass(label="T", witness=None)


def classification_census(zeros: ZeroList, window_lo: float, window_hi: float,
                          sched: BetaSchedule, table: PrimeTable) -> list[dict]:
    """Classify every zero in a window; rows match the report CSV columns
    gamma,label,witness_i,witness_ell,G_max_over_thresholds."""
    idx = zeros.in_window(window_lo, window_hi)
    g = zeros.gammas[idx]
    I = sched.n_levels
    if I < 1:
        raise ClassificationDisabledError("schedule has no active range")
    blocks = {
        (i, ell): dirichlet_block_many(g, i, ell, sched, table)
        for i in range(1, I + 1)
        for ell in range(i, I + 1)
    }
    rows = []
    for m, gamma in enumerate(g):
        def g_eval(i, ell, _m=m):
            return float(blocks[(i, ell)][_m])

        cls = classify_zero(float(gamma), sched, table, g_eval=g_eval)
        ratio = max(
            abs(blocks[(i, ell)][m]) / sched.threshold(i)
            for i in range(1, I + 1)
            for ell in range(i, I + 1)
        )
        rows.append({
            "gamma": float(gamma),
            "label": cls.label,
            "witness_i": cls.witness[0] if cls.witness else "",
            "witness_ell": cls.witness[1] if cls.witness else "",
            "G_max_over_thresholds": ratio,
        })
    return rows


def level_sum_deficit(zeros: ZeroList, window_lo: float, window_hi: float,
                      sched: BetaSchedule, table: PrimeTable) -> np.ndarray:
    """log|zeta'| minus the aggregated level-I bound, per zero in window.

    The bound is sum_i G_{i,I}(gamma) + loglog T + 1/beta_I; its empirical
    deficit should stay bounded (and not grow between dyadic windows).
    """
    I = sched.n_levels
    if I < 1:
        raise ClassificationDisabledError("schedule has no active range")
    idx = zeros.in_window(window_lo, window_hi)
    g = zeros.gammas[idx]
    total = np.zeros(g.size)
    for i in range(1, I + 1):
        total += dirichlet_block_many(g, i, I, sched, table)
    rhs = total + sched.loglog_T + 1.0 / sched.betas[I]
    lhs = np.log(zeros.abs_zeta_primes[idx])
    return lhs - rhs
