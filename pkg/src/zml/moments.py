"""Discrete and continuous moments of zeta and its derivatives at zeros.

The discrete moment of order 2k averages |zeta'(rho)|^{2k} over zeros in a
window, to be compared with the conjectured size C_k (log T)^{k(k+2)}.
Shifted variants average |zeta(rho + alpha)|^{2k} on the circle |alpha| <=
1/log T, higher-derivative variants |zeta^(nu)(rho)|^{2k}, and the
continuous companion integrates |zeta(1/2+it)|^{2k} in t.  A Cauchy-circle
quadrature reconstructs derivatives from shifted values, realizing the
bound chain that links the derivative moments back to shifted ones.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import ndtr

from ._util import csum
from .conjecture import ConjectureConstant, predicted_jk
from .zeros import ZeroList
from .zetafun import (
    DEFAULT_CONFIG,
    DomainError,
    EvalConfig,
    hardy_z_many,
    zeta_em_many,
)


class EmptyWindowError(ValueError):
    """The requested window contains no zeros."""


@dataclass(frozen=True)
class MomentResult:
    """A normalized moment with its conjectural comparator."""

    kind: str  # JK | SHIFTED | DERIV | CONTINUOUS
    k: float
    nu: int
    alpha: complex | None
    t_lo: float
    t_hi: float
    count_or_length: float
    value: float
    predicted: float
    ratio: float

    def to_json(self) -> str:
        d = {
            "kind": self.kind, "k": self.k, "nu": self.nu,
            "alpha": None if self.alpha is None
            else [self.alpha.real, self.alpha.imag],
            "t_lo": self.t_lo, "t_hi": self.t_hi,
            "count": self.count_or_length, "value": self.value,
            "predicted": self.predicted, "ratio": self.ratio,
        }
        return json.dumps(d, sort_keys=True)


def _window_values(zeros: ZeroList, t_lo: float, t_hi: float) -> np.ndarray:
    idx = zeros.in_window(t_lo, t_hi)
    if idx.size == 0:
        raise EmptyWindowError(f"no zeros in ({t_lo}, {t_hi}]")
    return idx


def discrete_moment_jk(zeros: ZeroList, k: float, t_lo: float, t_hi: float,
                       const: ConjectureConstant | None = None) -> MomentResult:
    """Mean of |zeta'(rho)|^{2k} over zeros in (t_lo, t_hi].

    The comparator is C_k (log T)^{k(k+2)} when a constant is supplied,
    else the bare power of log T.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    idx = _window_values(zeros, t_lo, t_hi)
    if k == 0:
        value = 1.0
    else:
        value = csum(zeros.abs_zeta_primes[idx] ** (2.0 * k)) / idx.size
    predicted = predicted_jk(k, t_hi, const)
    return MomentResult(
        kind="JK", k=k, nu=1, alpha=None, t_lo=t_lo, t_hi=t_hi,
        count_or_length=float(idx.size), value=value, predicted=predicted,
        ratio=value / predicted,
    )


def shifted_moment(zeros: ZeroList, k: float, alpha: complex,
                   cfg: EvalConfig = DEFAULT_CONFIG,
                   t_lo: float | None = None,
                   t_hi: float | None = None) -> MomentResult:
    """Mean of |zeta(rho + alpha)|^{2k} over a zero window.

    alpha must satisfy |alpha| <= 1/log(t_hi); negative real parts are
    evaluated directly (no functional-equation detour).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    t_lo = zeros.t_lo if t_lo is None else t_lo
    t_hi = zeros.t_hi if t_hi is None else t_hi
    alpha = complex(alpha)
    if abs(alpha) > 1.0 / math.log(t_hi) * (1 + 1e-12):
        raise DomainError(
            f"|alpha|={abs(alpha):.4g} exceeds 1/log(t_hi)"
            f"={1.0/math.log(t_hi):.4g}"
        )
    idx = _window_values(zeros, t_lo, t_hi)
    g = zeros.gammas[idx]
    vals = zeta_em_many(0.5 + alpha.real, g + alpha.imag, 0, cfg)
    value = csum(np.abs(vals) ** (2.0 * k)) / idx.size
    predicted = math.log(t_hi) ** (k * k)
    return MomentResult(
        kind="SHIFTED", k=k, nu=0, alpha=alpha, t_lo=t_lo, t_hi=t_hi,
        count_or_length=float(idx.size), value=value, predicted=predicted,
        ratio=value / predicted,
    )


def derivative_moment(zeros: ZeroList, k: float, nu: int,
                      cfg: EvalConfig = DEFAULT_CONFIG,
                      t_lo: float | None = None,
                      t_hi: float | None = None) -> MomentResult:
    """Mean of |zeta^(nu)(rho)|^{2k} over a zero window.

    nu = 1 reuses the stored |zeta'| values and therefore reproduces
    discrete_moment_jk exactly; higher orders differentiate the zeta series
    directly.  The companion circle-quadrature bound lives in
    cauchy_circle_bound.
    """
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if k < 0.5:
        raise ValueError("k must be >= 1/2")
    t_lo = zeros.t_lo if t_lo is None else t_lo
    t_hi = zeros.t_hi if t_hi is None else t_hi
    idx = _window_values(zeros, t_lo, t_hi)
    if nu == 1:
        powers = zeros.abs_zeta_primes[idx] ** (2.0 * k)
    else:
        vals = zeta_em_many(0.5, zeros.gammas[idx], nu, cfg)
        powers = np.abs(vals) ** (2.0 * k)
    value = csum(powers) / idx.size
    predicted = math.log(t_hi) ** (k * (k + 2.0 * nu))
    return MomentResult(
        kind="DERIV", k=k, nu=nu, alpha=None, t_lo=t_lo, t_hi=t_hi,
        count_or_length=float(idx.size), value=value, predicted=predicted,
        ratio=value / predicted,
    )


def cauchy_circle_deriv(gamma: float, nu: int, radius: float,
                        nodes: int = 64,
                        cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Reconstruct zeta^(nu)(1/2 + i gamma) from the circle |alpha|=radius.

    Trapezoid rule on the Cauchy integral; spectrally accurate since the
    nearest singularities (neighboring zeros are harmless, the pole at
    s = 1 is far) lie well outside the circle.
    """
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    ring = radius * np.exp(1j * theta)
    vals = np.array([
        complex(zeta_em_many(0.5 + a.real, np.array([gamma + a.imag]), 0,
                             cfg)[0])
        for a in ring
    ])
    coeff = (vals * np.exp(-1j * nu * theta)).mean()
    return math.factorial(nu) * coeff / radius**nu


def cauchy_circle_bound(zeros: ZeroList, k: float, nu: int,
                        cfg: EvalConfig = DEFAULT_CONFIG,
                        t_lo: float | None = None,
                        t_hi: float | None = None,
                        nodes: int = 64) -> dict:
    """Both sides of the derivative-moment bound chain, evaluated finitely.

    direct: (1/N) sum |zeta^(nu)(rho)|^{2k}.
    bound:  (nu!/2pi)^{2k} (log T)^{2k(nu+1)} (1/N) sum (contour integral
            of |zeta| over the circle of radius 1/log T)^{2k}.
    """
    t_lo = zeros.t_lo if t_lo is None else t_lo
    t_hi = zeros.t_hi if t_hi is None else t_hi
    idx = _window_values(zeros, t_lo, t_hi)
    g = zeros.gammas[idx]
    r = 1.0 / math.log(t_hi)
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    acc = np.zeros(g.size)
    for th in theta:
        a = r * complex(math.cos(th), math.sin(th))
        vals = zeta_em_many(0.5 + a.real, g + a.imag, 0, cfg)
        acc += np.abs(vals)
    contour = acc * (2.0 * math.pi * r / nodes)  # integral of |zeta| |dalpha|
    direct = derivative_moment(zeros, k, nu, cfg, t_lo, t_hi).value
    prefactor = (math.factorial(nu) / (2 * math.pi)) ** (2 * k)
    logpow = math.log(t_hi) ** (2 * k * (nu + 1))
    bound = prefactor * logpow * csum(contour ** (2 * k)) / g.size
    return {
        "k": k, "nu": nu, "t_lo": t_lo, "t_hi": t_hi, "count": int(g.size),
        "radius": r, "nodes": nodes, "direct": direct, "bound": bound,
        "holds": bool(direct <= bound),
    }


def continuous_moment_ik(k: float, T: float, step: float = 0.01,
                         cfg: EvalConfig = DEFAULT_CONFIG) -> MomentResult:
    """(1/T) integral of |zeta(1/2+it)|^{2k} dt over [0, T], by Simpson.

    |zeta(1/2+it)| = |Z(t)|, so the fast Z route supplies the integrand.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if step > 0.01:
        raise ValueError("step must be <= 0.01")
    n = int(math.ceil(T / step))
    if n % 2:
        n += 1
    ts = np.linspace(0.0, T, n + 1)
    integrand = np.empty_like(ts)
    chunk = 200_000
    for lo in range(0, ts.size, chunk):
        hi = min(lo + chunk, ts.size)
        integrand[lo:hi] = np.abs(hardy_z_many(ts[lo:hi], cfg, fast=True)) ** (
            2.0 * k
        )
    value = float(simpson(integrand, x=ts)) / T
    predicted = math.log(T) ** (k * k)
    return MomentResult(
        kind="CONTINUOUS", k=k, nu=0, alpha=None, t_lo=0.0, t_hi=T,
        count_or_length=float(T), value=value, predicted=predicted,
        ratio=value / predicted,
    )


def hejhal_clt_stats(zeros: ZeroList, t_lo: float, t_hi: float) -> dict:
    """Distributional statistics of log|zeta'(rho)| over a window.

    Standardizes by the theoretical center loglog T and variance
    (1/2) loglog T, reports the Kolmogorov-Smirnov distance to the
    standard normal (both standardizations), and a fixed 50-bin histogram
    on [-5, 5].  Degenerate zeros are excluded and counted.
    """
    idx = zeros.in_window(t_lo, t_hi)
    azp = zeros.abs_zeta_primes[idx]
    good = azp >= 1e-6
    excluded = int((~good).sum())
    x = np.log(azp[good])
    if x.size < 100:
        raise ValueError("window must contain at least 100 usable zeros")
    mean = float(x.mean())
    variance = float(x.var(ddof=1))
    loglog = math.log(math.log(t_hi))
    scale = math.sqrt(0.5 * loglog)
    std_theory = (x - loglog) / scale
    std_empirical = (x - mean) / math.sqrt(variance)
    hist, edges = np.histogram(std_theory, bins=50, range=(-5.0, 5.0))
    return {
        "count": int(x.size),
        "excluded": excluded,
        "mean": mean,
        "variance": variance,
        "loglog_T": loglog,
        "ks_distance": _ks_to_normal(std_theory),
        "ks_distance_empirical": _ks_to_normal(std_empirical),
        "histogram": hist.tolist(),
        "bin_edges": edges.tolist(),
    }


def _ks_to_normal(sample: np.ndarray) -> float:
    s = np.sort(sample)
    n = s.size
    cdf = ndtr(s)
    upper = np.max(np.arange(1, n + 1) / n - cdf)
    lower = np.max(cdf - np.arange(0, n) / n)
    return float(max(upper, lower))


@dataclass(frozen=True)
class DyadicWindow:
    """Unnormalized moment mass of one dyadic window (may be empty)."""

    t_lo: float
    t_hi: float
    count: int
    power_sum: float


@dataclass(frozen=True)
class DyadicDecomposition:
    windows: tuple
    moment: MomentResult


def dyadic_jk(k: float, T: float, zeros: ZeroList,
              const: ConjectureConstant | None = None) -> DyadicDecomposition:
    """Split (0, T] into windows (2^-i T, 2^{1-i} T] and recombine.

    Empty windows are reported with count 0, not raised; the recombined
    moment equals discrete_moment_jk(k, (0, T]) up to rounding.
    """
    windows = []
    upper = T
    while upper > 7.0:
        lower = upper / 2.0
        idx = zeros.in_window(lower, upper)
        psum = (
            csum(zeros.abs_zeta_primes[idx] ** (2.0 * k)) if idx.size else 0.0
        )
        if k == 0:
            psum = float(idx.size)
        windows.append(DyadicWindow(t_lo=lower, t_hi=upper,
                                    count=int(idx.size), power_sum=psum))
        upper = lower
    # final sliver (0, upper] holds no zeros once upper < 7
    total = csum([w.power_sum for w in windows])
    count = sum(w.count for w in windows)
    if count == 0:
        raise EmptyWindowError(f"no zeros below {T}")
    value = 1.0 if k == 0 else total / count
    predicted = predicted_jk(k, T, const)
    moment = MomentResult(
        kind="JK", k=k, nu=1, alpha=None, t_lo=0.0, t_hi=T,
        count_or_length=float(count), value=value, predicted=predicted,
        ratio=value / predicted,
    )
    return DyadicDecomposition(windows=tuple(windows), moment=moment)
