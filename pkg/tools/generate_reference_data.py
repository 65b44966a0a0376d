#!/usr/bin/env python3
"""Generate high-precision reference data for the test suite.

Everything here is computed with mpmath at elevated working precision and
written to tests/data/reference.json. The test suite treats these numbers
as an independent oracle; nothing in src/ is imported here.

Run from the repository root:

    python tools/generate_reference_data.py
"""

import json
import math
import time
from pathlib import Path

import mpmath
from mpmath import mp, mpf

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "reference.json"

N_ZEROS = 1517          # covers (0, 2000]
N_ZETA_PRIME = 100


def small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, limit + 1) if sieve[i]]


def gen_zeros(data):
    t0 = time.time()
    zs = []
    for n in range(1, N_ZEROS + 1):
        zs.append(float(mpmath.zetazero(n).imag))
        if n % 200 == 0:
            print(f"  zero {n}/{N_ZEROS}  ({time.time()-t0:.0f}s)")
    data["zeros_im"] = zs
    print(f"zeros done in {time.time()-t0:.0f}s")

    t0 = time.time()
    zp = []
    for n in range(1, N_ZETA_PRIME + 1):
        rho = mpmath.zetazero(n)
        zp.append(float(abs(mpmath.zeta(rho, derivative=1))))
    data["abs_zeta_prime"] = zp
    print(f"zeta' done in {time.time()-t0:.0f}s")


def gen_theta_gram(data):
    data["theta"] = {
        str(t): float(mpmath.siegeltheta(t))
        for t in [1, 5, 14.134725141734694, 20, 50, 100, 1000, 10000, 100000]
    }
    data["gram"] = {str(n): float(mpmath.grampoint(n)) for n in [-1, 0, 1, 2, 10, 100]}
    # Rounded Riemann-von Mangoldt counts theta(T)/pi + 1 at window edges.
    data["zero_counts"] = {
        str(T): int(mpmath.nint(mpmath.siegeltheta(T) / mpmath.pi + 1))
        for T in [50, 100, 1000, 2000, 10000, 100000]
    }


def gen_z_values(data):
    pts = [0.5, 5.0, 20.0, 49.0, 50.0, 75.0, 100.0, 150.0, 200.0, 500.0,
           1000.0, 2500.0, 5000.0, 7005.1, 10000.0, 100000.0]
    data["siegel_z"] = {str(t): float(mpmath.siegelz(t)) for t in pts}
    dpts = [14.134725141734694, 30.0, 100.0, 500.0, 1000.0, 6000.0, 100000.0]
    data["siegel_z_prime"] = {str(t): float(mpmath.siegelz(t, derivative=1)) for t in dpts}


def gen_zeta_values(data):
    vals = {}
    for (sig, t) in [(0.5, 0.0), (0.5, 25.0), (0.5, 333.3), (0.5, 1000.0),
                     (0.645, 333.3), (0.35, 120.0), (0.52, 14.1347251417),
                     (2.0, 0.0), (0.0, 0.0), (-0.5, 3.0), (0.5, 100000.0)]:
        v = mpmath.zeta(mpmath.mpc(sig, t))
        vals[f"{sig}_{t}"] = [float(v.real), float(v.imag)]
    data["zeta"] = vals
    dvals = {}
    for (sig, t, nu) in [(0.5, 14.134725141734694, 1), (0.0, 0.0, 1), (2.0, 0.0, 2),
                         (0.5, 1000.0, 1), (0.5, 333.3, 2), (0.5, 100000.0, 1)]:
        v = mpmath.zeta(mpmath.mpc(sig, t), derivative=nu)
        dvals[f"{sig}_{t}_{nu}"] = [float(v.real), float(v.imag)]
    data["zeta_deriv"] = dvals


def gen_bessel_barnes(data):
    data["bessel_i0"] = {
        str(x): float(mpmath.besseli(0, x))
        for x in [0.1, 0.5, 2.0, 10.0, 14.9, 15.1, 30.0, 100.0, 700.0]
    }
    data["barnes_g"] = {
        str(z): float(mpmath.barnesg(z))
        for z in [0.3, 0.5, 1.0, 1.5, 2.0, 2.5, 3.2, 4.0, 5.0, 6.5, 7.0]
    }


def euler_factor_mp(k, p):
    """HKO Euler factor at prime p, direct series summation."""
    k = mpf(k)
    s = mpf(1)
    r = mpf(1)  # Gamma(m+k)/(m! Gamma(k)) by recurrence
    m = 0
    while True:
        r = r * (m + k) / (m + 1)
        m += 1
        term = r * r * mpf(p) ** (-m)
        s += term
        if term < mpf(10) ** (-30) * s:
            break
    return (1 - mpf(1) / p) ** (k * k) * s


def gen_ck(data):
    primes = small_primes(400000)
    out = {}
    for k in [0.5, 1.0, 2.0]:
        t0 = time.time()
        logprod = mpf(0)
        checkpoints = {}
        for p in primes:
            logprod += mpmath.log(euler_factor_mp(k, p))
            if p in (99991, 199999, 399989):
                pass
        # recompute at the three cutoffs cheaply: accumulate progressively
        logprod = mpf(0)
        cut_targets = [100000, 200000, 400000]
        ci = 0
        for p in primes:
            if ci < len(cut_targets) and p > cut_targets[ci]:
                checkpoints[str(cut_targets[ci])] = float(mpmath.e**logprod)
                ci += 1
            logprod += mpmath.log(euler_factor_mp(k, p))
        while ci < len(cut_targets):
            checkpoints[str(cut_targets[ci])] = float(mpmath.e**logprod)
            ci += 1
        barnes_ratio = mpmath.barnesg(k + 2) ** 2 / mpmath.barnesg(2 * k + 3)
        out[str(k)] = {
            "barnes_ratio": float(barnes_ratio),
            "euler_product_at_cutoff": checkpoints,
            "c_k_at_400000": float(barnes_ratio * mpmath.e**logprod),
        }
        print(f"  c_k k={k} done ({time.time()-t0:.0f}s)")
    data["ck"] = out
    data["euler_factor"] = {
        "0.5_2": float(euler_factor_mp(0.5, 2)),
        "2_2": float(euler_factor_mp(2, 2)),
        "2_3": float(euler_factor_mp(2, 3)),
        "1.7_5": float(euler_factor_mp(1.7, 5)),
    }


def gen_prime_sums(data):
    primes = small_primes(1000000)
    s = mpf(0)
    for p in primes:
        s += mpf(1) / p
    data["sum_recip_primes_1e6"] = float(s)
    data["mertens_constant"] = 0.2614972128476427837554268386
    # Chebyshev psi(x) = sum_{n<=x} Lambda(n) at 1e4, 1e5, 1e6
    psi = {}
    for X in [10000, 100000, 1000000]:
        tot = mpf(0)
        for p in primes:
            if p > X:
                break
            pk = p
            while pk <= X:
                tot += mpmath.log(p)
                pk *= p
        psi[str(X)] = float(tot)
    data["chebyshev_psi"] = psi


def gen_majorant_slack(data):
    """Slack of the log|zeta'| majorant at the first zero, T = 100, x = 100.

    Weighted prime sum uses: all primes n <= x, plus squares p^2 with
    p <= log T and p^2 <= x.
    """
    T = mpf(100)
    x = mpf(100)
    logT = mpmath.log(T)
    logx = mpmath.log(x)
    sigma = mpf(1) / 2 + 1 / logx
    rho = mpmath.zetazero(1)
    gamma = rho.imag
    primes = small_primes(100)
    total = mpf(0)
    for p in primes:
        lam = mpmath.log(p)
        n = mpf(p)
        term = lam / (n**sigma * mpmath.log(n)) * mpmath.log(x / n) / logx
        total += term * mpmath.cos(gamma * mpmath.log(n))
    for p in primes:
        if p <= logT and p * p <= x:
            n = mpf(p * p)
            lam = mpmath.log(p)
            term = lam / (n**sigma * mpmath.log(n)) * mpmath.log(x / n) / logx
            total += term * mpmath.cos(gamma * mpmath.log(n))
    lhs = mpmath.log(abs(mpmath.zeta(rho, derivative=1)))
    rhs = total + mpmath.log(logT) + logT / logx
    data["majorant_slack_gamma1_T100_x100"] = {
        "dirichlet_sum": float(total),
        "lhs": float(lhs),
        "slack": float(rhs - lhs),
    }


def gen_weight_example(data):
    # taper weight of n=2 at level j=1 for loglog T = 10 scale parameters
    logT = mpmath.e**10
    beta1 = mpf(1) / 100
    expo = 1 / (beta1 * logT)
    w = (
        mpf(2) ** (-expo)
        * (beta1 * logT - mpmath.log(2))
        / (beta1 * logT)
    )
    data["weight_n2_j1_loglogT10"] = float(w)


def gen_landau(data):
    zs = data["zeros_im"]
    window = [g for g in zs if 1000.0 < g <= 2000.0]
    out = {"count_1000_2000": len(window)}
    for ratio in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12]:
        lr = math.log(ratio)
        re = math.fsum(math.cos(g * lr) for g in window)
        im = math.fsum(math.sin(g * lr) for g in window)
        out[str(ratio)] = [re, im]
    data["landau_sums_1000_2000"] = out


def main():
    mp.dps = 25
    data = {}
    gen_theta_gram(data)
    gen_z_values(data)
    gen_zeta_values(data)
    gen_bessel_barnes(data)
    gen_weight_example(data)
    gen_majorant_slack(data)
    print("scalar references done")
    gen_prime_sums(data)
    print("prime sums done")
    gen_ck(data)
    print("euler products done")
    gen_zeros(data)
    gen_landau(data)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1))
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
