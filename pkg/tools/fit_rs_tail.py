#!/usr/bin/env python3
"""Fit the residual tail of the Riemann-Siegel expansion.

With the four analytic correction terms C0..C3 in place, the remaining
defect of the expansion behaves like

    (-1)^(N-1) tau^(-1/2) [ C4(z)/tau^4 + C5(z)/tau^5 + ... ]

This script measures that defect against the package's own Euler-Maclaurin
route (no external oracle involved) on a grid of (z, tau) pairs, fits four
tail profiles C4..C7 per Chebyshev node, and writes them as a generated
data module src/zml/_rs_tail_data.py.  The tail pushes the usable range of
the expansion down to t = 50 at ~1e-7 absolute error.

Run from the repository root after any change to the analytic terms:

    python tools/fit_rs_tail.py
"""

import math
from pathlib import Path

import numpy as np

import zml.zetafun as zf

OUT = Path(__file__).resolve().parent.parent / "src" / "zml" / "_rs_tail_data.py"

TWO_PI = 2.0 * math.pi
DEG = 96
# Beyond N ~ 32 the tau^4.5 rescaling amplifies float noise of the
# Euler-Maclaurin reference above the C4 signal, so larger N are excluded.
N_VALUES = [2, 3, 4, 5, 6, 8, 11, 16, 23, 32]
N_TAIL_TERMS = 4


def main():
    # make sure the analytic-only correction is what we calibrate against
    zf._rs_tail_series.cache_clear()
    zf._RS_TAIL_DISABLED = True

    cfg = zf.EvalConfig(em_terms=14, em_cutoff=64, target_abs_error=1e-13)
    nodes = np.cos(math.pi * (2 * np.arange(DEG + 1) + 1) / (2 * (DEG + 1)))
    p = (1.0 - nodes) / 2.0

    resid = np.empty((len(N_VALUES), nodes.size))
    taus = np.empty_like(resid)
    for i, N in enumerate(N_VALUES):
        tau = N + p
        t = TWO_PI * tau * tau
        theta = zf.rs_theta(t)
        zem = (np.exp(1j * theta) * zf.zeta_em_many(0.5, t, 0, cfg)).real
        zrs = zf._hardy_z_rs_arrays(t, zf.EvalConfig(rs_correction_terms=4))
        sign = (-1.0) ** (N - 1)
        resid[i] = (zem - zrs) * sign * tau**4.5
        taus[i] = tau
        print(f"N={N}: max |scaled resid| = {np.abs(resid[i]).max():.4e}")

    # per-node least squares in powers of 1/tau
    coeffs = np.empty((N_TAIL_TERMS, nodes.size))
    for j in range(nodes.size):
        A = np.vander(1.0 / taus[:, j], N_TAIL_TERMS, increasing=True)
        sol, *_ = np.linalg.lstsq(A, resid[:, j], rcond=None)
        coeffs[:, j] = sol

    # low-degree least squares: the profiles are smooth and the samples
    # carry per-node noise, so full-degree interpolation would oscillate
    # near the interval ends (visible as jumps across main-sum boundaries)
    chebs = [
        np.polynomial.chebyshev.chebfit(nodes, coeffs[m], 40)
        for m in range(N_TAIL_TERMS)
    ]

    lines = [
        '"""Generated by tools/fit_rs_tail.py; do not edit by hand.',
        "",
        "Chebyshev coefficients of the fitted Riemann-Siegel tail profiles",
        'C4..C7 on z in [-1, 1]."""',
        "",
        "TAIL_CHEB = (",
    ]
    for c in chebs:
        vals = [float(v) for v in c]
        body = ",\n        ".join(
            ", ".join(f"{v!r}" for v in vals[k : k + 4]) for k in range(0, len(vals), 4)
        )
        lines.append(f"    ({body}),")
    lines.append(")")
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}")

    del zf._RS_TAIL_DISABLED
    zf._rs_tail_series.cache_clear()


if __name__ == "__main__":
    main()
