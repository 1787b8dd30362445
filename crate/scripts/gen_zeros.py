#!/usr/bin/env python3
"""Regenerate crates/core/data/zeros_10k.txt: the first 10^4 ordinates of
nontrivial zeta zeros.

Sign changes of the Hardy Z-function are located on a fine grid with a
vectorized Riemann-Siegel sum, refined, then polished with mpmath.siegelz.
The resulting count is checked against mpmath.zetazero at sample indices.
"""
import sys
import numpy as np
import mpmath
from scipy.optimize import brentq

COUNT = 10_000
T_END = 9878.5  # just above gamma_10000 = 9877.7826...
STEP = 0.004


def theta(t):
    return t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3)


def z_rs(t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    a = np.sqrt(t / (2 * np.pi))
    m = np.floor(a).astype(int)
    th = theta(t)
    out = np.zeros_like(t)
    for n in range(1, m.max() + 1):
        mask = m >= n
        out[mask] += np.cos(th[mask] - t[mask] * np.log(n)) / np.sqrt(n)
    out *= 2
    p = a - m
    psi = np.cos(2 * np.pi * (p * p - p - 1 / 16)) / np.cos(2 * np.pi * p)
    out += (-1.0) ** (m - 1) * a ** -0.5 * psi
    return out


def main(path):
    mpmath.mp.dps = 25
    zl = lambda x: float(mpmath.siegelz(x))
    brackets = []
    # low heights: mpmath directly
    grid = np.arange(10.0, 100.0, 0.01)
    vals = np.array([zl(x) for x in grid])
    for i in np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]:
        brackets.append((grid[i], grid[i + 1], True))
    start = grid[-1]
    chunk = 200_000
    t0 = start
    prev_t, prev_v = None, None
    while t0 < T_END:
        g = np.arange(t0, min(t0 + chunk * STEP, T_END), STEP)
        v = z_rs(g)
        if prev_t is not None:
            g = np.concatenate([[prev_t], g])
            v = np.concatenate([[prev_v], v])
        for i in np.nonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]:
            brackets.append((g[i], g[i + 1], False))
        prev_t, prev_v = g[-1], v[-1]
        t0 = g[-1] + STEP
    zeros = []
    for a, b, exact in brackets:
        f = zl if exact else (lambda x: float(z_rs(x)[0]))
        x = brentq(f, a, b, xtol=1e-12)
        # polish with mpmath
        x = float(mpmath.findroot(mpmath.siegelz, (mpmath.mpf(x) - 1e-7, mpmath.mpf(x) + 1e-7), solver="secant", tol=1e-28))
        zeros.append(x)
    zeros.sort()
    print("found", len(zeros), file=sys.stderr)
    for idx in [1, 100, 1000, 2000, 5000, 7005, 8000, 9000, COUNT]:
        ref = float(mpmath.zetazero(idx).imag)
        print(idx, ref, zeros[idx - 1], abs(ref - zeros[idx - 1]), file=sys.stderr)
        assert abs(ref - zeros[idx - 1]) < 1e-8, idx
    zeros = zeros[:COUNT]
    with open(path, "w") as fh:
        fh.write("# Ordinates of the first %d nontrivial zeros of the Riemann zeta function\n" % COUNT)
        fh.write("# generated by scripts/gen_zeros.py (Riemann-Siegel scan, mpmath polish)\n")
        for z in zeros:
            fh.write("%.12f\n" % z)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/data/zeros_10k.txt")
