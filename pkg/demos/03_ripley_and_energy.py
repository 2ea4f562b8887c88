#!/usr/bin/env python3
"""Ripley pair counts and Riesz energy against the uniform baseline.

Projected shells behave like uniform random points: pair counts track
N^2 r^2 / 4 and the s-energy approaches its continuum value I(s) N^2.
The Ripley count is also an arithmetic object: it equals a sum of
pair counts over inner-product shells, exactly.
"""

import math
from fractions import Fraction

from threesq import lattice, spatial

n = 100_003
pts = spatial.unit_shell(n)
N = pts.size
print(f"n = {n}, N = {N}")

print("\nRipley counts vs the random baseline N(N-1) r^2 / 4:")
print("   r        K_r      baseline    ratio   arithmetic path")
for r in (0.05, 0.1, 0.3, 0.8):
    k = spatial.ripley_k(pts, r)
    base = spatial.ripley_baseline(N, r)
    k2 = lattice.pairs_in_band(n, 0, Fraction(r) ** 2 * n)
    print(f"{r:>6.2f} {k:>10} {base:>11.0f}   {k/base:>6.3f}   {k2} "
          f"({'equal' if k == k2 else 'MISMATCH'})")

print("\nRiesz energy ratios E_s / (I(s) N^2):")
for s in (0.5, 1.0, 1.5):
    e = spatial.riesz_energy(pts, s)
    base = spatial.uniform_energy_integral(s) * N * N
    print(f"  s = {s}: {e / base:.6f}")

print("\nenergy deviation shrinks with the shell:")
for m in (101, 1009, 10009, 100_003):
    q = spatial.unit_shell(m)
    e = spatial.riesz_energy(q, 1.0)
    print(f"  n = {m:>6}: |ratio - 1| = {abs(e / (q.size ** 2) - 1):.5f}")
