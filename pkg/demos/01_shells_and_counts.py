#!/usr/bin/env python3
"""Enumerate integer points on spheres and close the counting circle.

Three ways to the same number: direct enumeration of x1^2+x2^2+x3^2 = n,
12 or 24 times a class number, and (24/pi) sqrt(n) L(1, chi).  Shells
with n = 4^a(8b+7) stay empty.
"""

import math

from threesq import arith, lattice

print("n    N_n   12h/24h   (24/pi) sqrt(n) L(1,chi)")
for n in [5, 6, 11, 14, 21, 30, 101, 2027, 9998]:
    ls = lattice.enumerate_points(n)
    by_class = arith.gauss_count(n)
    by_l = 24 / math.pi * math.sqrt(n) * arith.dirichlet_l_one(n, 1e-9)
    print(f"{n:<5} {ls.size:<5} {by_class:<9} {by_l:.6f}")

print()
print("empty shells below 50:", [n for n in range(1, 50) if lattice.enumerate_points(n).size == 0])
print("(all of the form 4^a(8b+7))")

ls = lattice.enumerate_points(5)
print()
print("E(5) is the signed-permutation orbit of (0, 1, 2):")
print(ls.points.tolist())
