#!/usr/bin/env python3
"""Covering radius and equal-area cell occupancy.

The covering radius comes from convex-hull facet planes (exact) with a
Fibonacci-mesh validator, and scales like a negative power of N.  Cell
occupancy second moments stay near the n^(1/2) mark expected when no
cell hoards points.
"""

import math

from threesq import spatial

print("covering radius of projected shells (times N^(1/4) and N^(1/2)):")
for n in (101, 1009, 10009, 100_003, 1_000_003):
    pts = spatial.unit_shell(n)
    m = spatial.covering_radius(pts)
    print(f"  n = {n:>7}: N = {pts.size:>5}  M = {m:.4f}  "
          f"M N^0.25 = {m * pts.size ** 0.25:.3f}  M N^0.5 = {m * pts.size ** 0.5:.2f}")

pts = spatial.unit_shell(1009)
exact = spatial.covering_radius(pts)
mesh = spatial.covering_radius_mesh(pts, resolution=2e-3)
print(f"\nhull vs mesh at n = 1009: {exact:.6f} vs {mesh:.6f} "
      f"(gap {exact - mesh:.2e}, mesh resolution 2e-3)")

print("\nequal-area cell second moments, K = ceil(sqrt(n)) cells:")
for n in (10_009, 100_003, 1_000_003):
    pts = spatial.unit_shell(n)
    K = math.isqrt(n) + 1
    sum_counts, sum_squares = spatial.box_moment(pts, K)
    print(f"  n = {n:>7}: K = {K:>4}  sum = {sum_counts:>5}  "
          f"sum of squares = {sum_squares:>6}  / sqrt(n) = {sum_squares / math.sqrt(n):.2f}")
