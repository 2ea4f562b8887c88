#!/usr/bin/env python3
"""Count variance in shrinking caps and nearest-neighbour spacings.

Two independent routes to the variance of cap counts over random
centers: Monte Carlo sampling and the zonal series
sum h(m)^2/(4 pi) * aggregate(m).  Both land near N * area, the value a
Poisson point count would have.  Rescaled nearest-neighbour spacings are
compared with the unit-mean exponential law.
"""

from threesq import harmonics, spatial

n = 1009
pts = spatial.unit_shell(n)
N = pts.size
print(f"n = {n}, N = {N}")

print("\ncap area    MC variance    series     N*area")
for sigma in (0.3, 0.1, 0.02):
    spec = spatial.AnnulusSpec.cap_of_area(sigma)
    mc = spatial.number_variance(pts, spec, 200_000, seed=8)
    sr = harmonics.variance_series(None, spec, 400, points=pts)
    print(f"{sigma:>7.2f} {mc.variance:>12.3f} {sr.value:>10.3f} {N*sigma:>10.3f}")

print("\nannuli work the same way:")
spec = spatial.AnnulusSpec(0.3, 0.6)
mc = spatial.number_variance(pts, spec, 200_000, seed=9)
sr = harmonics.variance_series(None, spec, 400, points=pts)
print(f"rho = (0.3, 0.6): MC {mc.variance:.3f}, series {sr.value:.3f}, "
      f"N*area {N*spec.area:.3f}")

rep = spatial.nn_spacings(pts)
print(f"\nrescaled nearest-neighbour spacings: mean {rep.mean:.3f} "
      f"(exponential law has mean 1)")
print(f"Kolmogorov-Smirnov distance to 1 - exp(-x): {rep.ks_distance_to_exp:.4f}")

base = spatial.nn_spacings(spatial.binomial_sample(N, 5))
print(f"binomial baseline with the same N: mean {base.mean:.3f}, "
      f"KS {base.ks_distance_to_exp:.4f}")
