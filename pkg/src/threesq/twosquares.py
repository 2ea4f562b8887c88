"""Integers that are sums of two squares: sieve, gaps, and pole probes.

Membership is the classical criterion (every prime p = 3 mod 4 divides
to an even power).  Windows [Y, 2Y) are sieved in segments: for each
small prime p = 3 mod 4 the exact p-adic valuation of each multiple is
computed, and a single residue check mod 4 catches the at-most-one large
bad prime that can survive.

The probe connects lattice points near the pole of the sphere of radius
m to gap certificates: a point (x1, x2, x3) with x1^2 + x2^2 =
(m - x3)(m + x3) and m + x3 a sum of two squares certifies that
2m = (m + x3) + (m - x3) is within m - x3 of the sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import primes as _primes
from .arith import factorize
from .errors import DomainError, InvariantError
from .lattice import points_near_pole

_SEGMENT = 1 << 21


def is_sum_two_squares(n: int) -> bool:
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n == 0:
        return True
    return all(k % 2 == 0 for p, k in factorize(n).factors if p % 4 == 3)


@dataclass
class TwoSquaresWindow:
    y: int
    members: np.ndarray  # sorted members of the sequence in [Y, 2Y)
    max_gap: int
    argmax_pair: tuple[int, int] | None


def _sieve_segment(lo: int, hi: int, bad_primes: list[int]) -> np.ndarray:
    """Membership flags for [lo, hi); bad_primes are the 3 mod 4 primes
    up to sqrt(hi - 1)."""
    size = hi - lo
    res = np.arange(lo, hi, dtype=np.int64)
    excluded = np.zeros(size, dtype=bool)
    for p in bad_primes:
        start = (-lo) % p
        idx = np.arange(start, size, p)
        if len(idx) == 0:
            continue
        vals = res[idx] // p
        odd = np.ones(len(idx), dtype=bool)
        mask = vals % p == 0
        while mask.any():
            vals[mask] //= p
            odd[mask] ^= True
            mask = vals % p == 0
        excluded[idx[odd]] = True
        res[idx] = vals
    # strip powers of two, then any residue = 3 mod 4 hides one large bad prime
    mask = (res & 1) == 0
    while mask.any():
        res[mask] >>= 1
        mask &= (res & 1) == 0
    excluded |= res % 4 == 3
    return ~excluded


def window(y: int) -> TwoSquaresWindow:
    """All sums of two squares in [Y, 2Y) and the largest internal gap."""
    if y < 1:
        raise DomainError("Y must be positive")
    hi_total = 2 * y
    bad = [
        int(p)
        for p in _primes.primes_up_to(math.isqrt(hi_total - 1)).tolist()
        if p % 4 == 3
    ]
    chunks = []
    lo = y
    while lo < hi_total:
        hi = min(lo + _SEGMENT, hi_total)
        flags = _sieve_segment(lo, hi, bad)
        chunks.append(np.arange(lo, hi, dtype=np.int64)[flags])
        lo = hi
    members = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
    if len(members) < 2:
        return TwoSquaresWindow(y, members, 0, None)
    gaps = np.diff(members)
    k = int(np.argmax(gaps))
    return TwoSquaresWindow(
        y, members, int(gaps[k]), (int(members[k]), int(members[k + 1]))
    )


def gap_scan(y_values) -> list[tuple[int, int, float]]:
    """Rows (Y, G(Y), G(Y) / Y^(1/4)); the ratio is a monitor, the
    elementary bound's constant is not specified."""
    out = []
    for y in y_values:
        w = window(int(y))
        out.append((int(y), w.max_gap, w.max_gap / int(y) ** 0.25))
    return out


@dataclass
class ProbeResult:
    m: int
    height: int
    delta: float  # smoothness exponent the caller worked with
    best_x3: int | None  # largest qualifying x3 strictly below the pole
    certified_distance: int | None  # m - best_x3, an upper bound certificate
    distance: int  # exact dist(2m, sums of two squares)
    pole_in_sequence: bool  # whether 2m itself is a sum of two squares
    smooth_cutoff: int
    m_is_rough: bool  # m free of prime factors below the cutoff
    candidates: int  # near-pole points examined


def gap_probe(m: int, height: int, delta: float = 0.1) -> ProbeResult:
    """Probe dist(2m, sums of two squares) through near-pole points.

    A point with x3 < m and m + x3 in the sequence certifies
    dist <= m - x3 (since 2m = (m + x3) + (m - x3)); the exact distance
    comes from an independent outward scan.  `delta` is the smoothness
    exponent recorded alongside (rough means no prime factor below
    max(2, height^(1/2))); the certified bound can only be trusted to
    exist for rough m, but whenever a certificate is found it is checked
    unconditionally.
    """
    if not 0 < delta < 1:
        raise DomainError("delta must lie in (0, 1)")
    pts = points_near_pole(m, height)
    best: int | None = None
    for x1, x2, x3 in pts.tolist():
        if x3 == m:
            continue
        if x1 * x1 + x2 * x2 != (m - x3) * (m + x3):
            raise InvariantError("near-pole point fails the factorization identity")
        if is_sum_two_squares(m + x3):
            if best is None or x3 > best:
                best = x3
    dist = 0
    while not (is_sum_two_squares(2 * m - dist) or is_sum_two_squares(2 * m + dist)):
        dist += 1
    cutoff = max(2, math.isqrt(max(height, 1)))
    rough = all(p >= cutoff for p, _ in factorize(m).factors) if m > 1 else True
    if best is not None and dist > m - best:
        raise InvariantError("certificate shorter than the exact distance")
    return ProbeResult(
        m=m,
        height=height,
        delta=delta,
        best_x3=best,
        certified_distance=None if best is None else m - best,
        distance=dist,
        pole_in_sequence=is_sum_two_squares(2 * m),
        smooth_cutoff=cutoff,
        m_is_rough=rough,
        candidates=len(pts),
    )


def rough_interval_check(y: int, delta: float = 0.1) -> tuple[bool, int, int]:
    """Every length-G/8 subinterval of [Y, 2Y) holds a G^delta-rough number?

    Returns (ok, max run of non-rough integers, required bound G/8); at
    desk scale the cutoff G^delta stays below 2 and the check is vacuous,
    which is recorded rather than hidden.
    """
    w = window(y)
    g = w.max_gap
    if g <= 0:
        return True, 0, 0
    cutoff = int(g**delta)
    need = max(1, g // 8)
    if cutoff < 2:
        return True, 0, need
    smooth_ps = [int(p) for p in _primes.primes_up_to(cutoff).tolist()]
    flags = np.ones(y, dtype=bool)  # rough flags for [Y, 2Y)
    for p in smooth_ps:
        start = (-y) % p
        flags[start::p] = False
    runs = np.diff(np.flatnonzero(np.concatenate([[True], flags, [True]])))
    worst = int(runs.max() - 1) if len(runs) else 0
    return worst < need, worst, need
