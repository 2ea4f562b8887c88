import io
import math

import numpy as np
import pytest

from threesq import lattice
from threesq.errors import DomainError


# ---------------------------------------------------------------- oracles

def brute_enumerate(n):
    """Full signed triple loop; the reference for small n."""
    pts = []
    r = math.isqrt(n)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            rem = n - x * x - y * y
            if rem < 0:
                continue
            z = math.isqrt(rem)
            if z * z == rem:
                pts.append((x, y, z))
                if z:
                    pts.append((x, y, -z))
    return [list(p) for p in sorted(pts)]


def convolution_counts(limit):
    """N_n for all n <= limit via triple convolution of square counts."""
    base = np.zeros(limit + 1)
    for z in range(math.isqrt(limit) + 1):
        base[z * z] += 1 if z == 0 else 2
    r2 = np.convolve(base, base)[: limit + 1]
    r3 = np.convolve(r2, base)[: limit + 1]
    return np.rint(r3).astype(np.int64)


# ------------------------------------------------------------- enumeration

def test_enumerate_pinned_sets():
    assert lattice.enumerate_points(1).points.tolist() == brute_enumerate(1)
    assert lattice.enumerate_points(1).size == 6
    assert lattice.enumerate_points(7).size == 0
    e5 = lattice.enumerate_points(5)
    assert e5.size == 24
    assert e5.points.tolist() == brute_enumerate(5)
    # signed permutations of (2, 1, 0) only
    assert all(sorted(map(abs, p)) == [0, 1, 2] for p in e5.points.tolist())


def test_enumerate_matches_brute_small():
    for n in range(1, 200):
        assert lattice.enumerate_points(n).points.tolist() == brute_enumerate(n), n


def test_enumerate_counts_match_convolution_to_10000():
    counts = convolution_counts(10_000)
    for n in range(1, 10_001):
        assert lattice.enumerate_points(n).size == counts[n], n
    lattice.enumerate_points.cache_clear()


def test_enumerate_empty_iff_4a_8b7():
    for n in range(1, 600):
        empty = lattice.enumerate_points(n).size == 0
        assert empty == (not lattice.three_squares_representable(n)), n


def test_primitive_flags():
    e4 = lattice.enumerate_points(4)
    assert e4.size == 6 and not e4.primitive.any()  # all (0,0,+-2) type
    e5 = lattice.enumerate_points(5)
    assert e5.primitive.all()


def test_enumerate_rejects_nonpositive():
    with pytest.raises(DomainError):
        lattice.enumerate_points(0)


# -------------------------------------------------------------- pair tables

def test_pair_table_octahedron_census():
    assert lattice.pair_table(1).entries == {1: 6, 0: 24, -1: 6}


def test_pair_table_marginals():
    tbl = lattice.pair_table(2)
    assert tbl.total == 144  # N = 12
    for n in (1, 2, 3, 5, 6, 9, 17, 38):
        tbl = lattice.pair_table(n)
        N = lattice.enumerate_points(n).size
        assert tbl.total == N * N
        assert tbl.entries[n] == N and tbl.entries[-n] == N
        assert max(tbl.entries) == n
        assert all(tbl.entries[-t] == c for t, c in tbl.entries.items())


def test_pair_table_against_brute_double_loop():
    for n in (1, 2, 3, 5, 6, 11):
        pts = brute_enumerate(n)
        hist = {}
        for a in pts:
            for b in pts:
                t = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
                hist[t] = hist.get(t, 0) + 1
        assert lattice.pair_table(n).entries == hist, n


def test_pair_table_empty_flagged():
    tbl = lattice.pair_table(7)
    assert tbl.empty


def test_pair_count_pinned():
    assert lattice.pair_count(1, 0) == 24  # each axis point has 4 orthogonal mates
    assert lattice.pair_count(5, 5) == 24  # diagonal pairs
    assert lattice.pair_count(5, 4) == 72


# ------------------------------------------------------------ distance bands

def test_pairs_in_band_pinned():
    assert lattice.pairs_in_band(1, 0, 3) == 24  # only |x-y|^2 = 2 qualifies
    assert lattice.pairs_in_band(5, 0, 2.5) == 72  # single closest shell
    for n in (1, 5, 6):
        N = lattice.enumerate_points(n).size
        assert lattice.pairs_in_band(n, 0, 8 * n) == N * N - N


def test_pairs_in_band_additive_on_shells():
    n = 38
    for cut in (3.1, 7.9, 20.3):  # cuts that avoid the even shell values
        total = lattice.pairs_in_band(n, 0, 4 * n + 1)
        assert (
            lattice.pairs_in_band(n, 0, cut) + lattice.pairs_in_band(n, cut, 4 * n + 1)
            == total
        )


def test_pairs_in_band_strictness():
    # |x-y|^2 = 2 pairs must be excluded by a = 2 and b = 2 alike
    assert lattice.pairs_in_band(1, 2, 3) == 0
    assert lattice.pairs_in_band(1, 0, 2) == 0
    assert lattice.pairs_in_band(1, 1.9999, 2.0001) == 24


def test_pairs_in_band_infinite_upper():
    N = lattice.enumerate_points(5).size
    assert lattice.pairs_in_band(5, 0, math.inf) == N * N - N


# ---------------------------------------------------------- near-pole points

def test_points_near_pole_pinned():
    assert lattice.points_near_pole(5, 0).tolist() == [[0, 0, 5]]
    got = lattice.points_near_pole(5, 1).tolist()
    # oracle: brute scan of E(25) with x3 >= 4
    expect = sorted(p for p in brute_enumerate(25) if p[2] >= 4)
    assert got == expect
    assert len(got) == 5  # pole plus (+-3, 0, 4) and (0, +-3, 4)


def test_points_near_pole_on_sphere():
    for m, h in ((5, 3), (12, 5), (30, 9)):
        pts = lattice.points_near_pole(m, h)
        assert (np.sum(pts * pts, axis=1) == m * m).all()
        expect = sorted(p for p in brute_enumerate(m * m) if p[2] >= m - h)
        assert pts.tolist() == expect


def test_points_near_pole_rejects_big_height():
    with pytest.raises(DomainError):
        lattice.points_near_pole(5, 10)


# ------------------------------------------------------------- serialization

def test_point_roundtrip():
    ls = lattice.enumerate_points(5)
    buf = io.StringIO()
    lattice.save_points(ls, buf)
    text = buf.getvalue()
    assert text.startswith("# n=5 N=24\n")
    back = lattice.load_points(io.StringIO(text))
    assert back.n == 5
    assert back.points.tolist() == ls.points.tolist()


def test_pair_table_csv():
    text = lattice.pair_table_csv(lattice.pair_table(1))
    assert text.splitlines()[0] == "t,count"
    assert "0,24" in text
