import math

import numpy as np
import pytest

from threesq import twosquares as ts
from threesq.errors import DomainError


# ---------------------------------------------------------------- oracles

def brute_two_squares(n: int) -> bool:
    a = 0
    while a * a * 2 <= n:
        b = math.isqrt(n - a * a)
        if a * a + b * b == n:
            return True
        a += 1
    return False


# --------------------------------------------------------------- membership

def test_membership_pinned():
    assert ts.is_sum_two_squares(0)
    assert not ts.is_sum_two_squares(7)
    assert ts.is_sum_two_squares(9)  # ord_3 = 2
    assert ts.is_sum_two_squares(2)
    assert not ts.is_sum_two_squares(21)


def test_membership_matches_brute_search():
    for n in range(0, 5000):
        assert ts.is_sum_two_squares(n) == brute_two_squares(n), n


def test_membership_rejects_negative():
    with pytest.raises(DomainError):
        ts.is_sum_two_squares(-1)


# ------------------------------------------------------------------ windows

def test_window_nine():
    w = ts.window(9)
    assert w.members.tolist() == [9, 10, 13, 16, 17]
    assert w.max_gap == 3
    assert w.argmax_pair == (10, 13)


def test_window_degenerate():
    w = ts.window(1)
    assert w.members.tolist() == [1]
    assert w.max_gap == 0
    assert w.argmax_pair is None


def test_window_agrees_with_membership():
    for y in (9, 50, 1000, 12345):
        w = ts.window(y)
        got = set(w.members.tolist())
        for n in range(y, 2 * y):
            assert (n in got) == ts.is_sum_two_squares(n), (y, n)


def test_windows_tile_without_overlap():
    a = ts.window(100).members
    b = ts.window(200).members
    joined = np.concatenate([a, b])
    assert (np.diff(joined) > 0).all()
    assert joined.min() >= 100 and joined.max() < 400


def test_gap_scan_rows():
    rows = ts.gap_scan([9, 1000])
    assert rows[0] == (9, 3, pytest.approx(3 / 9**0.25))
    y, g, ratio = rows[1]
    assert ratio == pytest.approx(g / 1000**0.25)


# ------------------------------------------------------------------- probes

def test_probe_small():
    res = ts.gap_probe(5, 1)
    assert res.best_x3 == 4  # 5 + 4 = 9 is a sum of two squares
    assert res.certified_distance == 1
    assert res.distance == 0  # 10 = 1 + 9
    assert res.pole_in_sequence


def test_probe_m_one():
    # the only probe point below the pole is (+-1, 0, 0): 1 + 0 = 1 qualifies
    res = ts.gap_probe(1, 1)
    assert res.best_x3 == 0
    assert res.certified_distance == 1
    assert res.distance == 0  # 2 = 1 + 1


def test_probe_soundness_identity():
    for m in (5, 13, 29, 101, 977):
        res = ts.gap_probe(m, min(2 * m - 1, 8))
        assert res.distance >= 0
        if res.best_x3 is not None:
            assert ts.is_sum_two_squares(m + res.best_x3)
            assert res.distance <= res.certified_distance
        # exact distance verified independently
        assert ts.is_sum_two_squares(2 * m - res.distance) or ts.is_sum_two_squares(
            2 * m + res.distance
        )
        for d in range(res.distance):
            assert not ts.is_sum_two_squares(2 * m - d)
            assert not ts.is_sum_two_squares(2 * m + d)


def test_probe_exhausted_reported_not_raised():
    # m = 2, height 1: near-pole shell 4 - x3^2 has no solution at x3 = 1
    res = ts.gap_probe(2, 1)
    assert res.best_x3 is None
    assert res.certified_distance is None
    assert res.distance == 0  # 4 = 4 + 0


# ------------------------------------------------------------- rough numbers

def test_rough_interval_check_windows():
    for y in (10_000, 100_000):
        ok, worst, need = ts.rough_interval_check(y)
        assert ok, (y, worst, need)
