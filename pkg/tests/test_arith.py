import math
from fractions import Fraction

import pytest

from threesq import arith, lattice
from threesq.errors import DomainError


# ---------------------------------------------------------------- oracles

def brute_legendre(a: int, p: int) -> int:
    """Quadratic residue test by enumerating all squares mod p."""
    a %= p
    if a == 0:
        return 0
    squares = {x * x % p for x in range(1, p)}
    return 1 if a in squares else -1


def brute_pair_count(n: int, t: int) -> int:
    """Direct double loop over all integer solutions, no numpy."""
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
    return sum(
        1
        for a in pts
        for b in pts
        if a[0] * b[0] + a[1] * b[1] + a[2] * b[2] == t
    )


# ------------------------------------------------------------ factorization

def test_factorize_unit():
    assert arith.factorize(1).factors == ()


def test_factorize_small():
    assert arith.factorize(12).factors == ((2, 2), (3, 1))
    assert arith.factorize(97).factors == ((97, 1),)


def test_factorize_roundtrip_large():
    n = 2**40 + 1
    f = arith.factorize(n)
    prod = 1
    for p, k in f.factors:
        assert arith.is_prime(p)
        # independent primality check: trial division to the root
        assert all(p % q for q in range(2, min(p, 10**6)) if q * q <= p)
        prod *= p**k
    assert prod == n


def test_factorize_zero_rejected():
    with pytest.raises(DomainError):
        arith.factorize(0)


def test_is_prime_matches_trial_division():
    for n in range(2, 2000):
        assert arith.is_prime(n) == all(n % d for d in range(2, math.isqrt(n) + 1))


def test_squarefree_and_squarefull():
    assert arith.is_squarefree(30)
    assert not arith.is_squarefree(12)
    assert arith.is_squarefull(1)
    assert arith.is_squarefull(72 * 2)  # 144 = 2^4 3^2
    assert not arith.is_squarefull(12)


# ----------------------------------------------------------------- symbols

def test_kronecker_examples():
    assert arith.kronecker(-20, 3) == 1
    assert arith.kronecker(-4, 2) == 0
    # -20 = 1 mod 7 is a square mod 7; the residue oracle settles the sign
    assert brute_legendre(-20, 7) == 1
    assert arith.kronecker(-20, 7) == 1


def test_kronecker_matches_legendre_at_odd_primes():
    for p in (3, 5, 7, 11, 13, 31, 97):
        for d in range(-50, 51):
            if d % p:
                assert arith.kronecker(d, p) == brute_legendre(d, p), (d, p)


def test_kronecker_multiplicative_in_bottom():
    for d in (-3, -4, -20, -24, 5, 12, -163):
        for m1 in range(1, 40):
            for m2 in range(1, 40):
                assert arith.kronecker(d, m1 * m2) == arith.kronecker(
                    d, m1
                ) * arith.kronecker(d, m2)


# ------------------------------------------------------------ class numbers

def test_class_number_pinned():
    # hand enumeration of reduced forms:
    #  d=-4: (1,0,1); d=-20: (1,0,5),(2,2,3); d=-23: (1,1,6),(2,+-1,3)
    assert arith.class_number(-4) == 1
    assert arith.class_number(-20) == 2
    assert arith.class_number(-23) == 3
    assert arith.class_number(-3) == 1
    assert arith.class_number(-11) == 1
    assert arith.class_number(-24) == 2
    assert arith.class_number(-163) == 1


def test_class_number_rejects_bad_inputs():
    with pytest.raises(DomainError):
        arith.class_number(5)
    with pytest.raises(DomainError):
        arith.class_number(-12)  # 4*3, 3 = 3 mod 4 but -12/4 = -3 = 1 mod 4
    with pytest.raises(DomainError):
        arith.class_number(-18)


def test_discriminant_rule():
    assert arith.discriminant(5).d == -20
    assert arith.discriminant(3).d == -3
    assert arith.discriminant(7).d == -7
    assert arith.discriminant(1).d == -4
    with pytest.raises(DomainError):
        arith.discriminant(12)


# ----------------------------------------------------------------- L-values

def test_l_value_closed_forms():
    assert arith.dirichlet_l_one(5, 1e-10) == pytest.approx(2 * math.pi / math.sqrt(20), abs=1e-10)
    assert arith.dirichlet_l_one(2, 1e-10) == pytest.approx(math.pi / math.sqrt(8), abs=1e-10)
    assert arith.dirichlet_l_one(1, 1e-10) == pytest.approx(math.pi / 4, abs=1e-10)
    assert arith.dirichlet_l_one(3, 1e-10) == pytest.approx(math.pi / (3 * math.sqrt(3)), abs=1e-10)


def test_l_value_class_number_consistency():
    eps = 1e-9
    for n in (1, 2, 3, 5, 6, 10, 11, 13, 21, 30, 101, 1009):
        lval = arith.dirichlet_l_one(n, eps)
        assert abs(lval - arith.class_number_l_value(n)) <= 2 * eps


def test_l_value_rejects_7_mod_8():
    with pytest.raises(DomainError):
        arith.dirichlet_l_one(7, 1e-8)
    with pytest.raises(DomainError):
        arith.dirichlet_l_one(12, 1e-8)


# ------------------------------------------------------------- point counts

def test_gauss_count_pinned():
    assert arith.gauss_count(5) == 24  # 12 * h(-20)
    assert arith.gauss_count(11) == 24  # 24 * h(-11)
    assert arith.gauss_count(6) == 24  # 12 * h(-24)


def test_gauss_count_matches_enumeration():
    for n in range(4, 400):
        if n % 8 == 7 or not arith.is_squarefree(n):
            continue
        assert arith.gauss_count(n) == lattice.enumerate_points(n).size, n


def test_gauss_count_domain_errors():
    for bad in (2, 3, 7, 15, 12, 75):
        with pytest.raises(DomainError):
            arith.gauss_count(bad)


# ------------------------------------------------------ multiplicative bounds

def test_majorant_squarefree_pinned():
    assert arith.majorant_squarefree(5, 8) == 1  # powers of two contribute 1
    assert arith.majorant_squarefree(5, 9) == 3  # chi(3) = +1, sum over 3 terms
    assert arith.majorant_squarefree(5, 5) == 1  # p | n, exponent 1


def test_majorant_squarefree_multiplicative():
    f = arith.majorant_squarefree
    for a in (3, 4, 7, 9, 25, 11):
        for b in (8, 13, 27, 49):
            if math.gcd(a, b) == 1:
                assert f(5, a * b) == f(5, a) * f(5, b)


def test_majorant_general_pinned():
    assert arith.majorant_general(4, 4, 8) == 1
    assert arith.majorant_general(9, 9, 3) == 2  # p | m, k = 1 gives k + 1
    assert arith.majorant_general(1, 5, 9) == 3  # reduces to the squarefree case


def test_majorant_general_literal_variant_has_a_gap():
    # p = 3 divides n = 12, is coprime to m = 4, exponent 2: no literal value
    assert arith.majorant_general(4, 12, 9) == 2
    with pytest.raises(DomainError):
        arith.majorant_general(4, 12, 9, literal_fourth_case=True)


def test_majorant_general_rejects_non_squarefull():
    with pytest.raises(DomainError):
        arith.majorant_general(12, 5, 3)


# ------------------------------------------------------------ local densities

def test_local_density_pinned():
    assert arith.local_density(5, 0, 5) == Fraction(2)
    assert arith.local_density(5, 4, 3) == Fraction(3)
    # 24 * alpha2 * alpha_3(3,0) must equal the direct count 0
    assert arith.local_density(3, 0, 3) == Fraction(0)
    assert brute_pair_count(3, 0) == 0


def test_local_density_trivial_prime():
    assert arith.local_density(11, 2, 5) == Fraction(1)  # 5 does not divide 117


def test_local_density_closed_form_away_from_2n():
    # for odd p coprime to 2n the density is the geometric character sum
    for n in (5, 6, 13, 21, 30):
        d = arith.discriminant(n).d
        for t in range(-(n - 1), n):
            disc = n * n - t * t
            for p, k in arith.factorize(disc).factors:
                if p == 2 or n % p == 0:
                    continue
                expected = sum(arith.kronecker(d, p) ** j for j in range(k + 1))
                assert arith.local_density(n, t, p) == Fraction(expected), (n, t, p)


def test_local_density_rejects_two():
    with pytest.raises(DomainError):
        arith.local_density(5, 0, 2)


def test_diagonalization_invariants():
    for n in (5, 9, 12, 45, 75, 98):
        for t in range(-(n - 1), n):
            disc = n * n - t * t
            for p, _ in arith.factorize(disc).factors:
                if p == 2:
                    continue
                diag = arith.diagonalize_pair_form(n, t, p)
                g = math.gcd(n, t)
                assert diag.a1 == (arith.ord_p(g, p) if g % p == 0 else 0)
                assert diag.a1 + diag.a2 == arith.ord_p(disc, p)
                assert diag.a1 <= diag.a2
                assert diag.eps1_residue % p != 0
                assert diag.eps2_residue % p != 0


def test_pair_count_formula_pinned():
    assert arith.pair_count_formula(5, 0) == 48
    assert brute_pair_count(5, 0) == 48
    assert arith.pair_count_formula(5, 4) == 72
    assert brute_pair_count(5, 4) == 72
    # 5^2 - 3^2 = 16 has no odd prime factor, so the formula value is 24
    assert arith.pair_count_formula(5, 3) == 24
    assert brute_pair_count(5, 3) in (0, 24)
    assert brute_pair_count(5, 3) == 24


def test_pair_count_formula_vs_brute_small():
    for n in (1, 2, 3, 5, 6, 10, 14, 21, 30):
        for t in range(-(n - 1), n):
            a = brute_pair_count(n, t)
            assert a in (0, arith.pair_count_formula(n, t)), (n, t, a)
            assert a <= 24 * arith.majorant_squarefree(n, n * n - t * t)


def test_general_majorant_bounds_pair_counts():
    # non-squarefree shells against the general multiplicative bound,
    # reading the second argument of the bound as (n1^2 - t1^2)
    worst = 0.0
    for n in (4, 12, 18, 20, 45, 48, 50, 63, 75, 98, 99):
        tbl = lattice.pair_table(n)
        for t, count in tbl.entries.items():
            if abs(t) >= n:
                continue
            m = arith.squarefull_gcd_part(n, t)
            n1, t1 = n // m, t // m
            tau = 1
            for _, k in arith.factorize(m).factors:
                tau *= k + 1
            bound = math.sqrt(m) * tau * arith.majorant_general(m, n, n1 * n1 - t1 * t1)
            worst = max(worst, count / bound)
    assert worst <= 24.0, worst


def test_gcd_bound_probe():
    bound, actual = arith.pair_count_gcd_bound(5, 0)
    assert bound == pytest.approx(math.sqrt(5) * 5**0.25)
    assert actual == 48
    bound, actual = arith.pair_count_gcd_bound(5, 4)
    assert bound == pytest.approx(5**0.25)
    assert actual == 72
    bound, actual = arith.pair_count_gcd_bound(4, 0)
    assert bound == pytest.approx(2 * 4**0.25)
    assert actual == brute_pair_count(4, 0) == 24
