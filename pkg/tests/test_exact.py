from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supercusp.errors import InvalidPlace, UnsupportedPrime
from supercusp.exact import (
    INF,
    PrimeIdealData,
    QuadElem,
    ResidueField,
    is_square_in_qp,
    legendre,
    residue_symbol_fq,
    splitting_type,
    squarefree_part,
    two_adic_square_class,
    val_p,
    val_quad,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


def test_val_p_examples():
    assert val_p(-421362, 2) == 1
    assert val_p(1, 7) == 0
    assert val_p(Fraction(9, 4), 2) == -2
    assert val_p(0, 5) == INF


@given(
    st.fractions(min_value=-1000, max_value=1000).filter(lambda x: x != 0),
    st.fractions(min_value=-1000, max_value=1000).filter(lambda x: x != 0),
    st.sampled_from([2, 3, 5, 7, 11, 13]),
)
def test_val_p_is_a_valuation(x, y, p):
    assert val_p(x * y, p) == val_p(x, p) + val_p(y, p)
    if x + y != 0:
        lo = min(val_p(x, p), val_p(y, p))
        assert val_p(x + y, p) >= lo
        if val_p(x, p) != val_p(y, p):
            assert val_p(x + y, p) == lo


def test_legendre_examples():
    # squares mod 7 are {1, 2, 4}; mod 5 they are {1, 4}
    assert legendre(2, 7) == 1
    assert legendre(2, 5) == -1
    assert legendre(1, 97) == 1
    with pytest.raises(UnsupportedPrime):
        legendre(3, 2)


def test_legendre_against_exhaustive_squares():
    for p in SMALL_PRIMES[1:]:
        if p > 100:
            break
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            want = 0 if a == 0 else (1 if a in squares else -1)
            assert legendre(a, p) == want


def test_legendre_multiplicative():
    rng = random.Random(7)
    for _ in range(400):
        p = rng.choice([q for q in SMALL_PRIMES if 2 < q <= 199])
        a, b = rng.randrange(1, 10**4), rng.randrange(1, 10**4)
        if a % p and b % p:
            assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_squarefree_part():
    assert squarefree_part(12) == 3
    assert squarefree_part(-8) == -2
    assert squarefree_part(1) == 1


def test_quad_elem_arithmetic():
    i = QuadElem.of(-1, 0, 1)
    assert (i * i).as_fraction() == -1
    z = QuadElem.of(-1, 1, -1)  # 1 - i
    assert z.norm() == 2
    assert (z * z.conj()).as_fraction() == 2
    assert z.inverse() * z == QuadElem.of(-1, 1)
    with pytest.raises(InvalidPlace):
        QuadElem.of(4, 1, 1)  # 4 is not squarefree


def test_val_quad_ramified_over_two():
    ideal = PrimeIdealData(2, 2, 1)
    assert val_quad(QuadElem.of(-1, 0, -2), ideal) == 2  # -2i, N = 4
    assert val_quad(QuadElem.of(-1, 1), ideal) == 0
    assert val_quad(QuadElem.of(-1, 1, -1), ideal) == 1  # 1 - i, N = 2
    # rationals pick up the ramification index
    assert val_quad(Fraction(2), ideal) == 2


def test_val_quad_inert_and_split():
    inert = PrimeIdealData(3, 1, 2)
    assert val_quad(QuadElem.of(-1, 0, 1), inert) == 0
    assert val_quad(QuadElem.of(-1, 3, 3), inert) == 1
    split = PrimeIdealData(5, 1, 1)
    # 5 = (2+i)(2-i); 2+i has valuation 1 at one place and 0 at the other
    z = QuadElem.of(-1, 2, 1)
    v1 = val_quad(z, split)
    v2 = val_quad(z.conj(), split)
    assert sorted([v1, v2]) == [0, 1]
    assert val_quad(z * z.conj(), split) == 1


def test_val_quad_validates_place():
    with pytest.raises(InvalidPlace):
        val_quad(QuadElem.of(-1, 1, 1), PrimeIdealData(3, 2, 1))  # 3 is inert in Q(i)
    with pytest.raises(InvalidPlace):
        PrimeIdealData(3, 2, 2)  # e*f > 2


def test_val_quad_matches_scaled_val_p_on_rationals():
    rng = random.Random(3)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7, 13])
        x = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
        for ideal in (PrimeIdealData(p, 1, 1), PrimeIdealData(p, 2, 1), PrimeIdealData(p, 1, 2)):
            assert val_quad(x, ideal) == ideal.e * val_p(x, p)


def test_splitting_type():
    assert splitting_type(5, 11) == "split"
    assert splitting_type(5, 3) == "inert"
    assert splitting_type(5, 5) == "ramified"
    assert splitting_type(-3, 2) == "inert"
    assert splitting_type(-1, 2) == "ramified"
    assert splitting_type(17, 2) == "split"


def test_residue_field_symbols():
    F9 = ResidueField(3, 2)
    gen = F9.element(1, 1)  # 1 + X has order 8: a generator, hence a nonsquare
    assert F9.pow(gen, 4) == F9.element(-1)
    assert residue_symbol_fq(gen, F9) == -1
    assert residue_symbol_fq(1, F9) == 1
    assert residue_symbol_fq(-1, F9) == 1  # (-1)^((9-1)/2) = 1
    F7 = ResidueField(7, 1)
    assert residue_symbol_fq(3, F7) == legendre(3, 7)
    with pytest.raises(UnsupportedPrime):
        ResidueField(2, 2)


def test_residue_symbol_fq_matches_exhaustive_squares_in_f9():
    F9 = ResidueField(3, 2)
    elems = [F9.element(a, b) for a in range(3) for b in range(3)]
    squares = {F9.mul(e, e) for e in elems if not F9.is_zero(e)}
    for e in elems:
        if F9.is_zero(e):
            assert residue_symbol_fq(e, F9) == 0
        else:
            assert residue_symbol_fq(e, F9) == (1 if e in squares else -1)


def test_two_adic_square_class():
    assert two_adic_square_class(Fraction(1)) == 1
    assert two_adic_square_class(Fraction(-6)) == 10  # -6 = 2 * (-3), -3 = 5 mod 8
    assert two_adic_square_class(Fraction(2)) == 2
    assert two_adic_square_class(Fraction(8)) == 1 * 2  # 8 = 2^3: odd valuation, unit 1
    assert is_square_in_qp(Fraction(17), 2)
    assert not is_square_in_qp(Fraction(5), 2)
    assert is_square_in_qp(Fraction(4), 7)
    assert not is_square_in_qp(Fraction(7), 7)
