from __future__ import annotations

import itertools

import pytest

from supercusp import auxprimes
from supercusp.dirichlet import DirichletCharacter, RootOfUnity
from supercusp.errors import NoSolution, SearchExhausted, WrongCase
from supercusp.newform import InnerTwist, local_decompose

from conftest import synthetic_form


def test_p_prime_fixture_values(form20, form36, form24):
    loc20 = local_decompose(form20, 2)
    assert auxprimes.find_p_prime(form20, loc20) == 17
    loc36 = local_decompose(form36, 2)
    assert auxprimes.find_p_prime(form36, loc36) == 29
    loc24 = local_decompose(form24, 2)
    assert auxprimes.find_p_prime(form24, loc24) == 17
    # CRT classes: 17 mod 20 and 29 mod 36
    for q in itertools.islice(auxprimes.qualifying_p_primes(form20, loc20), 3):
        assert q % 20 == 17
        assert auxprimes.satisfies_p_prime(q, loc20)
    for q in itertools.islice(auxprimes.qualifying_p_primes(form36, loc36), 3):
        assert q % 36 == 29
        assert auxprimes.satisfies_p_prime(q, loc36)
    for q in itertools.islice(auxprimes.qualifying_p_primes(form24, loc24), 3):
        assert q % 24 == 17
        assert auxprimes.satisfies_p_prime(q, loc24)


def test_p_prime_smallest_with_unit_class():
    # N' = 1 leaves only q = 1 mod p^N_p
    f = synthetic_form(4, 2, {1: 1, 2: 0, 5: 1, 13: 1})
    loc = local_decompose(f, 2)
    assert auxprimes.find_p_prime(f, loc) == 5
    # a zero coefficient skips the candidate
    f2 = synthetic_form(4, 2, {1: 1, 2: 0, 5: 0, 13: 1})
    assert auxprimes.find_p_prime(f2, loc) == 13


def test_p_prime_exhaustion():
    f = synthetic_form(4, 2, {1: 1, 2: 0, 3: 1})
    loc = local_decompose(f, 2)
    with pytest.raises(SearchExhausted):
        auxprimes.find_p_prime(f, loc)


def test_p_dprime():
    # p = 3, N_3 = 2, N' = 1: order 2 in (Z/9)^x means q = 8 mod 9
    f = synthetic_form(9, 2, {n: 1 for n in range(1, 60)} | {3: 0})
    loc = local_decompose(f, 3)
    assert auxprimes.find_p_dprime(f, loc) == 17
    assert auxprimes.satisfies_p_dprime(17, loc)
    assert not auxprimes.satisfies_p_dprime(19, loc)  # order 1
    with pytest.raises(WrongCase):
        auxprimes.find_p_dprime(synthetic_form(4, 2, {1: 1, 2: 0}), local_decompose(f, 2))


def test_p_dprime_order_four():
    # p = 5, N_5 = 2: order 4 elements of (Z/25)^x are 7 and 18 mod 25
    f = synthetic_form(25, 2, {n: 1 for n in range(1, 50)} | {5: 0})
    loc = local_decompose(f, 5)
    assert auxprimes.find_p_dprime(f, loc) == 7
    f2 = synthetic_form(25, 2, ({n: 1 for n in range(1, 50)} | {5: 0, 7: 0}))
    assert auxprimes.find_p_dprime(f2, loc) == 43  # 43 = 18 mod 25


def test_p_tprime():
    # N_2 = 2, N' = 5: q = 3 mod 4 and 1 mod 5 means q = 11 mod 20
    f = synthetic_form(20, 2, {n: 1 for n in range(1, 40)} | {2: 0})
    loc = local_decompose(f, 2)
    assert auxprimes.find_p_tprime(f, loc) == 11
    assert auxprimes.satisfies_p_tprime(11, loc)
    # N_2 = 3: order 2 mod 8 admits q = 3, 5, 7 mod 8
    f8 = synthetic_form(8, 2, {n: 1 for n in range(1, 10)} | {2: 0})
    loc8 = local_decompose(f8, 2)
    assert auxprimes.find_p_tprime(f8, loc8) == 3
    with pytest.raises(WrongCase):
        auxprimes.find_p_tprime(f, local_decompose(f, 5))
    f2 = synthetic_form(2, 2, {1: 1, 2: 0, 3: 1})
    with pytest.raises(NoSolution):
        auxprimes.find_p_tprime(f2, local_decompose(f2, 2))


def _quad_char_mod4() -> DirichletCharacter:
    return DirichletCharacter.from_gen_images(4, [RootOfUnity.minus_one()])


def test_p_dagger():
    # no inner twists: smallest prime coprime to N with nonzero coefficient
    f = synthetic_form(20, 2, {n: 1 for n in range(1, 20)} | {2: 0})
    assert auxprimes.find_p_dagger(f) == 3
    # one ramified quadratic twist mod 4: need q = 3 mod 4
    tw = InnerTwist(auto="conj", char=_quad_char_mod4(), ramified=True)
    f_tw = synthetic_form(20, 2, {n: 1 for n in range(1, 20)} | {2: 0}, inner_twists=[tw])
    q = auxprimes.find_p_dagger(f_tw)
    assert q == 3 and q % 4 == 3
    assert auxprimes.satisfies_p_dagger(q, f_tw)
    # the same character demanded unramified forces q = 1 mod 4
    tw_un = InnerTwist(auto="conj", char=_quad_char_mod4(), ramified=False)
    f_un = synthetic_form(20, 2, {n: 1 for n in range(1, 20)} | {2: 0}, inner_twists=[tw_un])
    assert auxprimes.find_p_dagger(f_un) == 13  # 3, 7, 11, 19 fail; 13 = 1 mod 4
    # contradictory constraints: same character with both demands
    f_bad = synthetic_form(20, 2, {n: 1 for n in range(1, 20)} | {2: 0}, inner_twists=[tw, tw_un])
    with pytest.raises(NoSolution):
        auxprimes.find_p_dagger(f_bad)


def test_p_dagger_on_fixture(form20):
    # the 20.3 fixture has a quartic unramified twist: p_dagger needs value +1
    q = auxprimes.find_p_dagger(form20)
    assert auxprimes.satisfies_p_dagger(q, form20)
    eta = form20.inner_twists[0].char
    assert eta.evaluate(q).is_one()


def test_determinism(form36):
    loc = local_decompose(form36, 2)
    runs = [auxprimes.find_p_prime(form36, loc) for _ in range(3)]
    assert runs == [29, 29, 29]


def test_nth_qualifying(form20):
    loc = local_decompose(form20, 2)
    assert auxprimes.nth_qualifying(form20, loc, 1) == 17
    assert auxprimes.nth_qualifying(form20, loc, 2) == 37
    assert auxprimes.nth_qualifying(form20, loc, 3) == 97
    with pytest.raises(SearchExhausted):
        auxprimes.nth_qualifying(form20, loc, 50)
