"""Sieves for the four auxiliary primes attached to a supercuspidal prime.

Each sieve returns the smallest prime (with a nonzero Fourier coefficient)
satisfying its congruence conditions; `qualifying` generators expose the full
ascending sequence so callers can test independence of the choice.  Every
condition is re-checkable post hoc via the `satisfies_*` predicates.
"""

from __future__ import annotations

from math import gcd
from typing import Iterator

from sympy import n_order, primerange

from .errors import InsufficientData, NoSolution, SearchExhausted, WrongCase
from .newform import NewformData, PrimeLocalData, is_zero_elem


def _coefficient_nonzero(f: NewformData, q: int) -> bool:
    if not f.has_coefficient(q):
        raise InsufficientData(
            f"a_{q} not stored for {f.label}; cannot test the sieve condition"
        )
    return not is_zero_elem(f.coefficient(q))


def _bound(f: NewformData, bound: int | None) -> int:
    if bound is None:
        return f.coeff_bound
    return min(bound, f.coeff_bound)


# -- congruence predicates (post-hoc verifiable) -------------------------------


def satisfies_p_prime(q: int, local: PrimeLocalData) -> bool:
    pk = local.p ** local.N_p
    return q % pk == 1 % pk and q % local.N_prime == local.p % local.N_prime


def satisfies_p_dprime(q: int, local: PrimeLocalData) -> bool:
    pk = local.p ** local.N_p
    if q % local.N_prime != 1 % local.N_prime or gcd(q, pk) != 1:
        return False
    return n_order(q, pk) == local.p - 1


def satisfies_p_tprime(q: int, local: PrimeLocalData) -> bool:
    pk = 2 ** local.N_p
    if q % local.N_prime != 1 % local.N_prime or q % 2 == 0:
        return False
    return n_order(q, pk) == 2


def satisfies_p_dagger(q: int, f: NewformData) -> bool:
    if gcd(q, f.level) != 1:
        return False
    for twist in f.inner_twists:
        want = -1 if twist.ramified else 1
        value = twist.char.evaluate(q)
        # Characters of order > 2 take non-sign values at some q; those q
        # simply do not qualify.
        if value.order > 2 or value.as_sign() != want:
            return False
    return True


# -- the sieves ----------------------------------------------------------------


def qualifying_p_primes(f: NewformData, local: PrimeLocalData, bound: int | None = None) -> Iterator[int]:
    """Primes q = 1 mod p^N_p, q = p mod N', coprime to N, with a_q != 0."""
    limit = _bound(f, bound)
    for q in primerange(2, limit + 1):
        if gcd(q, f.level) != 1 or not satisfies_p_prime(q, local):
            continue
        if _coefficient_nonzero(f, q):
            yield q


def find_p_prime(f: NewformData, local: PrimeLocalData, bound: int | None = None) -> int:
    for q in qualifying_p_primes(f, local, bound):
        return q
    raise SearchExhausted(_bound(f, bound))


def qualifying_p_dprimes(f: NewformData, local: PrimeLocalData, bound: int | None = None) -> Iterator[int]:
    """Primes q = 1 mod N' with multiplicative order p-1 mod p^N_p, a_q != 0."""
    if local.p == 2:
        raise WrongCase("p'' is defined for odd supercuspidal primes only")
    limit = _bound(f, bound)
    for q in primerange(2, limit + 1):
        if gcd(q, f.level) != 1 or not satisfies_p_dprime(q, local):
            continue
        if _coefficient_nonzero(f, q):
            yield q


def find_p_dprime(f: NewformData, local: PrimeLocalData, bound: int | None = None) -> int:
    for q in qualifying_p_dprimes(f, local, bound):
        return q
    raise SearchExhausted(_bound(f, bound))


def qualifying_p_tprimes(f: NewformData, local: PrimeLocalData, bound: int | None = None) -> Iterator[int]:
    """Primes q = 1 mod N' with order exactly 2 mod 2^N_2, a_q != 0."""
    if local.p != 2:
        raise WrongCase("p''' is defined for p = 2 only")
    if local.N_p < 2:
        raise NoSolution(f"(Z/2^{local.N_p})^x has no element of order 2")
    limit = _bound(f, bound)
    for q in primerange(3, limit + 1):
        if gcd(q, f.level) != 1 or not satisfies_p_tprime(q, local):
            continue
        if _coefficient_nonzero(f, q):
            yield q


def find_p_tprime(f: NewformData, local: PrimeLocalData, bound: int | None = None) -> int:
    for q in qualifying_p_tprimes(f, local, bound):
        return q
    raise SearchExhausted(_bound(f, bound))


def _dagger_classes(f: NewformData) -> tuple[int, set[int]]:
    """Residues mod the lcm of all twist moduli satisfying the sign conditions."""
    modulus = 1
    for twist in f.inner_twists:
        m = twist.char.modulus
        modulus = modulus * m // gcd(modulus, m)
    good = set()
    for r in range(1, modulus + 1):
        if gcd(r, modulus) != 1:
            continue
        ok = True
        for twist in f.inner_twists:
            want = -1 if twist.ramified else 1
            value = twist.char.evaluate(r)
            if value.order > 2 or value.as_sign() != want:
                ok = False
                break
        if ok:
            good.add(r % modulus)
    return modulus, good


def qualifying_p_daggers(f: NewformData, bound: int | None = None) -> Iterator[int]:
    """Primes coprime to N where every ramified inner-twist character is -1
    and every unramified one is +1, with a_q != 0."""
    modulus, classes = _dagger_classes(f)
    if not classes:
        raise NoSolution("inner-twist sign conditions are contradictory")
    limit = _bound(f, bound)
    for q in primerange(2, limit + 1):
        if gcd(q, f.level * modulus) != 1 or q % modulus not in classes:
            continue
        if _coefficient_nonzero(f, q):
            yield q


def find_p_dagger(f: NewformData, bound: int | None = None) -> int:
    for q in qualifying_p_daggers(f, bound):
        return q
    raise SearchExhausted(_bound(f, bound))


_QUALIFYING = {
    "prime": qualifying_p_primes,
    "dprime": qualifying_p_dprimes,
    "tprime": qualifying_p_tprimes,
}


def nth_qualifying(f: NewformData, local: PrimeLocalData, n: int, kind: str = "prime", bound: int | None = None) -> int:
    """The n-th (1-based) qualifying auxiliary prime of the given kind; lets
    callers check that verdicts do not depend on the choice."""
    if kind == "dagger":
        gen = qualifying_p_daggers(f, bound)
    else:
        gen = _QUALIFYING[kind](f, local, bound)
    for i, q in enumerate(gen, start=1):
        if i == n:
            return q
    raise SearchExhausted(_bound(f, bound), f"fewer than {n} qualifying primes below the bound")
