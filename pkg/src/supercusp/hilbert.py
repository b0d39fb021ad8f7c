"""Quadratic local symbols: tame formula at odd places, the 2-adic Hilbert
symbol over Q_2, the real place, norm-residue symbols for quadratic
extensions, and a global product-formula self-check.

The tame formula decomposes a = pi^v(a) * a' against a fixed uniformizer and
evaluates residue symbols in the residue field; the SymbolPlace records which
uniformizer that is, since the decomposition (not the symbol) depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPlace, NotQuadratic, Unsupported, UnsupportedPrime, WrongCase
from .exact import (
    Rat,
    ResidueField,
    as_fraction,
    is_square_in_qp,
    legendre_rat,
    residue_symbol_fq,
    unit_part,
    val_p,
)


@dataclass(frozen=True)
class SymbolPlace:
    """A finite place where symbols are evaluated.

    Nv = p^f_v is the residue cardinality.  residue_model is required when
    f_v = 2.  uniformizer is a tag documenting which uniformizer the
    decomposition a = pi^v(a) * a' fixes ("p" means the rational prime).
    """

    p: int
    e_v: int = 1
    f_v: int = 1
    residue_model: ResidueField | None = None
    uniformizer: str = "p"

    def __post_init__(self):
        if self.p < 2:
            raise InvalidPlace(f"{self.p} is not a finite prime")
        if self.f_v == 2 and self.residue_model is None:
            object.__setattr__(self, "residue_model", ResidueField(self.p, 2))
        if self.f_v == 1 and self.residue_model is None:
            object.__setattr__(self, "residue_model", ResidueField(self.p, 1))
        if self.residue_model.p != self.p or self.residue_model.f != self.f_v:
            raise InvalidPlace("residue model does not match the place")

    @property
    def residue_cardinality(self) -> int:
        return self.p ** self.f_v


def qp_place(p: int) -> SymbolPlace:
    return SymbolPlace(p=p, e_v=1, f_v=1)


def local_of_rational(x: Rat, place: SymbolPlace) -> tuple[int, object]:
    """Decompose a nonzero rational as (valuation, residue unit) at a place
    with e_v = 1 and uniformizer p."""
    if place.e_v != 1:
        raise Unsupported("rational decomposition at a ramified place needs explicit data")
    x = as_fraction(x)
    v = val_p(x, place.p)
    u = unit_part(x, place.p)
    return v, place.residue_model.embed_rational(u)


def symbol_odd(a, b, place: SymbolPlace) -> int:
    """The local symbol (a, b)_v at odd residue characteristic:

        (-1)^(v(a) v(b) (Nv-1)/2) * (b'/v)^v(a) * (a'/v)^v(b)

    a and b are (valuation, residue-unit) pairs; rationals are decomposed
    automatically when e_v = 1.
    """
    if place.p == 2:
        raise UnsupportedPrime("use symbol_two at residue characteristic 2")
    if not isinstance(a, tuple):
        a = local_of_rational(a, place)
    if not isinstance(b, tuple):
        b = local_of_rational(b, place)
    va, ua = a
    vb, ub = b
    model = place.residue_model
    sign_exp = va * vb * ((place.residue_cardinality - 1) // 2)
    out = -1 if sign_exp % 2 else 1
    if va % 2:
        out *= residue_symbol_fq(ub, model)
    if vb % 2:
        out *= residue_symbol_fq(ua, model)
    if out == 0:
        raise InvalidPlace("symbol of a non-unit residue part")
    return out


def _eps2(u: Fraction) -> int:
    """(u-1)/2 mod 2 for a 2-adic unit rational: 0 iff u = 1 mod 4."""
    r = u.numerator * pow(u.denominator, -1, 8) % 8
    return 0 if r % 4 == 1 else 1


def _omega2(u: Fraction) -> int:
    """(u^2-1)/8 mod 2 for a 2-adic unit rational: 0 iff u = +-1 mod 8."""
    r = u.numerator * pow(u.denominator, -1, 8) % 8
    return 0 if r in (1, 7) else 1


def symbol_two(a: Rat, b: Rat) -> int:
    """The Hilbert symbol (a, b)_2 over Q_2.

    With a = 2^alpha u, b = 2^beta w:
        (-1)^(eps(u) eps(w) + alpha omega(w) + beta omega(u)).
    """
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise InvalidPlace("symbol arguments must be nonzero")
    alpha, beta = val_p(a, 2), val_p(b, 2)
    u, w = unit_part(a, 2), unit_part(b, 2)
    exp = _eps2(u) * _eps2(w) + alpha * _omega2(w) + beta * _omega2(u)
    return -1 if exp % 2 else 1


def symbol_real(a: Rat, b: Rat) -> int:
    """The Hilbert symbol at the real place: -1 iff both arguments negative."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise InvalidPlace("symbol arguments must be nonzero")
    return -1 if a < 0 and b < 0 else 1


def hilbert_symbol(a: Rat, b: Rat, p: int | None) -> int:
    """(a, b)_p over Q_p, with p = None meaning the real place."""
    if p is None:
        return symbol_real(a, b)
    if p == 2:
        return symbol_two(a, b)
    return symbol_odd(as_fraction(a), as_fraction(b), qp_place(p))


def norm_symbol(x: Rat, disc: Rat, p: int) -> int:
    """+1 iff x is a norm from Q_p(sqrt(disc)); the Hilbert symbol (x, disc)_p."""
    disc = as_fraction(disc)
    if is_square_in_qp(disc, p):
        raise NotQuadratic(f"{disc} is a square in Q_{p}")
    return hilbert_symbol(x, disc, p)


def residue_unit_of_pi_squared(p: int, norm_compliant: int = 1, f_v: int = 1) -> int:
    """Residue symbol of the unit part of pi^2 for a ramified quadratic
    K | Q_p with p = 3 mod 4, against a uniformizer of F_v chosen among norms.

    Both norm cases ((p, K|Q_p) = +1 and -1) give (-1/v) = (-1)^f_v.
    """
    if p % 4 != 3:
        raise WrongCase(f"p = {p} is not 3 mod 4")
    if norm_compliant not in (1, -1):
        raise WrongCase("norm_compliant flag must be +1 or -1")
    return -1 if f_v % 2 else 1


def product_formula_check(a: Rat, b: Rat) -> bool:
    """Check the global product formula: the product of (a, b)_v over the
    real place, 2, and every odd prime dividing a or b equals +1."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise InvalidPlace("arguments must be nonzero")
    primes = {2}
    for x in (a, b):
        for n in (x.numerator, x.denominator):
            n = abs(n)
            d = 2
            while d * d <= n:
                if n % d == 0:
                    primes.add(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                primes.add(n)
    prod = symbol_real(a, b)
    for p in primes:
        prod *= hilbert_symbol(a, b, p)
    return prod == 1
