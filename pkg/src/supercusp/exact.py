"""Exact rational and quadratic-field arithmetic with p-adic valuations.

Everything here is pure and exact: rationals are `fractions.Fraction`,
elements of Q(sqrt(d)) are pairs of rationals, valuations are integers (with
an infinity sentinel for zero).  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPlace, UnsupportedPrime, ZeroCoefficient

#: Sentinel for the valuation of zero.  Compares above every integer.
INF = float("inf")

Rat = int | Fraction


def as_fraction(x: Rat | str) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def val_p(x: Rat, p: int):
    """p-adic valuation of a rational, normalized so val_p(p) = 1.

    Returns INF for x = 0.
    """
    if p < 2:
        raise UnsupportedPrime(f"p = {p} is not prime")
    x = as_fraction(x)
    if x == 0:
        return INF
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: Rat, p: int) -> Fraction:
    """x / p^val_p(x), the p-adic unit factor of a nonzero rational."""
    x = as_fraction(x)
    if x == 0:
        raise ZeroCoefficient("zero has no unit part")
    return x / Fraction(p) ** val_p(x, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p: +1, -1, or 0."""
    if p == 2:
        raise UnsupportedPrime("Legendre symbol needs an odd prime")
    a = a % p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return -1 if s == p - 1 else 1


def legendre_rat(x: Rat, p: int) -> int:
    """Legendre symbol of a p-adic unit rational, via numerator/denominator."""
    x = as_fraction(x)
    return legendre(x.numerator % p * pow(x.denominator, -1, p) % p, p)


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor of n (keeping the sign)."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                out *= d
        d += 1
    return sign * out * n


def is_square_in_qp(x: Rat, p: int) -> bool:
    """Whether a nonzero rational is a square in Q_p."""
    x = as_fraction(x)
    if x == 0:
        raise ZeroCoefficient("zero is not in Q_p^x")
    v = val_p(x, p)
    if v % 2:
        return False
    u = unit_part(x, p)
    if p == 2:
        num, den = u.numerator, u.denominator
        return (num * pow(den, -1, 8)) % 8 == 1
    return legendre_rat(u, p) == 1


def two_adic_square_class(x: Rat) -> int:
    """Canonical representative of x in Q_2^x / (Q_2^x)^2.

    Returns one of {1, 3, 5, 7, 2, 6, 10, 14}: a unit class mod 8, times 2
    when the valuation is odd.
    """
    x = as_fraction(x)
    if x == 0:
        raise ZeroCoefficient("zero has no square class")
    v = val_p(x, 2)
    u = unit_part(x, 2)
    cls = (u.numerator * pow(u.denominator, -1, 8)) % 8
    return cls * 2 if v % 2 else cls


@dataclass(frozen=True)
class QuadElem:
    """Element a + b*sqrt(d) of the quadratic field Q(sqrt(d)), d squarefree != 1."""

    d: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.d == 1 or self.d == 0 or squarefree_part(self.d) != self.d:
            raise InvalidPlace(f"field discriminant {self.d} is not squarefree != 1")
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    @classmethod
    def of(cls, d: int, a, b=0) -> "QuadElem":
        return cls(d, as_fraction(a), as_fraction(b))

    def _check(self, other: "QuadElem"):
        if self.d != other.d:
            raise InvalidPlace(f"mixed fields Q(sqrt {self.d}) and Q(sqrt {other.d})")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadElem.of(self.d, other)
        self._check(other)
        return QuadElem(self.d, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadElem.of(self.d, other)
        self._check(other)
        return QuadElem(self.d, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return QuadElem(self.d, -self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, self.a * other, self.b * other)
        self._check(other)
        return QuadElem(
            self.d,
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroCoefficient("not invertible")
        return QuadElem(self.d, self.a / n, -self.b / n)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InvalidPlace(f"{self} is not rational")
        return self.a

    def __repr__(self):
        if self.b == 0:
            return f"({self.a})"
        sign = "+" if self.b >= 0 else "-"
        return f"({self.a} {sign} {abs(self.b)}*sqrt({self.d}))"


def splitting_type(d: int, p: int) -> str:
    """How the rational prime p behaves in Q(sqrt d), d squarefree != 1."""
    if squarefree_part(d) != d or d in (0, 1):
        raise InvalidPlace(f"{d} is not a squarefree discriminant != 1")
    if p == 2:
        if d % 2 == 0 or d % 4 == 3:
            return "ramified"
        return "split" if d % 8 == 1 else "inert"
    if d % p == 0:
        return "ramified"
    return "split" if legendre(d, p) == 1 else "inert"


@dataclass(frozen=True)
class PrimeIdealData:
    """A prime of Q or of a quadratic field lying above the rational prime p.

    e and f are the ramification index and residue degree; for a quadratic
    field e*f is 1 (split) or 2 (inert/ramified).  uniformizer_norm_val
    records val_p of the norm of the chosen uniformizer (bookkeeping only).
    """

    p: int
    e: int = 1
    f: int = 1
    uniformizer_norm_val: int = 1

    def __post_init__(self):
        if self.e < 1 or self.f < 1:
            raise InvalidPlace("e and f must be >= 1")
        if self.e * self.f > 2:
            raise InvalidPlace(f"e*f = {self.e * self.f} > 2 unsupported for quadratic fields")

    @property
    def residue_cardinality(self) -> int:
        return self.p ** self.f


def _hensel_sqrt(d: int, p: int, k: int) -> int:
    """A square root of d mod p^k for odd p with legendre(d, p) = 1."""
    r = None
    for x in range(p):
        if (x * x - d) % p == 0:
            r = x
            break
    if r is None:
        raise InvalidPlace(f"{d} is not a square mod {p}")
    mod = p
    while mod < p**k:
        mod *= p
        # Newton step: r <- r - (r^2 - d) / (2r)
        r = (r - (r * r - d) * pow(2 * r, -1, mod)) % mod
    return r % p**k


def val_quad(x: QuadElem | Rat, ideal: PrimeIdealData, field_disc: int | None = None):
    """Valuation of x at the prime, normalized so the uniformizer has valuation 1.

    For rational x this equals e * val_p(x).  Split primes (e = f = 1 in a
    quadratic field) need the field discriminant to pick the embedding; the
    root of d mod p^k congruent to the smallest nonnegative Hensel lift is
    used, which fixes one of the two places consistently.
    """
    p = ideal.p
    if isinstance(x, (int, Fraction)):
        v = val_p(x, p)
        return INF if v == INF else ideal.e * v
    if x.is_zero():
        return INF
    if x.is_rational():
        return ideal.e * val_p(x.a, p)
    d = x.d
    if field_disc is not None and field_disc != d:
        raise InvalidPlace(f"element of Q(sqrt {d}) at a place of Q(sqrt {field_disc})")
    kind = splitting_type(d, p)
    claimed = "ramified" if ideal.e == 2 else ("inert" if ideal.f == 2 else "split")
    if kind != claimed:
        raise InvalidPlace(f"{p} is {kind} in Q(sqrt {d}), place claims {claimed}")
    nrm_val = val_p(x.norm(), p)
    if ideal.e == 2:
        # Ramified: conjugation fixes the unique prime, v(x) = val_p(N(x)).
        return nrm_val
    if ideal.f == 2:
        # Inert: v extends val_p, v(x) = val_p(N(x)) / 2.
        if nrm_val % 2:
            raise InvalidPlace("odd norm valuation at an inert prime")
        return nrm_val // 2
    # Split: embed via a Hensel lift of sqrt(d) and take val_p of the image.
    scale = Fraction(x.a.denominator * x.b.denominator)
    y = x * scale  # integer coordinates; valuation shifts by val_p(scale)
    prec = val_p(y.norm(), p) + 1
    if p == 2:
        root = _hensel_sqrt_2(d, prec + 2)
        mod = 2 ** (prec + 2)
    else:
        root = _hensel_sqrt(d, p, prec)
        mod = p**prec
    img = (int(y.a) + int(y.b) * root) % mod
    if img == 0:
        # v(y) would exceed val_p(N(y)), impossible for integral y.
        raise InvalidPlace("precision loss in split embedding")
    v = 0
    while img % p == 0:
        img //= p
        v += 1
    return v - val_p(scale, p)


def _hensel_sqrt_2(d: int, k: int) -> int:
    """A square root of d mod 2^k for d = 1 mod 8."""
    if d % 8 != 1:
        raise InvalidPlace(f"{d} is not a 2-adic square unit")
    r = 1
    mod = 8
    while mod < 2**k:
        mod *= 2
        if (r * r - d) % mod:
            r += mod // 4
        r %= mod
    return r % 2**k


class ResidueField:
    """The finite field F_{p^f} for f <= 2, as polynomials modulo an irreducible.

    Elements are tuples of ints of length f (coefficients of 1, X).  The
    defining polynomial is X^2 - nonsquare for f = 2, so X plays the role of
    sqrt(d) for any d in that square class.
    """

    def __init__(self, p: int, f: int, poly_nonsquare: int | None = None):
        if f not in (1, 2):
            raise InvalidPlace(f"residue degree {f} > 2 unsupported")
        if f == 2 and p == 2:
            raise UnsupportedPrime("even residue fields have no quadratic symbol")
        self.p = p
        self.f = f
        if f == 2:
            if poly_nonsquare is None:
                poly_nonsquare = next(n for n in range(2, p) if legendre(n, p) == -1)
            if legendre(poly_nonsquare, p) != -1:
                raise InvalidPlace(f"{poly_nonsquare} is a square mod {p}")
            self.nonsquare = poly_nonsquare % p
        else:
            self.nonsquare = None

    @property
    def cardinality(self) -> int:
        return self.p ** self.f

    def element(self, a: int, b: int = 0) -> tuple[int, ...]:
        return (a % self.p,) + ((b % self.p,) if self.f == 2 else ())

    def embed_rational(self, x: Rat) -> tuple[int, ...]:
        x = as_fraction(x)
        if val_p(x, self.p) != 0 and x != 0:
            raise InvalidPlace(f"{x} is not a unit at {self.p}")
        a = x.numerator % self.p * pow(x.denominator, -1, self.p) % self.p
        return self.element(a)

    def mul(self, x, y):
        if self.f == 1:
            return ((x[0] * y[0]) % self.p,)
        a = (x[0] * y[0] + self.nonsquare * x[1] * y[1]) % self.p
        b = (x[0] * y[1] + x[1] * y[0]) % self.p
        return (a, b)

    def pow(self, x, n: int):
        out = self.element(1)
        base = x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_zero(self, x) -> bool:
        return all(c == 0 for c in x)


def residue_symbol_fq(a, field: ResidueField) -> int:
    """Quadratic residue symbol in F_q, q odd: a^((q-1)/2) as +1/-1/0."""
    if field.p == 2:
        raise UnsupportedPrime("residue symbol needs odd q")
    if isinstance(a, (int, Fraction)):
        a = field.embed_rational(a)
    if field.is_zero(a):
        return 0
    s = field.pow(a, (field.cardinality - 1) // 2)
    if s == field.element(1):
        return 1
    if s == field.element(-1):
        return -1
    raise InvalidPlace(f"symbol of {a} is not a sign; residue model inconsistent")
