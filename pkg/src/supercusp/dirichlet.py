"""Dirichlet characters with exact root-of-unity values.

Characters are stored by their images on the canonical generators of
(Z/M)^x: the CRT decomposition into prime-power components, one primitive
root per odd prime power, and the pair (-1, 5) for 2^k with k >= 3.  Values
are exact roots of unity (a fraction exponent num/order), never floats.
Conrey labels "M.n" are converted to this form at ingestion and kept as
metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import primitive_root

from .errors import FieldMismatch, NotCoprime, ParseError
from .exact import QuadElem

_ZERO = Fraction(0)


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i * exponent), stored as an exact exponent in [0, 1)."""

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 1)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(_ZERO)

    @classmethod
    def minus_one(cls) -> "RootOfUnity":
        return cls(Fraction(1, 2))

    @classmethod
    def of(cls, num: int, order: int) -> "RootOfUnity":
        return cls(Fraction(num, order))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent + other.exponent)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * n)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.exponent)

    def is_one(self) -> bool:
        return self.exponent == 0

    def as_sign(self) -> int:
        """The value as +1/-1; raises unless the order divides 2."""
        if self.exponent == 0:
            return 1
        if self.exponent == Fraction(1, 2):
            return -1
        raise FieldMismatch(f"value of order {self.order} is not a sign")

    def as_quad_elem(self, d: int) -> QuadElem:
        """Embed into Q(sqrt(d)) when the order allows it (1,2 always; 4 needs
        d = -1; 3, 6 need d = -3)."""
        n, o = self.exponent.numerator, self.order
        if o in (1, 2):
            return QuadElem.of(d, 1 if o == 1 else -1)
        if o == 4:
            if d != -1:
                raise FieldMismatch(f"4th root of unity not in Q(sqrt {d})")
            return QuadElem.of(-1, 0, 1 if n == 1 else -1)
        if o in (3, 6):
            if d != -3:
                raise FieldMismatch(f"{o}th root of unity not in Q(sqrt {d})")
            # zeta_6 = (1 + sqrt(-3))/2, zeta_3 = (-1 + sqrt(-3))/2
            half = Fraction(1, 2)
            table = {
                Fraction(1, 3): QuadElem(-3, -half, half),
                Fraction(2, 3): QuadElem(-3, -half, -half),
                Fraction(1, 6): QuadElem(-3, half, half),
                Fraction(5, 6): QuadElem(-3, half, -half),
            }
            return table[self.exponent]
        raise FieldMismatch(f"root of unity of order {o} not in a quadratic field")

    def __repr__(self):
        if self.exponent == 0:
            return "1"
        if self.exponent == Fraction(1, 2):
            return "-1"
        return f"e({self.exponent})"


def _prime_power_factors(m: int) -> list[tuple[int, int]]:
    out = []
    n = m
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, d**e))
        d += 1
    if n > 1:
        out.append((n, n))
    return out


def canonical_generators(q: int, p: int) -> list[tuple[int, int]]:
    """Generators of (Z/q)^x with their orders, q = p^k.

    Odd p: one primitive root (the smallest that works for every power).
    q = 4: [3]; q = 2^k, k >= 3: [-1, 5]; q = 2: [].
    """
    if p != 2:
        g = int(primitive_root(p * p)) if q > p else int(primitive_root(p))
        # A primitive root mod p^2 generates (Z/p^k)^x for every k.
        phi = q // p * (p - 1)
        return [(g % q, phi)]
    if q == 2:
        return []
    if q == 4:
        return [(3, 2)]
    return [(q - 1, 2), (5, q // 4)]


class _Component:
    """Character data on one prime-power block (Z/q)^x, q = p^k."""

    def __init__(self, p: int, q: int, images: list[RootOfUnity]):
        self.p = p
        self.q = q
        self.gens = canonical_generators(q, p)
        if len(images) != len(self.gens):
            raise ParseError("char.values_on_gens", f"expected {len(self.gens)} images for modulus {q}")
        for (g, order), img in zip(self.gens, images):
            if (img.exponent * order) % 1 != 0:
                raise ParseError(
                    "char.values_on_gens",
                    f"image {img} of generator {g} has order not dividing {order}",
                )
        self.images = images
        self._dlog: dict[int, tuple[int, ...]] | None = None

    def dlog(self, a: int) -> tuple[int, ...]:
        if self._dlog is None:
            table: dict[int, tuple[int, ...]] = {}
            if self.p != 2 or self.q <= 2:
                if not self.gens:
                    table[1 % self.q] = ()
                else:
                    g, order = self.gens[0]
                    x = 1
                    for i in range(order):
                        table[x] = (i,)
                        x = x * g % self.q
            elif self.q == 4:
                table[1] = (0,)
                table[3] = (1,)
            else:
                x = 1
                for j in range(self.q // 4):
                    table[x % self.q] = (0, j)
                    table[(self.q - x) % self.q] = (1, j)
                    x = x * 5 % self.q
            self._dlog = table
        return self._dlog[a % self.q]

    def evaluate(self, a: int) -> RootOfUnity:
        out = RootOfUnity.one()
        for img, e in zip(self.images, self.dlog(a)):
            out = out * img**e
        return out

    def conductor(self) -> int:
        if self.p != 2:
            order = 1
            for img in self.images:
                order = order * img.order // gcd(order, img.order)
            if order == 1:
                return 1
            t = 0
            while order % self.p == 0:
                order //= self.p
                t += 1
            return self.p ** (t + 1)
        if self.q <= 2:
            return 1
        if self.q == 4:
            return 4 if not self.images[0].is_one() else 1
        sign_img, five_img = self.images
        t = five_img.order.bit_length() - 1  # five_img has 2-power order 2^t
        if five_img.order == 1:
            return 4 if not sign_img.is_one() else 1
        return 2 ** (t + 2)


class DirichletCharacter:
    """A Dirichlet character mod M, stored by generator images."""

    def __init__(self, modulus: int, components: list[_Component], conrey: int | None = None):
        if modulus < 1:
            raise ParseError("char.modulus", "modulus must be >= 1")
        self.modulus = modulus
        self.components = components
        self.conrey = conrey

    # -- constructors ------------------------------------------------------

    @classmethod
    def trivial(cls, modulus: int) -> "DirichletCharacter":
        comps = [
            _Component(p, q, [RootOfUnity.one()] * len(canonical_generators(q, p)))
            for p, q in _prime_power_factors(modulus)
        ]
        return cls(modulus, comps)

    @classmethod
    def from_gen_images(cls, modulus: int, images: list[RootOfUnity]) -> "DirichletCharacter":
        """Images listed against the canonical generators, components in
        increasing prime order, [-1, 5] order inside the 2-part."""
        comps = []
        idx = 0
        for p, q in _prime_power_factors(modulus):
            n = len(canonical_generators(q, p))
            comps.append(_Component(p, q, images[idx : idx + n]))
            idx += n
        if idx != len(images):
            raise ParseError("char.values_on_gens", f"expected {idx} images, got {len(images)}")
        return cls(modulus, comps)

    @classmethod
    def from_conrey(cls, modulus: int, n: int) -> "DirichletCharacter":
        """The Conrey character chi_modulus(n, .)."""
        if modulus >= 1 and gcd(n, modulus) != 1:
            raise ParseError("char.conrey", f"Conrey index {n} not coprime to {modulus}")
        comps = []
        for p, q in _prime_power_factors(modulus):
            gens = canonical_generators(q, p)
            images = [_conrey_value(q, p, n, g) for g, _ in gens]
            comps.append(_Component(p, q, images))
        return cls(modulus, comps, conrey=n % modulus if modulus > 1 else 1)

    @classmethod
    def parse_conrey_label(cls, label: str) -> "DirichletCharacter":
        """Parse "M.n" into a character."""
        try:
            mod_s, n_s = label.split(".")
            return cls.from_conrey(int(mod_s), int(n_s))
        except ValueError as exc:
            raise ParseError("char.conrey", f"bad Conrey label {label!r}") from exc

    # -- basic operations --------------------------------------------------

    def generator_images(self) -> list[tuple[int, RootOfUnity]]:
        out = []
        for comp in self.components:
            crt_lift = _crt_lift(comp.q, self.modulus)
            for (g, _), img in zip(comp.gens, comp.images):
                out.append((crt_lift(g), img))
        return out

    def evaluate(self, a: int) -> RootOfUnity:
        if gcd(a, self.modulus) != 1:
            raise NotCoprime(f"gcd({a}, {self.modulus}) > 1")
        out = RootOfUnity.one()
        for comp in self.components:
            out = out * comp.evaluate(a)
        return out

    def __call__(self, a: int) -> RootOfUnity:
        return self.evaluate(a)

    def conductor(self) -> int:
        c = 1
        for comp in self.components:
            c *= comp.conductor()
        return c

    def is_trivial(self) -> bool:
        return all(img.is_one() for comp in self.components for img in comp.images)

    def is_ramified_at(self, p: int) -> bool:
        return self.conductor() % p == 0

    def order(self) -> int:
        n = 1
        for comp in self.components:
            for img in comp.images:
                n = n * img.order // gcd(n, img.order)
        return n

    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        return self.evaluate(-1).as_sign()

    def p_decompose(self, p: int) -> tuple["DirichletCharacter", "DirichletCharacter"]:
        """Split chi = eps_p * eps' into the p-part (p-power modulus) and the
        prime-to-p part."""
        p_comps = [c for c in self.components if c.p == p]
        rest = [c for c in self.components if c.p != p]
        p_mod = p_comps[0].q if p_comps else 1
        rest_mod = 1
        for c in rest:
            rest_mod *= c.q
        return (
            DirichletCharacter(p_mod, p_comps),
            DirichletCharacter(rest_mod, rest),
        )

    def restrict_to_conductor(self) -> "DirichletCharacter":
        """The primitive character inducing chi, mod cond(chi)."""
        c = self.conductor()
        comps = []
        for p, q in _prime_power_factors(c):
            old = next(cc for cc in self.components if cc.p == p)
            gens = canonical_generators(q, p)
            images = [old.evaluate(_coprime_lift(g, q, old.q)) for g, _ in gens]
            comps.append(_Component(p, q, images))
        return DirichletCharacter(c, comps)

    def extend_to(self, modulus: int) -> "DirichletCharacter":
        """The character mod `modulus` induced by chi (modulus must be a
        multiple of the conductor)."""
        if modulus % self.conductor():
            raise ParseError("char.modulus", f"{modulus} not divisible by conductor {self.conductor()}")
        prim = self.restrict_to_conductor()
        comps = []
        for p, q in _prime_power_factors(modulus):
            gens = canonical_generators(q, p)
            old = next((cc for cc in prim.components if cc.p == p), None)
            if old is None:
                images = [RootOfUnity.one()] * len(gens)
            else:
                # old.q divides q, so generators reduce to units mod old.q.
                images = [old.evaluate(g) for g, _ in gens]
            comps.append(_Component(p, q, images))
        return DirichletCharacter(modulus, comps)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        m = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        a, b = self.extend_to(m), other.extend_to(m)
        comps = []
        for ca, cb in zip(a.components, b.components):
            comps.append(_Component(ca.p, ca.q, [x * y for x, y in zip(ca.images, cb.images)]))
        return DirichletCharacter(m, comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        if self.modulus != other.modulus:
            return False
        return all(
            ca.images == cb.images for ca, cb in zip(self.components, other.components)
        )

    def __repr__(self):
        imgs = ", ".join(f"{g} -> {img}" for g, img in self.generator_images())
        return f"chi mod {self.modulus} [{imgs}]"


def _crt_lift(q: int, modulus: int):
    """Map a residue mod q to the residue mod modulus that is 1 on the other
    CRT blocks."""
    rest = modulus // q

    def lift(a: int) -> int:
        if rest == 1:
            return a % modulus
        inv_rest = pow(rest, -1, q)
        inv_q = pow(q, -1, rest)
        return (a * rest * inv_rest + q * inv_q) % modulus

    return lift


def _coprime_lift(a: int, q_from: int, q_to: int) -> int:
    """A lift of a (unit mod q_from) to a unit mod q_to, q_from | q_to."""
    a %= q_from
    while gcd(a, q_to) != 1:
        a += q_from
    return a


def _conrey_value(q: int, p: int, n: int, m: int) -> RootOfUnity:
    """chi_q(n, m) on one prime-power block."""
    if p != 2:
        g = canonical_generators(q, p)[0][0]
        phi = q // p * (p - 1)
        table: dict[int, int] = {}
        x = 1
        for i in range(phi):
            table[x] = i
            x = x * g % q
        return RootOfUnity.of(table[n % q] * table[m % q], phi)
    if q == 2:
        return RootOfUnity.one()
    if q == 4:
        en = 1 if n % 4 == 3 else 0
        em = 1 if m % 4 == 3 else 0
        return RootOfUnity.of(en * em, 2)
    half = q // 4
    table2: dict[int, tuple[int, int]] = {}
    x = 1
    for j in range(half):
        table2[x % q] = (0, j)
        table2[(q - x) % q] = (1, j)
        x = x * 5 % q
    en, an = table2[n % q]
    em, am = table2[m % q]
    return RootOfUnity.of(en * em, 2) * RootOfUnity.of(an * am, half)


def idelic_local(chi: DirichletCharacter, p: int, m: int, u: int) -> RootOfUnity:
    """Local restriction of the nebentypus at p: the value at the idele with
    p-component p^m * u, namely eps'(p)^m * eps_p(u)^(-1)."""
    eps_p, eps_prime = chi.p_decompose(p)
    if gcd(p, eps_prime.modulus) != 1:
        raise NotCoprime("prime-to-p part has modulus divisible by p")
    return eps_prime.evaluate(p) ** m * eps_p.evaluate(u).inverse()
