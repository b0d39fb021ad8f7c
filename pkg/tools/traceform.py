"""Eichler-Selberg trace formula for Tr T_n on S_k(N, chi), gcd(n, N) = 1,
with exact arithmetic over Q(i) (characters of order dividing 4).

This is a fixture-generation tool, not part of the installed package.  The
formula is validated by `run_anchor_battery` against independently computed
q-expansions: the discriminant form, the eight eta-product elliptic curves,
an eta-product weight-3 form with quadratic nebentypus, and genus formulas.

Formula layout (all sums exact):

    Tr T_n = A1 - A2 - A3 + A4

    A1 = chi(m) m^(k-2) (k-1)/12 psi(N)                      if n = m^2
    A2 = 1/2 sum_{t^2 < 4n} P_k(t,n)
             sum_{f^2 | t^2-4n, (t^2-4n)/f^2 = 0,1 mod 4}
                 h_w((t^2-4n)/f^2) mu(t, f, n)
    A3 = sum'_{d | n, d <= sqrt n} d^(k-1)
             sum_{c | N, g = gcd(c, N/c) | (n/d - d), cond(chi) | N/g}
                 phi(g) chi_prim(y(d, c))
    A4 = [k = 2] sum_{c | n, gcd(N, n/c) = 1} c

with mu(t, f, n) = psi(N)/psi(N/gcd(N, f)) *
                   sum chi(x) over x mod N*gcd(N, f), x^2 - t x + n = 0,
P_k the Gegenbauer-type recurrence P_2 = 1, P_3 = t,
P_j = t P_{j-1} - n P_{j-2}, h_w the weighted class number of the order of
discriminant D (h_w(-3) = 1/3, h_w(-4) = 1/2), y(d, c) the CRT mix of d mod c
and n/d mod N/c, and the prime on A3 halving the d = sqrt(n) term.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from supercusp.dirichlet import DirichletCharacter  # noqa: E402


@dataclass(frozen=True)
class GaussQ:
    """Element of Q(i), exact."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, re, im=0) -> "GaussQ":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other):
        return GaussQ(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussQ(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussQ(self.re * other, self.im * other)
        return GaussQ(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self):
        return GaussQ(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else ''}{self.im}i)"


G_ZERO = GaussQ.of(0)
G_ONE = GaussQ.of(1)

_ROOT4 = {
    Fraction(0): G_ONE,
    Fraction(1, 4): GaussQ.of(0, 1),
    Fraction(1, 2): GaussQ.of(-1),
    Fraction(3, 4): GaussQ.of(0, -1),
}


def char_table(chi: DirichletCharacter) -> list[GaussQ]:
    """chi as a dense table of Q(i) values on 0..M-1 (0 off the units)."""
    M = chi.modulus
    out = [G_ZERO] * max(M, 1)
    for x in range(max(M, 1)):
        if gcd(x, M) == 1:
            val = chi.evaluate(x if M > 1 else 1)
            if val.exponent not in _ROOT4:
                raise ValueError(f"character order {val.order} > 4 unsupported")
            out[x] = _ROOT4[val.exponent]
    return out


def psi_index(n: int) -> int:
    """[SL_2(Z) : Gamma_0(n)] = n * prod (1 + 1/p)."""
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out = out // p * (p + 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out = out // m * (m + 1)
    return out


def divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


@lru_cache(maxsize=None)
def class_number_weighted(D: int) -> Fraction:
    """h_w(D): reduced primitive forms of discriminant D < 0, with the
    weights h_w(-3) = 1/3 and h_w(-4) = 1/2."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"not a negative discriminant: {D}")
    if D == -3:
        return Fraction(1, 3)
    if D == -4:
        return Fraction(1, 2)
    count = 0
    a = 1
    while 4 * a * a <= -D * 4 // 3 + 4:  # a <= sqrt(|D|/3), small slack
        if a * a * 3 > -D:
            break
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            if b < 0 and (a == c or a == -b):
                continue  # reduced forms need b >= 0 when |b| = a or a = c
            count += 1
        a += 1
    return Fraction(count)


def _pk_row(t: int, n: int, k: int) -> int:
    """P_k(t, n) by the recurrence P_2 = 1, P_3 = t, P_j = t P_{j-1} - n P_{j-2}."""
    if k == 2:
        return 1
    prev, cur = 1, t
    for _ in range(k - 3):
        prev, cur = cur, t * cur - n * prev
    return cur


class TraceFormula:
    """Trace of T_n on S_k(N, chi) for gcd(n, N) = 1."""

    def __init__(self, N: int, k: int, chi: DirichletCharacter):
        if chi.modulus != N:
            chi = chi.extend_to(N)
        self.N = N
        self.k = k
        self.chi = chi
        self.table = char_table(chi)
        self.cond = chi.conductor()
        self.prim = chi.restrict_to_conductor()
        self.prim_table = char_table(self.prim)
        parity = 1 if self.table[(N - 1) % N].re == 1 else -1
        if N <= 2:
            parity = 1
        if parity != (1 if k % 2 == 0 else -1):
            raise ValueError(f"chi(-1) = {parity} incompatible with weight {k}")
        self._mu_maps: dict[int, dict[int, GaussQ]] = {}

    def _chi(self, x: int) -> GaussQ:
        return self.table[x % self.N] if self.N > 1 else G_ONE

    def _mu_map(self, M: int, n: int) -> dict[int, GaussQ]:
        """For modulus M (a multiple of N): t mod M -> sum chi(x) over the
        distinct residues x mod N that lift to solutions of
        x^2 - t x + n = 0 mod M.  Uses t = x + n/x mod M."""
        key = (M, n)
        cached = self._mu_maps.get(key)
        if cached is not None:
            return cached
        seen: dict[int, set[int]] = {}
        for x in range(M):
            if gcd(x, M) != 1:
                continue
            t = (x + n * pow(x, -1, M)) % M
            seen.setdefault(t, set()).add(x % self.N if self.N > 1 else 0)
        out = {
            t: sum((self._chi(x) for x in xs), G_ZERO) for t, xs in seen.items()
        }
        self._mu_maps[key] = out
        return out

    def _mu(self, t: int, f: int, n: int) -> GaussQ:
        nf = gcd(self.N, f)
        M = self.N * nf
        scale = Fraction(psi_index(self.N), psi_index(self.N // nf))
        val = self._mu_map(M, n).get(t % M, G_ZERO)
        return val * scale

    def trace(self, n: int) -> GaussQ:
        N, k = self.N, self.k
        if n < 1 or gcd(n, N) != 1:
            raise ValueError(f"need n >= 1 coprime to N, got n = {n}")
        total = G_ZERO

        m = isqrt(n)
        if m * m == n:
            total = total + self._chi(m) * (Fraction(k - 1, 12) * psi_index(N) * m ** (k - 2))

        a2 = G_ZERO
        t = -isqrt(4 * n - 1)
        while t * t < 4 * n:
            D0 = t * t - 4 * n
            pk = _pk_row(t, n, k)
            if pk != 0:
                f_sum = G_ZERO
                f = 1
                while f * f <= -D0:
                    if D0 % (f * f) == 0 and (D0 // (f * f)) % 4 in (0, 1):
                        f_sum = f_sum + self._mu(t, f, n) * class_number_weighted(D0 // (f * f))
                    f += 1
                a2 = a2 + f_sum * pk
            t += 1
        total = total - a2 * Fraction(1, 2)

        a3 = G_ZERO
        for d in divisors(n):
            if d * d > n:
                continue
            dd = n // d
            weight = Fraction(1, 2) if d == dd else Fraction(1)
            c_sum = G_ZERO
            for c in divisors(N):
                g = gcd(c, N // c)
                if (dd - d) % g:
                    continue
                if (N // g) % self.cond:
                    continue
                y = _crt(d, c, dd, N // c)
                c_sum = c_sum + self._euler_phi(g) * self._prim_chi(y)
            a3 = a3 + c_sum * (weight * d ** (k - 1))
        total = total - a3

        if k == 2:
            a4 = 0
            for c in divisors(n):
                if gcd(N, n // c) == 1:
                    a4 += c
            total = total + GaussQ.of(a4)
        return total

    def _prim_chi(self, y: int) -> GaussQ:
        return self.prim_table[y % self.cond] if self.cond > 1 else G_ONE

    @staticmethod
    def _euler_phi(g: int) -> int:
        out = g
        m = g
        p = 2
        while p * p <= m:
            if m % p == 0:
                out = out // p * (p - 1)
                while m % p == 0:
                    m //= p
            p += 1
        if m > 1:
            out = out // m * (m - 1)
        return out


def _crt(a: int, m: int, b: int, n: int) -> int:
    """x = a mod m, x = b mod n (solvable by assumption), mod lcm."""
    g = gcd(m, n)
    lcm = m * n // g
    if m == 1:
        return b % n if n > 1 else 0
    if n == 1:
        return a % m
    mm, nn = m // g, n // g
    # x = a + m * t with t = (b - a)/g * inv(m/g) mod n/g
    t = ((b - a) // g * pow(mm, -1, nn)) % nn
    return (a + m * t) % lcm


# -- independent anchor expansions --------------------------------------------


def _mul_series(a: list[int], b: list[int], prec: int) -> list[int]:
    out = [0] * prec
    for i, ai in enumerate(a):
        if ai == 0 or i >= prec:
            continue
        for j, bj in enumerate(b):
            if i + j >= prec:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def eta_quotient(parts: list[tuple[int, int]], prec: int) -> list[int]:
    """q-expansion of prod eta(m z)^r, assuming the q-power prefactor is q^1.

    Returns coefficients of q^1 .. q^prec as a list indexed from 0 (entry i is
    the coefficient of q^(i+1)).
    """
    weight24 = sum(m * r for m, r in parts)
    if weight24 != 24:
        raise ValueError("only eta quotients with q-prefactor q^1 are supported")
    series = [0] * (prec + 1)
    series[0] = 1
    for m, r in parts:
        if r < 0:
            raise ValueError("negative eta exponents not needed here")
        factor = [0] * (prec + 1)
        factor[0] = 1
        n = 1
        while m * n <= prec:
            term = [0] * (prec + 1)
            term[0] = 1
            term[m * n] = -1
            factor = _mul_series(factor, _pow_series(term, r, prec + 1), prec + 1)
            n += 1
        series = _mul_series(series, factor, prec + 1)
    return series[:prec]


def _pow_series(a: list[int], r: int, prec: int) -> list[int]:
    out = [0] * prec
    out[0] = 1
    base = a[:prec]
    e = r
    while e:
        if e & 1:
            out = _mul_series(out, base, prec)
        e >>= 1
        if e:
            base = _mul_series(base, base, prec)
    return out


ETA_CURVES = {
    11: [(1, 2), (11, 2)],
    14: [(1, 1), (2, 1), (7, 1), (14, 1)],
    15: [(1, 1), (3, 1), (5, 1), (15, 1)],
    20: [(2, 2), (10, 2)],
    24: [(2, 1), (4, 1), (6, 1), (12, 1)],
    27: [(3, 2), (9, 2)],
    32: [(4, 2), (8, 2)],
    36: [(6, 4)],
}


def gaussian_theta_weight5(prec: int) -> list[int]:
    """Coefficients a_1..a_prec of (1/4) sum_{z in Z[i]} z^4 q^(N(z)), the
    weight-5 level-4 CM form with the odd quadratic character mod 4.

    z^4 is constant on the four associates of z, so the sum over the lattice
    is 4 times the sum over ideals; computed by direct lattice summation.
    """
    sums = [0] * (prec + 1)
    r = isqrt(prec) + 1
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            n = a * a + b * b
            if n == 0 or n > prec:
                continue
            re2, im2 = a * a - b * b, 2 * a * b
            re4 = re2 * re2 - im2 * im2
            sums[n] += re4
    assert all(s % 4 == 0 for s in sums)
    return [s // 4 for s in sums[1:]]


def genus_x0(N: int) -> int:
    """Genus of X_0(N) by the classical formula, = dim S_2(Gamma_0(N))."""
    psi = psi_index(N)
    # elliptic point counts; the prime 2 contributes factor 1 to nu2.
    nu2 = 0 if N % 4 == 0 else _prod_local(N, lambda p: 1 if p == 2 else 1 + _kron(-1, p))
    nu3 = 0 if N % 9 == 0 else _prod_local(N, lambda p: 1 + _kron(-3, p))
    nuinf = sum(TraceFormula._euler_phi(gcd(d, N // d)) for d in divisors(N))
    twelve_g = 12 + psi - 3 * nu2 - 4 * nu3 - 6 * nuinf
    assert twelve_g % 12 == 0
    return twelve_g // 12


def _kron(a: int, p: int) -> int:
    if p == 2:
        return {1: 1, 7: 1, 3: -1, 5: -1}.get(a % 8, 0)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _prod_local(N: int, fn) -> int:
    out = 1
    m = N
    p = 2
    while p * p <= m:
        if m % p == 0:
            out *= fn(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out *= fn(m)
    return out


def run_anchor_battery(prec: int = 60, verbose: bool = True) -> None:
    """Assert the trace formula against independent ground truth."""

    def check(tag, got, want):
        assert got == want, f"{tag}: got {got}, want {want}"
        if verbose:
            print(f"  ok {tag}")

    # Discriminant form, level 1 weight 12.
    delta = eta_quotient([(1, 24)], prec)
    tf = TraceFormula(1, 12, DirichletCharacter.trivial(1))
    for n in (1, 2, 3, 4, 5, 6, 7, 9, 10, 16, 25, 30):
        check(f"tau({n})", tf.trace(n), GaussQ.of(delta[n - 1]))

    # Weight-2 eta-product elliptic curves (all newspaces of dimension 1).
    for N, parts in ETA_CURVES.items():
        coeffs = eta_quotient(parts, prec)
        tf = TraceFormula(N, 2, DirichletCharacter.trivial(N))
        check(f"dim S_2({N})", tf.trace(1), GaussQ.of(genus_x0(N)))
        for n in range(1, prec + 1):
            if gcd(n, N) == 1:
                check(f"a_{n}(eta {N})", tf.trace(n), GaussQ.of(coeffs[n - 1]))

    # Genus/dimension agreement for weight 2 trivial character, N <= 40.
    for N in range(1, 41):
        tf = TraceFormula(N, 2, DirichletCharacter.trivial(N))
        check(f"dim S_2({N})", tf.trace(1), GaussQ.of(genus_x0(N)))

    # Weight-3 eta product with quadratic nebentypus: eta(2z)^3 eta(6z)^3,
    # level 12, character the quadratic one of conductor 3.
    chi3_12 = DirichletCharacter.from_conrey(3, 2).extend_to(12)
    coeffs = eta_quotient([(2, 3), (6, 3)], prec)
    tf = TraceFormula(12, 3, chi3_12)
    check("dim S_3(12, chi3)", tf.trace(1), G_ONE)
    for n in range(1, prec + 1):
        if gcd(n, 12) == 1:
            check(f"a_{n}(eta 12 wt3)", tf.trace(n), GaussQ.of(coeffs[n - 1]))

    # Weight-5 CM theta series on level 4 (odd quadratic character mod 4).
    chi4 = DirichletCharacter.from_conrey(4, 3)
    theta = gaussian_theta_weight5(prec)
    tf = TraceFormula(4, 5, chi4)
    check("dim S_5(4, chi_4)", tf.trace(1), G_ONE)
    for n in range(1, prec + 1):
        if n % 2:
            check(f"a_{n}(theta wt5)", tf.trace(n), GaussQ.of(theta[n - 1]))

    # Weight-4 and weight-6 eta powers on levels 9 and 4.
    coeffs = eta_quotient([(3, 8)], prec)
    tf = TraceFormula(9, 4, DirichletCharacter.trivial(9))
    for n in range(1, prec + 1):
        if gcd(n, 3) == 1:
            check(f"a_{n}(eta 9 wt4)", tf.trace(n), GaussQ.of(coeffs[n - 1]))
    coeffs = eta_quotient([(2, 12)], prec)
    tf = TraceFormula(4, 6, DirichletCharacter.trivial(4))
    for n in range(1, prec + 1):
        if n % 2:
            check(f"a_{n}(eta 4 wt6)", tf.trace(n), GaussQ.of(coeffs[n - 1]))

    if verbose:
        print("anchor battery passed")


@lru_cache(maxsize=None)
def _new_dim_weight2(M: int) -> int:
    total = genus_x0(M)
    return total - sum(
        len(divisors(M // d)) * _new_dim_weight2(d) for d in divisors(M) if d != M
    )


if __name__ == "__main__":
    run_anchor_battery()
