"""Generate the three committed fixtures by computing the target newforms
exactly with the trace formula in traceform.py.

Run:  python3 tools/generate_fixtures.py [--prec 200]

The anchor battery runs first; each target space then gets sublevel
dimensions, newspace traces, and eigenvalue coordinates, with validation at
every step: integrality of traces, Deligne bounds, Hecke multiplicativity,
the T(q^2) recurrence, the inner-twist value pattern, rationality of the
adjoint values, and a CM exclusion scan.  Embeddings are pinned by explicit
sign conventions recorded in FIXTURES.md.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import product as iproduct
from math import gcd, isqrt
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent))

from traceform import GaussQ, TraceFormula, divisors, run_anchor_battery  # noqa: E402

from supercusp.dirichlet import (  # noqa: E402
    DirichletCharacter,
    RootOfUnity,
    canonical_generators,
    _prime_power_factors,
)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


# -- character orbit labels ------------------------------------------------------


def conrey_orbits(modulus: int) -> list[list[int]]:
    """Galois orbits of Conrey indexes mod `modulus`."""
    units = [n for n in range(1, max(modulus, 2)) if gcd(n, modulus) == 1] or [1]
    seen: set[int] = set()
    orbits = []
    for n in units:
        if n in seen:
            continue
        chi = DirichletCharacter.from_conrey(modulus, n)
        order = chi.order()
        orbit = sorted(
            {pow(n, e, modulus) if modulus > 1 else 1 for e in range(1, 2 * order + 1) if gcd(e, order) == 1}
        )
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def _euler_phi(g: int) -> int:
    out, m, p = g, g, 2
    while p * p <= m:
        if m % p == 0:
            out = out // p * (p - 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out = out // m * (m - 1)
    return out


def _moebius(n: int) -> int:
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def _trace_vector(modulus: int, n: int) -> list[Fraction]:
    chi = DirichletCharacter.from_conrey(modulus, n)
    order = chi.order()
    out = []
    for m in range(1, modulus + 1):
        if gcd(m, modulus) != 1:
            out.append(Fraction(0))
            continue
        e = chi.evaluate(m).exponent
        d = e.denominator
        if d == 1:
            out.append(Fraction(_euler_phi(order)))
        elif d == 2:
            out.append(Fraction(-_euler_phi(order)))
        else:
            # Tr_{Q(zeta_order)/Q}(zeta_d^j) for gcd(j, d) = 1
            out.append(Fraction(_moebius(d) * _euler_phi(order), _euler_phi(d)))
    return out


def orbit_letter(modulus: int, conrey: int) -> str:
    """Orbit letter with orbits sorted by (order, trace vector)."""
    keyed = sorted(
        conrey_orbits(modulus),
        key=lambda orb: (
            DirichletCharacter.from_conrey(modulus, orb[0]).order(),
            _trace_vector(modulus, orb[0]),
        ),
    )
    target = conrey % modulus if modulus > 1 else 1
    for i, orb in enumerate(keyed):
        if target in orb:
            return _letter(i)
    raise ValueError("conrey index not found")


def _letter(i: int) -> str:
    out = ""
    i += 1
    while i > 0:
        i, r = divmod(i - 1, 26)
        out = chr(ord("a") + r) + out
    return out


# -- newspace traces -------------------------------------------------------------


class NewspaceTraces:
    """Traces of T_n on the new subspace of S_k(N, chi), gcd(n, N) = 1."""

    def __init__(self, N: int, k: int, chi_prim: DirichletCharacter):
        self.N = N
        self.k = k
        self.cond = chi_prim.conductor()
        self.levels = [M for M in divisors(N) if M % self.cond == 0]
        self.formulas = {M: TraceFormula(M, k, chi_prim.extend_to(M)) for M in self.levels}
        self._cache: dict[tuple[int, int], GaussQ] = {}

    def full_trace(self, M: int, n: int) -> GaussQ:
        return self.formulas[M].trace(n)

    def new_trace(self, M: int, n: int) -> GaussQ:
        key = (M, n)
        if key not in self._cache:
            total = self.full_trace(M, n)
            for Mp in self.levels:
                if Mp != M and M % Mp == 0:
                    total = total - len(divisors(M // Mp)) * self.new_trace(Mp, n)
            self._cache[key] = total
        return self._cache[key]

    def dim(self, M: int) -> int:
        t = self.full_trace(M, 1)
        assert t.im == 0 and t.re.denominator == 1, f"dim not an integer: {t}"
        return int(t.re)

    def new_dim(self, M: int) -> int:
        t = self.new_trace(M, 1)
        assert t.im == 0 and t.re.denominator == 1
        return int(t.re)


# -- eigenvalue extraction -------------------------------------------------------


def _char_gauss(chi: DirichletCharacter, n: int) -> GaussQ:
    table = {
        Fraction(0): GaussQ.of(1),
        Fraction(1, 4): GaussQ.of(0, 1),
        Fraction(1, 2): GaussQ.of(-1),
        Fraction(3, 4): GaussQ.of(0, -1),
    }
    return table[chi.evaluate(n).exponent]


def extract_dim1_gaussian(ns: NewspaceTraces, primes: list[int], k: int, chi: DirichletCharacter):
    """Newspace of dimension 1 over Q(i): a_q is the new trace itself."""
    out = {}
    for q in primes:
        a = ns.new_trace(ns.N, q)
        assert a.re.denominator == 1 and a.im.denominator == 1, f"a_{q} not integral: {a}"
        assert a.re**2 + a.im**2 <= 4 * Fraction(q) ** (k - 1), f"Deligne bound fails at {q}: {a}"
        out[q] = a
    # Hecke recurrence at q^2 and multiplicativity on small coprime pairs.
    for q in primes[:5]:
        want = out[q] * out[q] - _char_gauss(chi, q) * Fraction(q) ** (k - 1)
        assert ns.new_trace(ns.N, q * q) == want, f"T(q^2) relation fails at q={q}"
    pairs = [(p1, p2) for i, p1 in enumerate(primes[:5]) for p2 in primes[i + 1 : 6]]
    for q1, q2 in pairs:
        assert ns.new_trace(ns.N, q1 * q2) == out[q1] * out[q2], f"multiplicativity fails at {q1}*{q2}"
    return out


def extract_dim2_real(
    ns: NewspaceTraces,
    primes: list[int],
    k: int,
    chi: DirichletCharacter,
    hecke_disc: int,
    anchor: tuple[int, int] | None = None,
):
    """Newspace of dimension 2 = {f, conj(f)} with rational traces and Hecke
    field Q(sqrt(hecke_disc)), hecke_disc < 0.

    Coefficients of inner-twist forms sit on the lines Q and Q*sqrt(disc):
    the trace t_q gives the rational ones outright (a_q = t_q/2), and the
    trace at ref*q recovers sign and size of the imaginary ones from a
    reference prime.  The T(q^2) recurrence is verified on an initial
    segment, Deligne bounds and the line pattern everywhere.
    """
    traces: dict[int, Fraction] = {}
    for q in primes:
        t = ns.new_trace(ns.N, q)
        assert t.im == 0 and t.re.denominator == 1, f"trace at {q} not a rational integer: {t}"
        traces[q] = t.re

    # Verify the two-line pattern on an initial segment via T(q^2).
    for q in primes[:8]:
        t2 = ns.new_trace(ns.N, q * q)
        assert t2.im == 0
        eps = _char_gauss(chi, q)
        assert eps.im == 0
        sum_sq = t2.re + 2 * eps.re * Fraction(q) ** (k - 1)  # a^2 + conj(a)^2
        norm = (traces[q] ** 2 - sum_sq) / 2
        disc = traces[q] ** 2 - 4 * norm
        if traces[q] != 0:
            assert disc == 0, f"a_{q} off the rational line: trace {traces[q]}, disc {disc}"
        else:
            ysq = disc / (4 * hecke_disc)
            assert ysq >= 0 and _is_square_fraction(ysq), f"disc pattern breaks at {q}: {disc}"

    if anchor is None:
        ref = next(q for q in primes if traces[q] == 0 and _ref_nonzero(ns, q, chi, k, hecke_disc))
        ref_y = _imag_size(ns, ref, chi, k, hecke_disc)
    else:
        ref, y0 = anchor
        size = _imag_size(ns, ref, chi, k, hecke_disc)
        assert size == abs(Fraction(y0)), f"anchor magnitude mismatch at {ref}: computed {size}"
        ref_y = Fraction(y0)

    out: dict[int, tuple[Fraction, Fraction]] = {}
    for q in primes:
        if traces[q] != 0:
            assert traces[q] % 2 == 0, f"odd trace at rational prime {q}"
            x = traces[q] / 2
            out[q] = (x, Fraction(0))
            assert x * x <= 4 * Fraction(q) ** (k - 1), f"Deligne fails at {q}"
        elif q == ref:
            out[q] = (Fraction(0), ref_y)
        else:
            t = ns.new_trace(ns.N, ref * q)
            assert t.im == 0
            # a_ref * a_q + conjugate = 2 * disc * y_ref * y_q
            y = t.re / (2 * hecke_disc * ref_y)
            out[q] = (Fraction(0), y)
            assert -hecke_disc * y * y <= 4 * Fraction(q) ** (k - 1), f"Deligne fails at {q}"
    # extra multiplicativity spot checks across the two lines
    rats = [q for q in primes[:10] if out[q][0] != 0]
    ims = [q for q in primes[:10] if out[q][1] != 0]
    if rats and ims:
        q1, q2 = rats[0], ims[0]
        t = ns.new_trace(ns.N, q1 * q2)
        assert t.re == 0 and t.im == 0, f"mixed product trace should vanish at {q1}*{q2}"
    if len(ims) >= 2:
        q1, q2 = ims[0], ims[1]
        t = ns.new_trace(ns.N, q1 * q2)
        want = 2 * hecke_disc * out[q1][1] * out[q2][1]
        assert t.re == want, f"imaginary product trace mismatch at {q1}*{q2}"
    if len(rats) >= 2:
        q1, q2 = rats[0], rats[1]
        t = ns.new_trace(ns.N, q1 * q2)
        assert t.re == 2 * out[q1][0] * out[q2][0], f"rational product trace mismatch at {q1}*{q2}"
    return out


def _imag_size(ns: NewspaceTraces, q: int, chi: DirichletCharacter, k: int, hecke_disc: int) -> Fraction:
    t2 = ns.new_trace(ns.N, q * q)
    eps = _char_gauss(chi, q)
    sum_sq = t2.re + 2 * eps.re * Fraction(q) ** (k - 1)
    ysq = sum_sq / (2 * hecke_disc)  # a^2 = disc * y^2, sum_sq = 2 a^2
    assert ysq >= 0 and _is_square_fraction(ysq), f"imaginary size not square at {q}: {ysq}"
    return _sqrt_fraction(ysq)


def _ref_nonzero(ns, q, chi, k, hecke_disc) -> bool:
    return _imag_size(ns, q, chi, k, hecke_disc) != 0


def _is_square_fraction(x: Fraction) -> bool:
    if x < 0:
        return False
    return isqrt(x.numerator) ** 2 == x.numerator and isqrt(x.denominator) ** 2 == x.denominator


def _sqrt_fraction(x: Fraction) -> Fraction:
    return Fraction(isqrt(x.numerator), isqrt(x.denominator))


# -- inner twists and CM exclusion -------------------------------------------------


def _all_characters(modulus: int):
    gens = []
    for p, q in _prime_power_factors(modulus):
        gens.extend(canonical_generators(q, p))
    orders = [o for _, o in gens]
    for exps in iproduct(*[range(o) for o in orders]):
        yield DirichletCharacter.from_gen_images(
            modulus, [RootOfUnity.of(e, o) for e, o in zip(exps, orders)]
        )


def _match_character(level: int, ratios: dict[int, Fraction]) -> DirichletCharacter:
    for modulus in (level, 4 * level, 8 * level):
        for cand in _all_characters(modulus):
            if all(cand.evaluate(q).exponent == r for q, r in ratios.items()):
                return cand
    raise AssertionError("no character matches the conjugation ratios")


def find_inner_twist_real(level: int, coeffs: dict[int, tuple[Fraction, Fraction]]) -> DirichletCharacter:
    """conj(a_q) = eta(q) a_q: +1 on the rational line, -1 on the imaginary one."""
    ratios = {}
    for q, (x, y) in coeffs.items():
        if x == 0 and y == 0:
            continue
        assert x == 0 or y == 0, f"a_{q} off the twist lines"
        ratios[q] = Fraction(0) if y == 0 else Fraction(1, 2)
    return _match_character(level, ratios)


def find_inner_twist_gaussian(level: int, coeffs: dict[int, GaussQ]) -> DirichletCharacter:
    """Q(i) coefficients: conj(a)/a must be a 4th root of unity per prime."""
    ratios = {}
    for q, a in coeffs.items():
        if a.is_zero():
            continue
        if a.im == 0:
            ratios[q] = Fraction(0)
        elif a.re == 0:
            ratios[q] = Fraction(1, 2)
        elif a.re == -a.im:
            ratios[q] = Fraction(1, 4)  # conj(a)/a = i on the (1, -1) line
        elif a.re == a.im:
            ratios[q] = Fraction(3, 4)  # conj(a)/a = -i on the (1, 1) line
        else:
            raise AssertionError(f"a_{q} = {a} not on a twist line")
    return _match_character(level, ratios)


def check_no_cm(level: int, zero_primes: set[int], nonzero_primes: set[int]) -> None:
    """A CM form would have a_q = 0 exactly where some quadratic character is
    -1; no such character may fit the computed zero pattern."""
    for modulus in (level, 4 * level, 8 * level):
        for cand in _all_characters(modulus):
            if cand.order() != 2:
                continue
            if zero_primes and all(cand.evaluate(q).exponent == Fraction(1, 2) for q in zero_primes):
                if all(cand.evaluate(q).exponent == 0 for q in nonzero_primes):
                    raise AssertionError(f"coefficient pattern matches CM by {cand}")


# -- assembling fixtures -----------------------------------------------------------


def _primes_upto(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(2, bound + 1) if sieve[i]]


def fill_multiplicative(
    k: int,
    chi: DirichletCharacter,
    prime_coeffs: dict[int, tuple[Fraction, Fraction]],
    hecke_disc: int,
    bound: int,
    forced_zero_primes: tuple[int, ...] = (),
) -> dict[int, tuple[Fraction, Fraction]]:
    """All a_n for n <= bound whose odd prime support lies in the computed
    primes; a_2 = 0 (supercuspidal level), so 2-power parts vanish.  Bad odd
    primes p with p^2 | N and cond(eps_p) < p^(v_p(N)) also have a_p = 0 and
    are passed in forced_zero_primes; other bad-prime entries are omitted."""

    def mul(u, v):
        return (u[0] * v[0] + hecke_disc * u[1] * v[1], u[0] * v[1] + u[1] * v[0])

    one = (Fraction(1), Fraction(0))
    powers: dict[int, dict[int, tuple[Fraction, Fraction]]] = {}
    for q, a in prime_coeffs.items():
        eps = _char_gauss(chi, q)
        eps_pair = (eps.re, eps.im)
        if eps.im != 0:
            assert hecke_disc == -1, "non-real nebentypus value outside Q(i)"
        pw = {0: one, 1: a}
        j = 2
        while q**j <= bound:
            lead = mul(a, pw[j - 1])
            tail = mul(eps_pair, pw[j - 2])
            scale = Fraction(q) ** (k - 1)
            pw[j] = (lead[0] - scale * tail[0], lead[1] - scale * tail[1])
            j += 1
        powers[q] = pw
    for p0 in (2, *forced_zero_primes):
        zero_pw = {0: one}
        j = 1
        while p0**j <= bound:
            zero_pw[j] = (Fraction(0), Fraction(0))
            j += 1
        powers[p0] = zero_pw

    out = {1: one}
    for n in range(2, bound + 1):
        m, val = n, one
        for q, pw in powers.items():
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            if e:
                val = mul(val, pw[e])
        if m == 1:
            out[n] = val
    return out


def char_dict(chi: DirichletCharacter) -> dict:
    out = {
        "modulus": chi.modulus,
        "values_on_gens": [str(img.exponent) for _, img in chi.generator_images()],
    }
    if chi.conrey is not None:
        out["conrey"] = chi.conrey
    return out


def fixture_dict(label, level, k, conrey, hecke_disc, an, bound, twists):
    entries = [{"n": n, "a": [str(x), str(y)]} for n, (x, y) in sorted(an.items())]
    return {
        "label": label,
        "level": level,
        "weight": k,
        "char": {"modulus": level, "conrey": conrey},
        "hecke_field": {"degree": 2, "disc": hecke_disc},
        "an": entries,
        "coeff_bound": bound,
        "inner_twists": twists,
        "F": {"degree": 1, "disc": 0},
        "is_cm": False,
        "is_p_minimal": {"2": True},
    }


def _twist_entry(eta: DirichletCharacter) -> dict:
    return {"auto": "conj", "char": char_dict(eta), "ramified": eta.conductor() % 2 == 0}


def _check_adjoint_rational(coeffs, chi, hecke_disc):
    """a_q^2 eps(q)^(-1) must be rational (the invariant field is Q)."""
    for q, val in coeffs.items():
        eps = _char_gauss(chi, q)
        if isinstance(val, GaussQ):
            adj = val * val * eps.conj()  # eps^(-1) = conj(eps) for |eps| = 1
            assert adj.im == 0, f"adjoint value at {q} not rational"
        else:
            x, y = val
            # (x + y sqrt(d))^2 = x^2 + d y^2 + 2xy sqrt(d): rational iff xy = 0
            assert x * y == 0 and eps.im == 0, f"adjoint value at {q} not rational"


def build_level20(bound: int) -> dict:
    print("== level 20, weight 3, quartic nebentypus of conductor 5")
    primes = [q for q in _primes_upto(bound) if gcd(q, 20) == 1]
    chosen = None
    for conrey in (13, 17):
        chi = DirichletCharacter.from_conrey(20, conrey)
        ns = NewspaceTraces(20, 3, chi.restrict_to_conductor())
        dims = {M: ns.dim(M) for M in ns.levels}
        newdims = {M: ns.new_dim(M) for M in ns.levels}
        print(f"  conrey 20.{conrey}: dims {dims}, new dims {newdims}")
        assert newdims[20] == 1, "expected a one-dimensional newspace per character"
        coeffs = extract_dim1_gaussian(ns, primes, 3, chi)
        print(f"  a_17 = {coeffs[17]}")
        if coeffs[17] == GaussQ.of(1, -1):
            chosen = (conrey, chi, coeffs)
    assert chosen is not None, "neither Conrey index gives a_17 = 1 - i"
    conrey, chi, coeffs = chosen
    eta = find_inner_twist_gaussian(20, coeffs)
    print(f"  inner twist char: modulus {eta.modulus}, conductor {eta.conductor()}, order {eta.order()}")
    _check_adjoint_rational(coeffs, chi, -1)
    zeros = {q for q, a in coeffs.items() if a.is_zero()}
    check_no_cm(20, zeros, set(coeffs) - zeros)
    pairs = {q: (a.re, a.im) for q, a in coeffs.items()}
    an = fill_multiplicative(3, chi, pairs, -1, bound)
    label = f"20.3.{orbit_letter(20, conrey)}.a"
    fx = fixture_dict(label, 20, 3, conrey, -1, an, bound, [_twist_entry(eta)])
    print(f"  label {label}; {len(an)} coefficients stored")
    return fx


def build_level36(bound: int) -> dict:
    print("== level 36, weight 5, quadratic nebentypus of conductor 3")
    chi = DirichletCharacter.from_conrey(36, 17)
    assert chi.order() == 2 and chi.conductor() == 3
    primes = [q for q in _primes_upto(bound) if gcd(q, 36) == 1]
    ns = NewspaceTraces(36, 5, chi.restrict_to_conductor())
    dims = {M: ns.dim(M) for M in ns.levels}
    newdims = {M: ns.new_dim(M) for M in ns.levels}
    print(f"  dims {dims}, new dims {newdims}")
    assert newdims[36] == 2, f"expected newspace dimension 2, got {newdims[36]}"
    coeffs = extract_dim2_real(ns, primes, 5, chi, -2, anchor=(29, 459))
    assert coeffs[29] == (Fraction(0), Fraction(459))
    print(f"  a_29 = 459*sqrt(-2); a_29^2 = {-2 * 459**2}")
    eta = find_inner_twist_real(36, coeffs)
    print(f"  inner twist char: modulus {eta.modulus}, conductor {eta.conductor()}, order {eta.order()}")
    _check_adjoint_rational(coeffs, chi, -2)
    zeros = {q for q, (x, y) in coeffs.items() if x == 0 and y == 0}
    check_no_cm(36, zeros, set(coeffs) - zeros)
    # 3^2 | 36 with cond(eps_3) = 3 < 9 forces a_3 = 0 (so 3 is supercuspidal too)
    an = fill_multiplicative(5, chi, coeffs, -2, bound, forced_zero_primes=(3,))
    label = f"36.5.{orbit_letter(36, 17)}.a"
    fx = fixture_dict(label, 36, 5, 17, -2, an, bound, [_twist_entry(eta)])
    print(f"  label {label}; {len(an)} coefficients stored")
    return fx


def build_level24(bound: int) -> dict:
    print("== level 24, weight 3, odd quadratic nebentypus")
    primes = [q for q in _primes_upto(bound) if gcd(q, 24) == 1]
    chosen = None
    for conrey in (17, 7):  # conductor 3, then conductor 4
        chi = DirichletCharacter.from_conrey(24, conrey)
        ns = NewspaceTraces(24, 3, chi.restrict_to_conductor())
        dims = {M: ns.dim(M) for M in ns.levels}
        newdims = {M: ns.new_dim(M) for M in ns.levels}
        print(f"  conrey 24.{conrey} (cond {chi.conductor()}): dims {dims}, new dims {newdims}")
        if newdims[24] != 2:
            print("    skipped: newspace dimension is not 2")
            continue
        try:
            coeffs = extract_dim2_real(ns, primes, 3, chi, -2)
        except AssertionError as exc:
            print(f"    not a Q(sqrt -2) eigenvalue pattern: {exc}")
            continue
        chosen = (conrey, chi, coeffs)
        break
    assert chosen is not None, "no candidate nebentypus carries the Q(sqrt -2) newform"
    conrey, chi, coeffs = chosen
    first_im = next(q for q in primes if coeffs[q][1] != 0)
    if coeffs[first_im][1] < 0:
        coeffs = {q: (x, -y) for q, (x, y) in coeffs.items()}
    print(f"  embedding pinned by a_{first_im} = {coeffs[first_im][1]}*sqrt(-2)")
    eta = find_inner_twist_real(24, coeffs)
    print(f"  inner twist char: modulus {eta.modulus}, conductor {eta.conductor()}, order {eta.order()}")
    _check_adjoint_rational(coeffs, chi, -2)
    zeros = {q for q, (x, y) in coeffs.items() if x == 0 and y == 0}
    check_no_cm(24, zeros, set(coeffs) - zeros)
    an = fill_multiplicative(3, chi, coeffs, -2, bound)
    label = f"24.3.{orbit_letter(24, conrey)}.a"
    fx = fixture_dict(label, 24, 3, conrey, -2, an, bound, [_twist_entry(eta)])
    print(f"  label {label}; {len(an)} coefficients stored")
    return fx


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--prec", type=int, default=200, help="coefficient bound")
    ap.add_argument("--skip-anchors", action="store_true")
    args = ap.parse_args()

    if not args.skip_anchors:
        print("running anchor battery ...")
        run_anchor_battery(verbose=False)
        print("anchor battery passed")

    FIXTURE_DIR.mkdir(exist_ok=True)
    for fx in (build_level20(args.prec), build_level36(args.prec), build_level24(args.prec)):
        path = FIXTURE_DIR / f"{fx['label']}.json"
        path.write_text(json.dumps(fx, indent=1) + "\n")
        print(f"  wrote {path}")


if __name__ == "__main__":
    main()
