"""Theorem dispatch: from a classified supercuspidal prime, an inertial
descriptor, and optional error-term data to a Ramified / MatrixAlgebra /
Undetermined verdict with a full derivation trace.

The engine computes the companion adjoint slope m_v from the auxiliary prime
p', selects the applicable theorem by the relation of K to F_v, evaluates the
symbol-valued error term where inputs allow, and otherwise returns a
structured Undetermined naming exactly the missing inputs.  It never guesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import auxprimes
from .errors import (
    ConsistencyViolation,
    FieldMismatch,
    InternalInconsistency,
    InvalidPlace,
    NotQuadratic,
    Unsupported,
    WrongCase,
    ZeroCoefficient,
)
from .exact import (
    INF,
    QuadElem,
    ResidueField,
    as_fraction,
    is_square_in_qp,
    splitting_type,
    two_adic_square_class,
    val_p,
    val_quad,
)
from .hilbert import SymbolPlace, norm_symbol, symbol_odd, symbol_two
from .newform import (
    HeckeElem,
    NewformData,
    Place,
    PrimeLocalData,
    is_zero_elem,
    local_decompose,
    is_supercuspidal,
)


class Status(Enum):
    RAMIFIED = "Ramified"
    MATRIX_ALGEBRA = "MatrixAlgebra"
    UNDETERMINED = "Undetermined"


class DescriptorKind(Enum):
    DIHEDRAL_UNRAMIFIED = "dihedral_unramified"
    DIHEDRAL_RAMIFIED = "dihedral_ramified"
    EXCEPTIONAL = "exceptional"


# valuation of the discriminant of Q_2(sqrt d) by 2-adic square class of d
_DISC_VAL_2 = {3: 2, 7: 2, 2: 3, 6: 3, 10: 3, 14: 3}


@dataclass
class InertialDescriptor:
    """Inertial data of the local representation, supplied (not computed).

    Dihedral kinds carry the discriminant of K = Q_p(sqrt(K_disc)) and the
    conductor exponent a(chi); l, r, s are the tame and 2-power inertia
    exponents when known.  Exceptional (p = 2 only, projective image S4)
    carries the discriminant of the field cut out by ker(d), and D(-1) for
    even weights where the nebentypus cannot stand in for the determinant.
    """

    kind: DescriptorKind
    K_disc: int | None = None
    a_chi: int | None = None
    l: int | None = None
    r: int | None = None
    s: int | None = None
    level_zero: bool = False
    D_Kprime: int | None = None
    D_minus_one: int | None = None

    def validate(self, p: int) -> None:
        if self.kind is DescriptorKind.EXCEPTIONAL:
            if p != 2:
                raise WrongCase("exceptional descriptors occur only at p = 2")
            if self.D_Kprime is None:
                raise InvalidPlace("exceptional descriptor needs D_Kprime")
            if self.D_minus_one not in (None, 1, -1):
                raise InvalidPlace("D(-1) must be +1 or -1")
            return
        if self.K_disc is None:
            raise InvalidPlace("dihedral descriptor needs K_disc")
        kind = splitting_type(self.K_disc, p)
        if kind == "split":
            raise NotQuadratic(f"{self.K_disc} is a square in Q_{p}; K is not quadratic")
        expected = "inert" if self.kind is DescriptorKind.DIHEDRAL_UNRAMIFIED else "ramified"
        if kind != expected:
            raise InvalidPlace(
                f"K_disc {self.K_disc} gives a {kind} extension of Q_{p}, descriptor says {expected}"
            )
        if p == 2 and self.r is not None and self.s is not None and not self.r < self.s:
            raise InvalidPlace(f"p = 2 dihedral inertia exponents need r < s, got r={self.r}, s={self.s}")
        if self.a_chi is not None and self.a_chi < 0:
            raise InvalidPlace("a(chi) must be >= 0")

    @classmethod
    def from_dict(cls, raw: dict) -> "InertialDescriptor":
        kind = DescriptorKind(raw["kind"])
        return cls(
            kind=kind,
            K_disc=raw.get("K_disc"),
            a_chi=raw.get("a_chi"),
            l=raw.get("l"),
            r=raw.get("r"),
            s=raw.get("s"),
            level_zero=bool(raw.get("level_zero", False)),
            D_Kprime=raw.get("D_Kprime"),
            D_minus_one=raw.get("D_minus_one"),
        )


@dataclass
class ErrorTermData:
    """Quadratic-extension data feeding the error terms; all optional.

    Values are nonzero rationals (elements of F_v^x for the F = Q cases the
    engine evaluates concretely).  pi_squared is the image of pi^2 in F_v^x
    for a declared uniformizer pi of K.
    """

    t: Fraction | None = None
    t1: Fraction | None = None
    t2: Fraction | None = None
    c: Fraction | None = None
    d0: Fraction | None = None
    pi_squared: Fraction | None = None

    def __post_init__(self):
        for name in ("t", "t1", "t2", "c", "d0", "pi_squared"):
            v = getattr(self, name)
            if v is not None:
                v = as_fraction(v)
                if v == 0:
                    raise InvalidPlace(f"error-term input {name} must be nonzero")
                setattr(self, name, v)

    @classmethod
    def from_dict(cls, raw: dict) -> "ErrorTermData":
        kwargs = {}
        for name in ("t", "t1", "t2", "c", "d0", "pi_squared"):
            if raw.get(name) is not None:
                kwargs[name] = as_fraction(raw[name])
        return cls(**kwargs)


EMPTY_ERROR_DATA = ErrorTermData()


@dataclass
class Verdict:
    status: Status
    place: Place
    theorem: str
    parity_m: int | None = None
    m_v: int | None = None
    parity_error: int | None = None
    aux_primes: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    missing_inputs: list = field(default_factory=list)
    residual: str | None = None

    def __post_init__(self):
        # Structural invariant: a determined status must match the parities.
        if self.status is not Status.UNDETERMINED and self.parity_m is not None and self.parity_error is not None:
            ramified = (self.parity_m + self.parity_error) % 2 == 1
            if ramified != (self.status is Status.RAMIFIED):
                raise InternalInconsistency(
                    f"status {self.status} contradicts parities m={self.parity_m}, err={self.parity_error}"
                )
        if self.status is Status.UNDETERMINED and not self.missing_inputs:
            raise InternalInconsistency("Undetermined verdict must name its missing inputs")

    def to_json(self) -> dict:
        return {
            "place": {
                "p": self.place.p,
                "e_v": self.place.e_v,
                "f_v": self.place.f_v,
                "index": self.place.index,
            },
            "status": self.status.value,
            "m_v": self.m_v,
            "error_parity": self.parity_error,
            "theorem": self.theorem,
            "aux_primes": dict(self.aux_primes),
            "trace": [list(step) for step in self.trace],
            "missing_inputs": list(self.missing_inputs),
            "residual": self.residual,
        }


# -- conductor bookkeeping at p = 2 -------------------------------------------


def _disc_valuation_2(K_disc: int) -> int:
    cls = two_adic_square_class(K_disc)
    if cls == 5:
        return 0  # unramified
    return _DISC_VAL_2[cls]


def conductor_consistency(desc: InertialDescriptor, N_2: int) -> bool:
    """Whether N_2 matches the conductor formula for the descriptor's K.

    Unramified K: N_2 = 2 a(chi) (always even).  Ramified K with discriminant
    valuation delta: N_2 = delta + a(chi).  N_2 = 2 additionally forces K
    unramified with a(chi) = 1.
    """
    if desc.kind is DescriptorKind.EXCEPTIONAL:
        return True
    if desc.a_chi is None or desc.K_disc is None:
        return False
    if desc.kind is DescriptorKind.DIHEDRAL_UNRAMIFIED:
        expected = 2 * desc.a_chi
    else:
        expected = _disc_valuation_2(desc.K_disc) + desc.a_chi
        if N_2 == 2:
            # The ramified possibility at N_2 = 2 would need a(chi) = 0,
            # excluded for a minimal form.
            return False
    return expected == N_2


def ensure_conductor_consistency(desc: InertialDescriptor, N_2: int) -> None:
    if not conductor_consistency(desc, N_2):
        if desc.kind is DescriptorKind.DIHEDRAL_UNRAMIFIED:
            expected = None if desc.a_chi is None else 2 * desc.a_chi
        else:
            expected = None if desc.a_chi is None else _disc_valuation_2(desc.K_disc) + desc.a_chi
        raise ConsistencyViolation(expected, N_2, f"conductor formula gives N_2 = {expected}, level has {N_2}")


# -- the good/bad dichotomy ----------------------------------------------------


def is_good(p: int, l: int) -> bool:
    """Level-zero unramified case: good unless l is an odd multiple of (p+1)/2."""
    if p == 2 or p < 3:
        raise WrongCase("good/bad applies to odd primes")
    return l % (p + 1) != (p + 1) // 2


def is_good_shortcut(p: int, C_p: int) -> bool | None:
    """True when the congruence class of p and C_p force goodness; None when
    the shortcut is silent."""
    if p % 4 == 1 and C_p == 0:
        return True
    if p % 4 == 3 and C_p == 1:
        return True
    return None


# -- the companion adjoint slope -----------------------------------------------


def _adjoint_value(f: NewformData, q: int) -> HeckeElem:
    """a_q^2 * eps(q)^(-1) as an element of the Hecke field."""
    a = f.coefficient(q)
    if is_zero_elem(a):
        raise ZeroCoefficient(f"a_{q} = 0 has no finite slope")
    eps = f.eps_value_in_hecke_field(q)
    if isinstance(a, Fraction):
        return a * a / eps
    return a * a * eps.inverse()


def _into_F(f: NewformData, x: HeckeElem) -> Fraction | QuadElem:
    """Check x lies in the twist-invariant field F and return it there."""
    if f.F_degree == 1:
        if isinstance(x, QuadElem):
            if not x.is_rational():
                raise FieldMismatch(f"{x} is not in F = Q")
            return x.as_fraction()
        return x
    # F quadratic: F is then the whole Hecke field.
    if isinstance(x, Fraction):
        return QuadElem.of(f.F_disc, x)
    if x.d != f.F_disc:
        raise FieldMismatch(f"{x} lies in Q(sqrt {x.d}), not F = Q(sqrt {f.F_disc})")
    return x


def _surjective_valuation(f: NewformData, x, place: Place) -> int:
    """w(x) at the place, normalized so the uniformizer has valuation 1."""
    if isinstance(x, Fraction):
        v = place.e_v * val_p(x, place.p)
    else:
        y = x.conj() if place.index == 1 else x
        v = val_quad(y, place.ideal, field_disc=f.F_disc)
    if v == INF:
        raise ZeroCoefficient("valuation of zero")
    return int(v)


def companion_slope(f: NewformData, place: Place, p_prime: int) -> int:
    """m_v = f_v * w(a_{p'}^2 eps(p')^{-1}), w the surjective valuation at v.

    Equivalent to [F_v:Q_p] * v(...) with v(p) = 1; the two normalizations
    agree since [F_v:Q_p] = e_v f_v and v = w / e_v.
    """
    x = _into_F(f, _adjoint_value(f, p_prime))
    return place.f_v * _surjective_valuation(f, x, place)


# -- relation of K to F_v --------------------------------------------------------


def k_fv_relation(K_disc: int, p: int, place: Place, F_degree: int, F_disc: int | None) -> str:
    """One of "subset" (K inside F_v), "unramified" (KF_v|F_v unramified
    quadratic), "ramified" (KF_v|F_v ramified quadratic)."""
    if splitting_type(K_disc, p) == "split":
        raise NotQuadratic(f"{K_disc} is a square in Q_{p}")
    fv_is_qp = F_degree == 1 or (F_degree == 2 and splitting_type(F_disc, p) == "split")
    if fv_is_qp:
        return "unramified" if splitting_type(K_disc, p) == "inert" else "ramified"
    if p == 2:
        raise Unsupported("K/F_v comparison over 2-adic fields beyond Q_2 is not implemented")
    # F_v = Q_p(sqrt F_disc), a genuine quadratic extension.
    if _same_qp_square_class(K_disc, F_disc, p):
        return "subset"
    k_kind = splitting_type(K_disc, p)
    f_kind = splitting_type(F_disc, p)
    if k_kind == "inert":
        # Unramified K: contained in F_v iff F_v is unramified (handled above),
        # otherwise KF_v|F_v is unramified quadratic.
        return "subset" if f_kind == "inert" else "unramified"
    # Ramified K.
    if f_kind == "inert":
        return "ramified"  # odd valuation of K_disc stays odd over an unramified F_v
    # Both ramified with different square classes: K_disc * F_disc is a
    # nonsquare unit, so KF_v|F_v is unramified.
    return "unramified"


def _same_qp_square_class(a: int, b: int, p: int) -> bool:
    ratio = Fraction(a, b)
    return is_square_in_qp(ratio, p)


# -- error terms -----------------------------------------------------------------


@dataclass
class ErrorTermResult:
    """Outcome of an error-term evaluation.

    parity is the error parity n_v (or r_v) mod 2, None when inputs are
    missing.  symbol_parity carries the parity of the one-shot norm-symbol
    form in the odd ramified case (which packages m_v + n_v together).
    """

    parity: int | None
    trace: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    residual: str | None = None
    symbol_parity: int | None = None


def _symbol_rationals_at_place(a: Fraction, b: Fraction, place: Place) -> int:
    """(a, b)_v for rational a, b at a place of F above an odd prime."""
    p = place.p
    if p == 2:
        if place.local_degree != 1:
            raise Unsupported("2-adic symbols beyond Q_2 are not implemented")
        return symbol_two(a, b)
    if place.e_v == 2:
        # Rationals have even valuation at a ramified place and their residues
        # are squares to even exponents: every factor of the symbol is +1.
        return 1
    model = ResidueField(p, place.f_v)
    sp = SymbolPlace(p=p, e_v=1, f_v=place.f_v, residue_model=model)
    return symbol_odd(a, b, sp)


def error_term_odd_bad(f: NewformData, place: Place, err: ErrorTermData) -> ErrorTermResult:
    """(t, c)_v for a bad level-zero unramified odd prime; Unknown when the
    quadratic-extension data is absent."""
    missing = [name for name in ("t", "c") if getattr(err, name) is None]
    if missing:
        return ErrorTermResult(
            parity=None,
            missing=missing,
            residual="(t, c)_v",
            trace=[("error-term", "unknown", "needs t, c")],
        )
    sym = _symbol_rationals_at_place(err.t, err.c, place)
    parity = 0 if sym == 1 else 1
    return ErrorTermResult(
        parity=parity,
        trace=[("symbol", f"(t, c)_v = ({err.t}, {err.c})_{place.p} = {sym}", "bad-prime error term")],
    )


def error_term_odd_ramified(
    f: NewformData,
    place: Place,
    desc: InertialDescriptor,
    p_dprime: int | None,
    k: int,
    err: ErrorTermData = EMPTY_ERROR_DATA,
    m_parity: int | None = None,
) -> ErrorTermResult:
    """Error term for an odd ramified supercuspidal prime with KF_v|F_v
    ramified quadratic (p = 3 mod 4, e_v odd).

    For f_v even the symbol is +1 outright and the error parity is 0.  For
    f_v odd the norm-symbol form ((-1)^k a_{p''}^2 eps(p'')^{-1}, KF_v|F_v)
    is evaluated; it packages the parity of m_v + n_v, so the error parity
    n_v is recovered against the supplied m_parity.  When pi_squared is also
    supplied, the raw form (pi^2, a_{p''}^2)_v is computed as a cross-check.
    """
    if place.p % 4 != 3:
        raise WrongCase("KF_v|F_v ramified quadratic needs p = 3 mod 4")
    if place.f_v % 2 == 0:
        return ErrorTermResult(
            parity=0,
            trace=[("error-term", "0", "f_v even makes the symbol trivially +1")],
        )
    if p_dprime is None:
        return ErrorTermResult(
            parity=None,
            missing=["p_dprime"],
            residual="(pi^2, a_{p''}^2)_v",
        )
    arg = _into_F(f, _adjoint_value(f, p_dprime))
    sign = Fraction(-1) if k % 2 else Fraction(1)
    trace = []
    if isinstance(arg, QuadElem):
        raise Unsupported("norm symbols over quadratic completions are not implemented")
    value = sign * arg
    sym = norm_symbol(value, Fraction(desc.K_disc), place.p)
    total_parity = 0 if sym == 1 else 1
    trace.append(
        (
            "symbol",
            f"((-1)^k a_q^2 eps(q)^(-1), K|Q_p) = ({value}, {desc.K_disc})_{place.p} = {sym}",
            f"norm-symbol form at q = {p_dprime}",
        )
    )
    parity = None if m_parity is None else (total_parity - m_parity) % 2
    if err.pi_squared is not None and m_parity is not None:
        raw_arg = f.coefficient(p_dprime)
        raw_sq = raw_arg * raw_arg
        raw_in_f = _into_F(f, raw_sq)
        if isinstance(raw_in_f, QuadElem):
            raise Unsupported("norm symbols over quadratic completions are not implemented")
        raw_sym = _symbol_rationals_at_place(err.pi_squared, raw_in_f, place)
        raw_parity = 0 if raw_sym == 1 else 1
        trace.append(
            (
                "symbol",
                f"(pi^2, a_q^2)_v = ({err.pi_squared}, {raw_in_f})_{place.p} = {raw_sym}",
                "raw error term, cross-check",
            )
        )
        if parity is not None and raw_parity != parity:
            raise InternalInconsistency(
                f"raw error parity {raw_parity} disagrees with norm-symbol route {parity}"
            )
    return ErrorTermResult(parity=parity, trace=trace, symbol_parity=total_parity)


def _zeta_power_of_two(r: int) -> Fraction:
    """zeta_{2^(r-1)} as a rational: 1 for r <= 1, -1 for r = 2."""
    if r <= 1:
        return Fraction(1)
    if r == 2:
        return Fraction(-1)
    raise Unsupported(f"zeta_(2^{r - 1}) is irrational; r = {r} needs F bigger than Q")


def _trace_of_zeta_squared(s: int) -> Fraction:
    """(zeta_{2^s} + zeta_{2^s}^{-1})^2 via T_s^2 = 2 + T_{s-1}, T_2 = 0."""
    if s == 1:
        return Fraction(4)
    if s == 2:
        return Fraction(0)
    if s == 3:
        return Fraction(2)
    raise Unsupported(f"(zeta_(2^{s}) + zeta_(2^{s})^(-1))^2 is irrational; s = {s} needs F bigger than Q")


def error_term_p2_dihedral(
    f: NewformData,
    place: Place,
    desc: InertialDescriptor,
    err: ErrorTermData = EMPTY_ERROR_DATA,
    p_dagger: int | None = None,
    p_tprime: int | None = None,
) -> ErrorTermResult:
    """The p = 2 dihedral error term r_v.

    s != 2: (t1, zeta_{2^(r-1)})_v * (t2, (zeta_{2^s}+zeta_{2^s}^{-1})^2)_v;
    s = 2: (t2, a_{p_dagger}^2)_v.  A ramified K multiplies in (pi^2, d0)_v,
    with d0 defaulting to a_{p'''}^2 when F = Q and K is not in the square
    classes of 2 or -6.  Missing inputs are reported, never guessed.
    """
    if place.p != 2:
        raise WrongCase("this error term is the p = 2 dihedral one")
    if place.local_degree != 1 or f.F_degree != 1:
        raise Unsupported("p = 2 error terms are evaluated over F_v = Q_2 only")
    if desc.s is None:
        return ErrorTermResult(parity=None, missing=["s"], residual="error term needs the inertial exponent s")
    missing: list[str] = []
    trace: list = []
    factors: list[int] = []
    residual_parts: list[str] = []

    if desc.s == 2:
        if err.t2 is None:
            missing.append("t2")
            residual_parts.append("(t2, a_{p_dagger}^2)_2")
        elif p_dagger is None:
            missing.append("p_dagger")
            residual_parts.append("(t2, a_{p_dagger}^2)_2")
        else:
            a_sq = _into_F(f, f.coefficient(p_dagger) * f.coefficient(p_dagger))
            sym = symbol_two(err.t2, a_sq)
            factors.append(sym)
            trace.append(("symbol", f"(t2, a_dagger^2)_2 = ({err.t2}, {a_sq})_2 = {sym}", f"p_dagger = {p_dagger}"))
    else:
        if desc.r is None:
            missing.append("r")
            residual_parts.append("(t1, zeta_{2^(r-1)})_2")
        else:
            zeta = _zeta_power_of_two(desc.r)
            if zeta == 1:
                factors.append(1)
                trace.append(("symbol", "(t1, 1)_2 = 1", f"r = {desc.r} <= 1 kills the first factor"))
            elif err.t1 is None:
                missing.append("t1")
                residual_parts.append(f"(t1, {zeta})_2")
            else:
                sym = symbol_two(err.t1, zeta)
                factors.append(sym)
                trace.append(("symbol", f"(t1, zeta_(2^(r-1)))_2 = ({err.t1}, {zeta})_2 = {sym}", f"r = {desc.r}"))
        tsq = _trace_of_zeta_squared(desc.s)
        if tsq != 0 and is_square_in_qp(tsq, 2):
            factors.append(1)
            trace.append(("symbol", f"(t2, {tsq})_2 = 1", f"s = {desc.s} makes the second argument a square"))
        elif err.t2 is None:
            missing.append("t2")
            residual_parts.append(f"(t2, {tsq})_2")
        else:
            sym = symbol_two(err.t2, tsq)
            factors.append(sym)
            trace.append(("symbol", f"(t2, (zeta+zeta^-1)^2)_2 = ({err.t2}, {tsq})_2 = {sym}", f"s = {desc.s}"))

    if desc.kind is DescriptorKind.DIHEDRAL_RAMIFIED:
        pi_sq = err.pi_squared
        if pi_sq is None:
            if two_adic_square_class(desc.K_disc) in (2, 6, 10, 14):
                pi_sq = Fraction(desc.K_disc)
                trace.append(("uniformizer", f"pi = sqrt({desc.K_disc}), pi^2 = {pi_sq}", "canonical choice"))
            else:
                missing.append("pi_squared")
                residual_parts.append("(pi^2, d0)_2")
        d0 = err.d0
        if d0 is None and pi_sq is not None:
            if two_adic_square_class(desc.K_disc) not in (two_adic_square_class(2), two_adic_square_class(-6)):
                if p_tprime is None:
                    missing.append("p_tprime")
                    residual_parts.append("(pi^2, a_{p'''}^2)_2")
                else:
                    d0 = _into_F(f, f.coefficient(p_tprime) * f.coefficient(p_tprime))
                    trace.append(("substitution", f"d0 = a_{p_tprime}^2 = {d0}", "F = Q and K_disc not in {2, -6} classes"))
            else:
                missing.append("d0")
                residual_parts.append("(pi^2, d0)_2")
        if pi_sq is not None and d0 is not None:
            sym = symbol_two(pi_sq, d0)
            factors.append(sym)
            trace.append(("symbol", f"(pi^2, d0)_2 = ({pi_sq}, {d0})_2 = {sym}", "ramified-K factor"))

    if missing:
        return ErrorTermResult(
            parity=None,
            missing=missing,
            residual=" * ".join(residual_parts) if residual_parts else None,
            trace=trace,
        )
    product = 1
    for s in factors:
        product *= s
    return ErrorTermResult(parity=0 if product == 1 else 1, trace=trace)


# -- exceptional (non-dihedral) verdict at p = 2 ---------------------------------


def exceptional_verdict(f: NewformData, place: Place, desc: InertialDescriptor, k: int) -> Verdict:
    """D(-1)^[F_v:Q_2] * (2, D_K')_v; for odd weight D(-1) = eps(-1)."""
    if desc.kind is not DescriptorKind.EXCEPTIONAL:
        raise WrongCase("descriptor is not exceptional")
    desc.validate(place.p)
    exponent = place.local_degree
    trace = [("degree", f"[F_v:Q_2] = {exponent}", "place data")]
    missing: list[str] = []

    if exponent % 2 == 0:
        d_factor = 1
        trace.append(("factor", "D(-1)^[F_v:Q_2] = 1", "even exponent"))
        theorem = "Thm3.7"
    elif k % 2 == 1:
        eps_sign = f.char.parity()
        d_factor = eps_sign
        trace.append(("factor", f"eps(-1) = {eps_sign}", "odd weight, nebentypus stands in for D"))
        theorem = "Cor3.8"
    elif desc.D_minus_one is not None:
        d_factor = desc.D_minus_one
        trace.append(("factor", f"D(-1) = {d_factor}", "supplied in descriptor"))
        theorem = "Thm3.7"
    else:
        missing.append("D(-1)")
        d_factor = None
        theorem = "Thm3.7"

    if place.local_degree == 1:
        sym = symbol_two(2, Fraction(desc.D_Kprime))
        trace.append(("symbol", f"(2, D_K')_2 = (2, {desc.D_Kprime})_2 = {sym}", "2-adic Hilbert symbol"))
    elif is_square_in_qp(Fraction(desc.D_Kprime), 2):
        sym = 1
        trace.append(("symbol", f"(2, {desc.D_Kprime})_v = 1", "D_K' is a 2-adic square"))
    else:
        missing.append("(2, D_K')_v over F_v")
        sym = None

    if missing:
        return Verdict(
            status=Status.UNDETERMINED,
            place=place,
            theorem=theorem,
            trace=trace,
            missing_inputs=missing,
            residual="D(-1)^[F_v:Q_2] * (2, D_K')_v",
        )
    sign = d_factor * sym
    status = Status.RAMIFIED if sign == -1 else Status.MATRIX_ALGEBRA
    parity = 1 if sign == -1 else 0
    return Verdict(
        status=status,
        place=place,
        theorem=theorem,
        parity_m=0,
        m_v=None,
        parity_error=parity,
        trace=trace,
    )


# -- main dispatch ----------------------------------------------------------------


def _slope_with_trace(f: NewformData, place: Place, local: PrimeLocalData, bound: int | None):
    p_prime = auxprimes.find_p_prime(f, local, bound)
    m_v = companion_slope(f, place, p_prime)
    a = f.coefficient(p_prime)
    trace_entry = (
        "slope",
        f"m_v = f_v * w(a_{p_prime}^2 eps({p_prime})^(-1)) = {m_v}",
        f"p' = {p_prime}, a_{p_prime} = {a}",
    )
    return p_prime, m_v, trace_entry


def decide(
    f: NewformData,
    p: int,
    place: Place,
    desc: InertialDescriptor,
    err: ErrorTermData = EMPTY_ERROR_DATA,
    bound: int | None = None,
) -> Verdict:
    """Full theorem dispatch for one place v above a supercuspidal prime p."""
    local = local_decompose(f, p)
    if not is_supercuspidal(local):
        raise WrongCase(f"p = {p} is not supercuspidal for {f.label} (N_p={local.N_p}, C_p={local.C_p})")
    desc.validate(p)
    if place.p != p:
        raise InvalidPlace(f"place lies above {place.p}, not {p}")

    trace: list = [
        ("infinity", "totally indefinite" if f.weight % 2 == 0 else "totally definite", "weight parity metadata"),
        ("local", f"N_{p} = {local.N_p}, N' = {local.N_prime}, C_{p} = {local.C_p}", "level/nebentypus split"),
        ("uniformizer", "decompositions are taken against pi_v = p" if place.e_v == 1 else "ramified place uniformizer from F_disc", "declared convention"),
    ]
    aux: dict[str, int] = {}

    if p == 2:
        if desc.kind is DescriptorKind.EXCEPTIONAL:
            v = exceptional_verdict(f, place, desc, f.weight)
            v.trace = trace + v.trace
            return v
        ensure_conductor_consistency(desc, local.N_p)
        p_prime, m_v, slope_trace = _slope_with_trace(f, place, local, bound)
        aux["p_prime"] = p_prime
        trace.append(slope_trace)
        if local.N_p == 2:
            status = Status.RAMIFIED if m_v % 2 else Status.MATRIX_ALGEBRA
            trace.append(("theorem", "N_2 = 2: verdict from the slope parity alone", "Cor3.6"))
            return Verdict(
                status=status,
                place=place,
                theorem="Cor3.6",
                parity_m=m_v % 2,
                m_v=m_v,
                parity_error=0,
                aux_primes=aux,
                trace=trace,
            )
        # General dihedral p = 2: need the error term.
        needs_dagger = desc.s == 2
        p_dagger = None
        p_tprime = None
        if needs_dagger:
            p_dagger = auxprimes.find_p_dagger(f, bound)
            aux["p_dagger"] = p_dagger
        if desc.kind is DescriptorKind.DIHEDRAL_RAMIFIED and err.d0 is None:
            if two_adic_square_class(desc.K_disc) not in (two_adic_square_class(2), two_adic_square_class(-6)):
                p_tprime = auxprimes.find_p_tprime(f, local, bound)
                aux["p_tprime"] = p_tprime
        res = error_term_p2_dihedral(f, place, desc, err, p_dagger=p_dagger, p_tprime=p_tprime)
        trace.extend(res.trace)
        if res.parity is None:
            return Verdict(
                status=Status.UNDETERMINED,
                place=place,
                theorem="Thm3.5",
                parity_m=m_v % 2,
                m_v=m_v,
                aux_primes=aux,
                trace=trace,
                missing_inputs=res.missing,
                residual=res.residual,
            )
        status = Status.RAMIFIED if (m_v + res.parity) % 2 else Status.MATRIX_ALGEBRA
        return Verdict(
            status=status,
            place=place,
            theorem="Thm3.5",
            parity_m=m_v % 2,
            m_v=m_v,
            parity_error=res.parity,
            aux_primes=aux,
            trace=trace,
        )

    # Odd p, always dihedral.
    relation = k_fv_relation(desc.K_disc, p, place, f.F_degree, f.F_disc)
    trace.append(("relation", f"K vs F_v: {relation}", f"K = Q_{p}(sqrt {desc.K_disc})"))

    if desc.kind is DescriptorKind.DIHEDRAL_UNRAMIFIED:
        if desc.level_zero and local.N_p != 2:
            raise InvalidPlace(f"level-zero unramified descriptor needs N_p = 2, level has N_p = {local.N_p}")
        good: bool | None
        if not desc.level_zero:
            good = True  # positive level needs no hypothesis
            good_src = "positive level"
        else:
            good = is_good_shortcut(p, local.C_p)
            good_src = f"Lemma shortcut (p mod 4, C_p) = ({p % 4}, {local.C_p})"
            if good is None and desc.l is not None:
                good = is_good(p, desc.l)
                good_src = f"l = {desc.l} against odd multiples of (p+1)/2"
        if good is not None:
            trace.append(("good", str(good), good_src))

        if relation == "subset" and good is True:
            trace.append(("theorem", "K inside F_v forces an even slope", "Cor6.9"))
            return Verdict(
                status=Status.MATRIX_ALGEBRA,
                place=place,
                theorem="Cor6.9",
                parity_m=0,
                parity_error=0,
                trace=trace,
            )
        if good is None:
            return Verdict(
                status=Status.UNDETERMINED,
                place=place,
                theorem="Thm3.2",
                trace=trace,
                missing_inputs=["l"],
                residual="good/bad undecidable without the tame exponent l",
            )
        if good:
            p_prime, m_v, slope_trace = _slope_with_trace(f, place, local, bound)
            aux["p_prime"] = p_prime
            trace.append(slope_trace)
            status = Status.RAMIFIED if m_v % 2 else Status.MATRIX_ALGEBRA
            return Verdict(
                status=status,
                place=place,
                theorem="Thm3.2",
                parity_m=m_v % 2,
                m_v=m_v,
                parity_error=0,
                aux_primes=aux,
                trace=trace,
            )
        # Bad level-zero prime: error term (t, c)_v.
        p_prime, m_v, slope_trace = _slope_with_trace(f, place, local, bound)
        aux["p_prime"] = p_prime
        trace.append(slope_trace)
        res = error_term_odd_bad(f, place, err)
        trace.extend(res.trace)
        if res.parity is None:
            return Verdict(
                status=Status.UNDETERMINED,
                place=place,
                theorem="Thm3.4",
                parity_m=m_v % 2,
                m_v=m_v,
                aux_primes=aux,
                trace=trace,
                missing_inputs=res.missing,
                residual=res.residual,
            )
        status = Status.RAMIFIED if (m_v + res.parity) % 2 else Status.MATRIX_ALGEBRA
        return Verdict(
            status=status,
            place=place,
            theorem="Thm3.4",
            parity_m=m_v % 2,
            m_v=m_v,
            parity_error=res.parity,
            aux_primes=aux,
            trace=trace,
        )

    # Ramified K.
    if relation == "subset":
        if p % 4 == 3:
            trace.append(("theorem", "K inside F_v with p = 3 mod 4 forces an even slope", "Cor6.9"))
            return Verdict(
                status=Status.MATRIX_ALGEBRA,
                place=place,
                theorem="Cor6.9",
                parity_m=0,
                parity_error=0,
                trace=trace,
            )
        relation = "contained"  # p = 1 mod 4 with K inside F_v: slope theorem applies
    if relation in ("contained", "unramified"):
        p_prime, m_v, slope_trace = _slope_with_trace(f, place, local, bound)
        aux["p_prime"] = p_prime
        trace.append(slope_trace)
        status = Status.RAMIFIED if m_v % 2 else Status.MATRIX_ALGEBRA
        return Verdict(
            status=status,
            place=place,
            theorem="Thm3.2",
            parity_m=m_v % 2,
            m_v=m_v,
            parity_error=0,
            aux_primes=aux,
            trace=trace,
        )

    # KF_v|F_v ramified quadratic: p = 3 mod 4 and e_v odd.
    if p % 4 != 3 or place.e_v % 2 == 0:
        raise InvalidPlace(
            f"KF_v|F_v ramified quadratic requires p = 3 mod 4 and e_v odd, got p = {p}, e_v = {place.e_v}"
        )
    p_prime, m_v, slope_trace = _slope_with_trace(f, place, local, bound)
    aux["p_prime"] = p_prime
    trace.append(slope_trace)
    if place.f_v % 2 == 0:
        res = error_term_odd_ramified(f, place, desc, None, f.weight, err, m_parity=m_v % 2)
    else:
        p_dprime = auxprimes.find_p_dprime(f, local, bound)
        aux["p_dprime"] = p_dprime
        res = error_term_odd_ramified(f, place, desc, p_dprime, f.weight, err, m_parity=m_v % 2)
    trace.extend(res.trace)
    status = Status.RAMIFIED if (m_v + res.parity) % 2 else Status.MATRIX_ALGEBRA
    return Verdict(
        status=status,
        place=place,
        theorem="Thm3.4",
        parity_m=m_v % 2,
        m_v=m_v,
        parity_error=res.parity,
        aux_primes=aux,
        trace=trace,
    )
