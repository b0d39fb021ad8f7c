"""Newform data model: level/nebentypus decomposition at a prime,
supercuspidal classification, places of the twist-invariant field F, and
fixture file I/O.

A fixture is a JSON snapshot of LMFDB data (see README for the schema).  The
coefficient map may be sparse: entries the database did not supply are simply
absent, and every consumer reports the bound it exhausted instead of guessing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dirichlet import DirichletCharacter, RootOfUnity
from .errors import (
    CMNotSupported,
    InsufficientData,
    InvalidPlace,
    ParseError,
    Unsupported,
)
from .exact import PrimeIdealData, QuadElem, as_fraction, splitting_type, val_p

HeckeElem = Fraction | QuadElem


def hecke_zero(degree: int, disc: int | None) -> HeckeElem:
    return Fraction(0) if degree == 1 else QuadElem.of(disc, 0, 0)


def is_zero_elem(x: HeckeElem) -> bool:
    return x == 0 if isinstance(x, Fraction) else x.is_zero()


@dataclass(frozen=True)
class InnerTwist:
    """An extra twist (gamma, chi_gamma) with its ramified-at-p flag.

    auto is "conj" for the nontrivial automorphism of a quadratic Hecke field,
    "id" for the trivial one.  ramified records whether chi_gamma is ramified
    at the supercuspidal prime under study (derived from its conductor at
    ingestion).
    """

    auto: str
    char: DirichletCharacter
    ramified: bool


@dataclass(frozen=True)
class PrimeLocalData:
    """Local shape of the form at p: N = p^N_p * N', cond(eps_p) = p^C_p."""

    p: int
    N_p: int
    N_prime: int
    C_p: int
    a_p: HeckeElem | None


@dataclass(frozen=True)
class Place:
    """A place v of F above p.  index distinguishes the two places of a
    split prime; it is 0 otherwise."""

    p: int
    e_v: int
    f_v: int
    ideal: PrimeIdealData
    index: int = 0

    @property
    def local_degree(self) -> int:
        return self.e_v * self.f_v


class NewformData:
    """Immutable container for one newform fixture."""

    def __init__(
        self,
        label: str,
        level: int,
        weight: int,
        char: DirichletCharacter,
        hecke_degree: int,
        hecke_disc: int | None,
        coefficients: dict[int, HeckeElem],
        coeff_bound: int,
        inner_twists: list[InnerTwist],
        F_degree: int,
        F_disc: int | None,
        is_cm: bool,
        is_p_minimal: dict[int, bool],
    ):
        self.label = label
        self.level = level
        self.weight = weight
        self.char = char
        self.hecke_degree = hecke_degree
        self.hecke_disc = hecke_disc
        self.coefficients = dict(coefficients)
        self.coeff_bound = coeff_bound
        self.inner_twists = list(inner_twists)
        self.F_degree = F_degree
        self.F_disc = F_disc
        self.is_cm = is_cm
        self.is_p_minimal = dict(is_p_minimal)
        self._validate()

    def _validate(self):
        if self.level < 1:
            raise ParseError("level", "must be positive")
        if self.weight < 2:
            raise ParseError("weight", "must be >= 2")
        if self.char.modulus != self.level:
            raise ParseError("char.modulus", f"{self.char.modulus} != level {self.level}")
        if self.hecke_degree not in (1, 2):
            raise ParseError("hecke_field.degree", "only degrees 1 and 2 are supported")
        if self.F_degree not in (1, 2):
            raise ParseError("F.degree", "only degrees 1 and 2 are supported")
        if self.is_cm:
            raise CMNotSupported(f"{self.label} is CM; engine handles non-CM forms only")
        if not self.coefficients:
            raise ParseError("an", "empty coefficient list")
        a1 = self.coefficients.get(1)
        if a1 is None or not (a1 == 1 if isinstance(a1, Fraction) else a1 == QuadElem.of(self.hecke_disc, 1)):
            raise ParseError("an", "a_1 must be present and equal to 1")

    # -- coefficient access --------------------------------------------------

    def has_coefficient(self, n: int) -> bool:
        return n in self.coefficients

    def coefficient(self, n: int) -> HeckeElem:
        if n not in self.coefficients:
            raise InsufficientData(
                f"a_{n} not stored for {self.label} (bound {self.coeff_bound})"
            )
        return self.coefficients[n]

    def eps_value_in_hecke_field(self, n: int) -> HeckeElem:
        """Nebentypus value at n as an element of the Hecke field."""
        val = self.char.evaluate(n)
        if self.hecke_degree == 1:
            return Fraction(val.as_sign())
        return val.as_quad_elem(self.hecke_disc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NewformData):
            return NotImplemented
        return (
            self.label == other.label
            and self.level == other.level
            and self.weight == other.weight
            and self.char == other.char
            and self.hecke_degree == other.hecke_degree
            and self.hecke_disc == other.hecke_disc
            and self.coefficients == other.coefficients
            and self.coeff_bound == other.coeff_bound
            and [(t.auto, t.char, t.ramified) for t in self.inner_twists]
            == [(t.auto, t.char, t.ramified) for t in other.inner_twists]
            and self.F_degree == other.F_degree
            and self.F_disc == other.F_disc
            and self.is_p_minimal == other.is_p_minimal
        )

    def __repr__(self):
        return f"NewformData({self.label}, N={self.level}, k={self.weight})"


# -- classification ----------------------------------------------------------


def local_decompose(f: NewformData, p: int) -> PrimeLocalData:
    """Split the level and nebentypus at p: N = p^N_p N', cond(eps_p) = p^C_p."""
    n_p = 0
    n_prime = f.level
    while n_prime % p == 0:
        n_prime //= p
        n_p += 1
    eps_p, _ = f.char.p_decompose(p)
    c_p = val_p(eps_p.conductor(), p)
    c_p = 0 if c_p == 0 else int(c_p)
    a_p = f.coefficients.get(p)
    return PrimeLocalData(p=p, N_p=n_p, N_prime=n_prime, C_p=c_p, a_p=a_p)


def is_supercuspidal(local: PrimeLocalData) -> bool:
    """The supercuspidal criterion at p: C_p < N_p >= 2 and a_p = 0."""
    if local.N_p < 2 or local.C_p >= local.N_p:
        return False
    if local.a_p is None:
        raise InsufficientData(f"a_{local.p} missing, cannot classify")
    return is_zero_elem(local.a_p)


def places_above(f: NewformData, p: int) -> list[Place]:
    """The places of F above p.

    F = Q has the single place with e = f = 1.  For quadratic F the splitting
    behaviour is read off the field discriminant.
    """
    if f.F_degree == 1:
        return [Place(p, 1, 1, PrimeIdealData(p, 1, 1))]
    if f.F_degree != 2:
        raise Unsupported("degree > 2 fields need explicitly supplied places")
    kind = splitting_type(f.F_disc, p)
    if kind == "split":
        return [
            Place(p, 1, 1, PrimeIdealData(p, 1, 1), index=0),
            Place(p, 1, 1, PrimeIdealData(p, 1, 1), index=1),
        ]
    if kind == "inert":
        return [Place(p, 1, 2, PrimeIdealData(p, 1, 2))]
    return [Place(p, 2, 1, PrimeIdealData(p, 2, 1, uniformizer_norm_val=1))]


# -- fixture I/O --------------------------------------------------------------


def _parse_rat(s, path: str) -> Fraction:
    try:
        return as_fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(path, f"bad rational {s!r}") from exc


def _parse_char(obj, path: str) -> DirichletCharacter:
    if not isinstance(obj, dict) or "modulus" not in obj:
        raise ParseError(path, "expected {modulus, conrey | values_on_gens}")
    modulus = obj["modulus"]
    if not isinstance(modulus, int) or modulus < 1:
        raise ParseError(f"{path}.modulus", "must be a positive integer")
    if "values_on_gens" in obj:
        exps = [RootOfUnity(_parse_rat(v, f"{path}.values_on_gens")) for v in obj["values_on_gens"]]
        chi = DirichletCharacter.from_gen_images(modulus, exps)
        if isinstance(obj.get("conrey"), int):
            chi.conrey = obj["conrey"]
        return chi
    if "conrey" in obj:
        if not isinstance(obj["conrey"], int):
            raise ParseError(f"{path}.conrey", "must be an integer")
        return DirichletCharacter.from_conrey(modulus, obj["conrey"])
    raise ParseError(path, "needs conrey or values_on_gens")


def _char_to_json(chi: DirichletCharacter) -> dict:
    out = {
        "modulus": chi.modulus,
        "values_on_gens": [str(img.exponent) for _, img in chi.generator_images()],
    }
    if chi.conrey is not None:
        out["conrey"] = chi.conrey
    return out


def _parse_elem(coords, degree: int, disc: int | None, path: str) -> HeckeElem:
    if not isinstance(coords, list) or not 1 <= len(coords) <= 2:
        raise ParseError(path, "coordinates must be [rat] or [rat, rat]")
    a = _parse_rat(coords[0], path)
    b = _parse_rat(coords[1], path) if len(coords) == 2 else Fraction(0)
    if degree == 1:
        if b != 0:
            raise ParseError(path, "rational Hecke field cannot have a sqrt coordinate")
        return a
    return QuadElem(disc, a, b)


def _elem_to_json(x: HeckeElem) -> list[str]:
    if isinstance(x, Fraction):
        return [str(x)]
    return [str(x.a), str(x.b)]


def load_fixture(path: str | Path) -> NewformData:
    """Load and validate a fixture file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), f"not valid JSON: {exc}") from exc
    return fixture_from_dict(raw)


def fixture_from_dict(raw: dict) -> NewformData:
    for key in ("label", "level", "weight", "char", "hecke_field", "an", "coeff_bound", "F", "is_cm"):
        if key not in raw:
            raise ParseError(key, "missing required field")
    hf = raw["hecke_field"]
    if not isinstance(hf, dict) or "degree" not in hf:
        raise ParseError("hecke_field", "expected {degree, disc}")
    degree = hf["degree"]
    disc = hf.get("disc")
    if degree == 2 and not isinstance(disc, int):
        raise ParseError("hecke_field.disc", "degree-2 field needs an integer disc")
    coeffs: dict[int, HeckeElem] = {}
    for i, entry in enumerate(raw["an"]):
        if not isinstance(entry, dict) or "n" not in entry or "a" not in entry:
            raise ParseError(f"an[{i}]", "expected {n, a}")
        coeffs[entry["n"]] = _parse_elem(entry["a"], degree, disc, f"an[{i}].a")
    F = raw["F"]
    if not isinstance(F, dict) or "degree" not in F:
        raise ParseError("F", "expected {degree, disc}")
    twists = []
    for i, t in enumerate(raw.get("inner_twists", [])):
        if t.get("auto") not in ("id", "conj"):
            raise ParseError(f"inner_twists[{i}].auto", "must be 'id' or 'conj'")
        twists.append(
            InnerTwist(
                auto=t["auto"],
                char=_parse_char(t["char"], f"inner_twists[{i}].char"),
                ramified=bool(t["ramified"]),
            )
        )
    minimal = {int(k): bool(v) for k, v in raw.get("is_p_minimal", {}).items()}
    return NewformData(
        label=raw["label"],
        level=raw["level"],
        weight=raw["weight"],
        char=_parse_char(raw["char"], "char"),
        hecke_degree=degree,
        hecke_disc=disc if degree == 2 else None,
        coefficients=coeffs,
        coeff_bound=raw["coeff_bound"],
        inner_twists=twists,
        F_degree=F["degree"],
        F_disc=F.get("disc") if F["degree"] == 2 else None,
        is_cm=raw["is_cm"],
        is_p_minimal=minimal,
    )


def fixture_to_dict(f: NewformData) -> dict:
    return {
        "label": f.label,
        "level": f.level,
        "weight": f.weight,
        "char": _char_to_json(f.char),
        "hecke_field": {"degree": f.hecke_degree, "disc": f.hecke_disc if f.hecke_degree == 2 else 0},
        "an": [{"n": n, "a": _elem_to_json(f.coefficients[n])} for n in sorted(f.coefficients)],
        "coeff_bound": f.coeff_bound,
        "inner_twists": [
            {"auto": t.auto, "char": _char_to_json(t.char), "ramified": t.ramified}
            for t in f.inner_twists
        ],
        "F": {"degree": f.F_degree, "disc": f.F_disc if f.F_degree == 2 else 0},
        "is_cm": f.is_cm,
        "is_p_minimal": {str(p): v for p, v in sorted(f.is_p_minimal.items())},
    }


def save_fixture(f: NewformData, path: str | Path) -> None:
    Path(path).write_text(json.dumps(fixture_to_dict(f), indent=1) + "\n")
