from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from supercusp.dirichlet import DirichletCharacter
from supercusp.exact import QuadElem
from supercusp.newform import NewformData, load_fixture

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_LABELS = ("20.3.f.a", "36.5.c.a", "24.3.e.a")


def fixture_path(label: str) -> Path:
    return FIXTURE_DIR / f"{label}.json"


def descriptor_path(label: str) -> Path:
    return FIXTURE_DIR / f"{label}.desc.json"


@pytest.fixture(scope="session")
def form20() -> NewformData:
    return load_fixture(fixture_path("20.3.f.a"))


@pytest.fixture(scope="session")
def form36() -> NewformData:
    return load_fixture(fixture_path("36.5.c.a"))


@pytest.fixture(scope="session")
def form24() -> NewformData:
    return load_fixture(fixture_path("24.3.e.a"))


def synthetic_form(
    level: int,
    weight: int,
    coeffs: dict[int, object],
    char: DirichletCharacter | None = None,
    hecke_disc: int | None = None,
    F_disc: int | None = None,
    inner_twists=(),
    label: str = "synthetic",
) -> NewformData:
    """Hand-built NewformData for engine tests; coefficients are ints,
    Fractions, or QuadElems of the stated Hecke field."""
    degree = 1 if hecke_disc is None else 2
    parsed = {}
    for n, a in coeffs.items():
        if isinstance(a, QuadElem):
            parsed[n] = a
        elif degree == 2:
            parsed[n] = QuadElem.of(hecke_disc, a)
        else:
            parsed[n] = Fraction(a)
    if 1 not in parsed:
        parsed[1] = Fraction(1) if degree == 1 else QuadElem.of(hecke_disc, 1)
    return NewformData(
        label=label,
        level=level,
        weight=weight,
        char=char or DirichletCharacter.trivial(level),
        hecke_degree=degree,
        hecke_disc=hecke_disc,
        coefficients=parsed,
        coeff_bound=max(parsed),
        inner_twists=list(inner_twists),
        F_degree=1 if F_disc is None else 2,
        F_disc=F_disc,
        is_cm=False,
        is_p_minimal={},
    )
