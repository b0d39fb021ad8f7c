"""Narrative walkthrough: from a fixture file to a ramification verdict.

Run from the repository root:

    python3 demos/walkthrough.py

Each section prints what it computes; nothing here is asserted, the test
suite owns correctness.
"""

from __future__ import annotations

import json
from pathlib import Path

from supercusp import (
    InertialDescriptor,
    decide,
    find_p_prime,
    companion_slope,
    hilbert_symbol,
    load_fixture,
    local_decompose,
    is_supercuspidal,
    places_above,
    product_formula_check,
)

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def classify_section(label: str):
    form = load_fixture(FIXTURES / f"{label}.json")
    print(f"\n--- {label}: level {form.level}, weight {form.weight}, "
          f"Hecke field disc {form.hecke_disc}")
    for p in (2, 3, 5):
        if form.level % p:
            continue
        local = local_decompose(form, p)
        try:
            tag = "supercuspidal" if is_supercuspidal(local) else "not supercuspidal"
        except Exception as exc:
            tag = f"unclassifiable ({exc})"
        print(f"  p={p}: N_p={local.N_p}, C_p={local.C_p}: {tag}")
    return form


def verdict_section(label: str):
    form = classify_section(label)
    desc = InertialDescriptor.from_dict(
        json.loads((FIXTURES / f"{label}.desc.json").read_text())
    )
    local = local_decompose(form, 2)
    [place] = places_above(form, 2)
    if desc.kind.value != "exceptional":
        q = find_p_prime(form, local)
        m_v = companion_slope(form, place, q)
        print(f"  auxiliary prime p' = {q} (class {q % form.level} mod {form.level}), "
              f"a_p' = {form.coefficient(q)}, slope m_v = {m_v}")
    verdict = decide(form, 2, place, desc)
    print(f"  verdict at v | 2: {verdict.status.value} via {verdict.theorem}")
    for step in verdict.trace:
        print(f"    {step[0]}: {step[1]}   [{step[2]}]")


def symbols_section():
    print("\n--- local symbols")
    for a, b, p in ((2, 5, 5), (5, 2, 2), (-1, -1, 2), (-1, -3, 3)):
        print(f"  ({a}, {b})_{p} = {hilbert_symbol(a, b, p):+d}")
    print(f"  product formula for (5, 2): {product_formula_check(5, 2)}")


if __name__ == "__main__":
    symbols_section()
    for label in ("20.3.f.a", "36.5.c.a", "24.3.e.a"):
        verdict_section(label)
