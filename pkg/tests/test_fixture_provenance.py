"""Regression guard for the committed fixtures: re-run the trace-formula
anchor battery and re-derive all three fixtures, byte-comparing against the
files in fixtures/.  Any drift in the generator or the data fails here.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tools"))

from conftest import FIXTURE_LABELS, fixture_path


def test_anchor_battery_passes():
    from traceform import run_anchor_battery

    run_anchor_battery(verbose=False)


def test_regenerated_fixtures_match_committed():
    import generate_fixtures as gen

    built = {
        fx["label"]: fx
        for fx in (gen.build_level20(200), gen.build_level36(200), gen.build_level24(200))
    }
    assert set(built) == set(FIXTURE_LABELS)
    for label, fx in built.items():
        committed = json.loads(fixture_path(label).read_text())
        assert fx == committed, f"{label}: regenerated fixture differs from the committed file"
