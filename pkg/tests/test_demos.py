"""Smoke tests: every demo script runs to completion.

The demos carry their own assertions (golden words, equivalence checks,
byte-identical reports), so "runs without raising" is a real check, not
just an import test.
"""

import contextlib
import io
import runpy
from pathlib import Path

import pytest

DEMO_DIR = Path(__file__).resolve().parent.parent / "demos"
DEMOS = sorted(p.name for p in DEMO_DIR.glob("*.py"))


def test_demo_directory_is_populated():
    assert len(DEMOS) >= 5


@pytest.mark.parametrize("name", DEMOS)
def test_demo_runs_clean(name):
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        runpy.run_path(str(DEMO_DIR / name), run_name="__main__")
    assert buffer.getvalue().strip(), f"{name} produced no output"
