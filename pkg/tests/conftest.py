from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from apapr import FamilyParams, analyze, build_family  # noqa: E402

GRID_VALUES = [Fraction(v) for v in ("-2", "-1", "-1/2", "0", "1/2", "1", "2")]
GRID = [(a1, a2) for a1 in GRID_VALUES for a2 in GRID_VALUES]


def vec(dim, *pairs):
    """Vector with the given (index, value) entries."""
    out = np.array([Fraction(0)] * dim, dtype=object)
    for i, v in pairs:
        out[i] = Fraction(v)
    return out


def E(i, dim=3):
    return vec(dim, (i, 1))


def family(*a):
    return build_family(FamilyParams(len(a) // 2, tuple(Fraction(v) for v in a)))


_CACHE = {}


def family_analysis(*a):
    key = tuple(Fraction(v) for v in a)
    if key not in _CACHE:
        _CACHE[key] = analyze(family(*key))
    return _CACHE[key]


@pytest.fixture
def fam11():
    return family_analysis(1, 1)


@pytest.fixture
def fam12():
    return family_analysis(1, 2)

GRID_IDS = [f"a={a1},{a2}" for a1, a2 in GRID]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
