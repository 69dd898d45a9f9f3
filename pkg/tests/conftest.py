"""Shared fixtures: the cross-product algebra over F_5 and its worked example sets."""

from fractions import Fraction
from pathlib import Path

import pytest

from src.cfuzzy import ZERO, ComplexFuzzySet, Membership
from src.lie_core import make_catalog_algebra

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "data" / "scenarios"

TOP_OF_A = Membership(Fraction(9, 10), Fraction(3, 2))
LINE_OF_A = Membership(Fraction(3, 5), Fraction(1, 2))


def m(r, w) -> Membership:
    """Membership from "num/den" strings or numbers; w is in units of pi."""
    return Membership(Fraction(r), Fraction(w))


def e1_line(p: int = 5):
    return [(k, 0, 0) for k in range(p)]


@pytest.fixture
def cross3():
    return make_catalog_algebra("cross3", 5)


@pytest.fixture
def heis():
    return make_catalog_algebra("heisenberg3", 3)


@pytest.fixture
def line():
    return make_catalog_algebra("abelian-1", 3)


@pytest.fixture
def worked_set(cross3):
    """0.9 e^{i 3pi/2} at 0, 0.6 e^{i pi/2} on the rest of the e1-line, 0 elsewhere."""
    entries = {x: LINE_OF_A for x in e1_line()}
    entries[(0, 0, 0)] = TOP_OF_A
    return ComplexFuzzySet.from_mapping(cross3, entries, ZERO, "A")


@pytest.fixture
def scalar_breaker(cross3):
    """Only e1 has a nonzero value, so mu(2 e1) < mu(e1)."""
    return ComplexFuzzySet.from_mapping(cross3, {(1, 0, 0): LINE_OF_A}, ZERO, "B")


@pytest.fixture
def one_way_pair(line):
    """A is homogeneous with B but not B with A; both are ideals of the 1-dim abelian algebra over F_3."""
    A = ComplexFuzzySet.from_function(line, lambda x: m("1/2", "3/2") if x == (0,) else m("3/10", "1/2"), "A")
    B = ComplexFuzzySet.from_function(line, lambda x: m("3/10", "1") if x == (0,) else ZERO, "B")
    return A, B


@pytest.fixture
def worked_scenario_path():
    return SCENARIO_DIR / "paper_example.json"


@pytest.fixture
def heisenberg_scenario_path():
    return SCENARIO_DIR / "heisenberg_projection.json"


@pytest.fixture
def bad_field_path():
    return SCENARIO_DIR / "bad_field.json"
