"""Membership values, the componentwise order and homogeneity."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.cfuzzy import (
    TOP,
    ZERO,
    ComplexFuzzySet,
    Membership,
    RealFuzzySet,
    are_mutually_homogeneous,
    cmp_membership,
    compare_sets,
    decompose,
    intersect,
    intersect_family,
    is_homogeneous,
    is_mutually_homogeneous,
    join,
    meet,
    meet_all,
    join_all,
    recompose,
    to_fraction,
    to_pi_fuzzy,
)
from src.lie_core import make_catalog_algebra
from src.models import CarrierMismatchError, Comparison, Condition, MembershipError, Verdict
from tests.conftest import LINE_OF_A, TOP_OF_A, e1_line, m

amplitudes = st.fractions(min_value=0, max_value=1, max_denominator=12)
phases = st.fractions(min_value=0, max_value=2, max_denominator=12)
memberships = st.builds(Membership, amplitudes, phases)


def test_to_fraction_is_exact():
    assert to_fraction(0.6) == Fraction(3, 5)
    assert to_fraction("3/5") == Fraction(3, 5)
    assert to_fraction(2) == Fraction(2)
    with pytest.raises(MembershipError):
        to_fraction("three fifths")
    with pytest.raises(MembershipError):
        to_fraction("1/0")


@pytest.mark.parametrize("r, w", [("11/10", "0"), ("-1/10", "0"), ("1/2", "5/2"), ("1/2", "-1")])
def test_membership_range(r, w):
    with pytest.raises(MembershipError):
        m(r, w)


def test_membership_serialization():
    assert LINE_OF_A.to_dict() == {"r": "3/5", "w_over_pi": "1/2"}
    assert Membership.from_dict({"r": "3/5", "w_over_pi": 0.5}) == LINE_OF_A


def test_comparison():
    assert cmp_membership(LINE_OF_A, TOP_OF_A) == Comparison.LT
    assert cmp_membership(TOP_OF_A, LINE_OF_A) == Comparison.GT
    assert cmp_membership(LINE_OF_A, m("3/5", "1/2")) == Comparison.EQ
    assert cmp_membership(m("3/5", "1"), m("7/10", "1/2")) == Comparison.INCOMPARABLE


def test_meet_and_join_are_componentwise():
    a, b = m("3/5", "1"), m("7/10", "1/2")
    assert meet(a, b) == m("3/5", "1/2")
    assert join(a, b) == m("7/10", "1")
    assert meet_all([]) == TOP
    assert join_all([]) == ZERO


@given(memberships, memberships)
def test_lattice_commutative_and_absorbing(a, b):
    assert meet(a, b) == meet(b, a)
    assert join(a, b) == join(b, a)
    assert meet(a, join(a, b)) == a
    assert join(a, meet(a, b)) == a


@given(memberships, memberships, memberships)
def test_lattice_associative(a, b, c):
    assert meet(meet(a, b), c) == meet(a, meet(b, c))
    assert join(join(a, b), c) == join(a, join(b, c))


@given(memberships, memberships)
def test_meet_is_the_greatest_lower_bound(a, b):
    low = meet(a, b)
    assert low <= a and low <= b
    assert a <= join(a, b)
    assert (a <= b) == (meet(a, b) == a)


@given(memberships, memberships)
def test_order_is_antisymmetric(a, b):
    if a <= b and b <= a:
        assert a == b
    assert not (a < b and b < a)


def test_sparse_construction(cross3, worked_set):
    assert worked_set[(0, 0, 0)] == TOP_OF_A
    assert worked_set[(3, 0, 0)] == LINE_OF_A
    assert worked_set[(0, 1, 0)] == ZERO
    assert worked_set.distinct_values() == [TOP_OF_A, ZERO, LINE_OF_A]


def test_sets_must_be_total(cross3):
    with pytest.raises(MembershipError):
        ComplexFuzzySet(cross3, (ZERO,) * 3)


def test_worked_set_is_homogeneous(worked_set):
    result = is_homogeneous(worked_set)
    assert result.ok
    assert result.details == {"chain_length": 3, "pairwise_comparable": True}


def test_homogeneity_witness(line):
    A = ComplexFuzzySet(line, (m("1/2", "0"), ZERO, m("1/4", "1")), "A")
    result = is_homogeneous(A)
    assert result.verdict == Verdict.NOT_HOMOGENEOUS
    assert result.witness.condition == Condition.HOMOGENEITY
    # r(0) <= r(1) is false while w(0) <= w(1) holds
    assert result.witness.elements == ((0,), (1,))


def test_mutual_homogeneity_is_directional(one_way_pair):
    A, B = one_way_pair
    assert is_mutually_homogeneous(A, B).ok
    backwards = is_mutually_homogeneous(B, A)
    assert backwards.verdict == Verdict.NOT_HOMOGENEOUS
    assert backwards.witness.condition == Condition.MUTUAL_HOMOGENEITY

    both = are_mutually_homogeneous([A, B])
    assert both.verdict == Verdict.NOT_HOMOGENEOUS
    assert both.details["pair"] == [1, 0]


def test_mutual_homogeneity_needs_one_algebra(worked_set, one_way_pair):
    with pytest.raises(CarrierMismatchError):
        is_mutually_homogeneous(worked_set, one_way_pair[0])


def test_intersection_with_a_constant(cross3, worked_set):
    C = ComplexFuzzySet.constant(cross3, m("7/10", "1"), "C")
    I = intersect(worked_set, C)
    assert I.name == "A&C"
    assert I[(0, 0, 0)] == m("7/10", "1")
    assert all(I[x] == LINE_OF_A for x in e1_line()[1:])
    assert I[(1, 1, 0)] == ZERO
    assert intersect_family([worked_set, C]) == I


def test_intersect_family_needs_members():
    with pytest.raises(ValueError):
        intersect_family([])


def test_decompose_and_pi_scaling(worked_set):
    F, G = decompose(worked_set)
    assert F[(0, 0, 0)] == Fraction(9, 10)
    assert G[(1, 0, 0)] == Fraction(1, 2)
    assert recompose(F, G, "A") == worked_set
    assert to_pi_fuzzy(F)[(0, 0, 0)] == Fraction(9, 5)


@given(st.lists(memberships, min_size=3, max_size=3))
def test_decomposition_is_a_bijection(values):
    A = ComplexFuzzySet(make_catalog_algebra("abelian-1", 3), tuple(values), "A")
    assert recompose(*decompose(A)) == A


def test_real_fuzzy_range(line):
    with pytest.raises(MembershipError):
        RealFuzzySet(line, (Fraction(3, 2), 0, 0))


def test_compare_sets_reports_first_difference(worked_set):
    other = ComplexFuzzySet(worked_set.algebra, worked_set.values[:2] + (TOP_OF_A,) + worked_set.values[3:], "A")
    result = compare_sets(worked_set, other)
    assert result.witness.condition == Condition.SET_EQUALITY
    assert result.witness.elements == ((0, 0, 2),)
    assert compare_sets(worked_set, worked_set).ok
