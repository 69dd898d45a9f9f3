"""Complex fuzzy subalgebras and ideals, level subsets, sums, intersections and chains."""

from fractions import Fraction

import pytest

from src.cfla import (
    HYP_MUTUAL_HOMOGENEITY,
    ChainSpec,
    LevelSpec,
    amplitude_level,
    check_decomposition_theorem,
    check_ideal_implies_subalgebra,
    check_intersection_theorems,
    check_level_theorem,
    check_negation_lemma,
    check_pair,
    check_pi_scaling,
    check_sum_commutative,
    check_sum_ideal_theorem,
    fuzzy_sum,
    generate_from_chain,
    image_values,
    is_complex_fuzzy_ideal,
    is_complex_fuzzy_subalgebra,
    is_real_fuzzy_ideal,
    level_cut,
    phase_level,
    strong_upper_level,
    sum_attainment,
    upper_level,
)
from src.cfuzzy import ZERO, ComplexFuzzySet, RealFuzzySet, is_homogeneous
from src.lie_core import CrispSubset, span
from src.models import (
    CarrierMismatchError,
    ChainError,
    Condition,
    HypothesisError,
    MembershipError,
    Mode,
    NotHomogeneousError,
    Strength,
    Verdict,
)
from tests.conftest import LINE_OF_A, TOP_OF_A, e1_line, m


def test_worked_set_is_a_subalgebra(cross3, worked_set):
    assert is_complex_fuzzy_subalgebra(cross3, worked_set).ok


def test_worked_set_is_not_an_ideal(cross3, worked_set):
    result = is_complex_fuzzy_ideal(cross3, worked_set)
    assert result.verdict == Verdict.FAIL
    assert result.witness.condition == Condition.BRACKET
    # First violating pair in carrier order: [e3, e1] = e2 falls outside the e1-line
    assert result.witness.elements == ((0, 0, 1), (1, 0, 0))
    assert result.witness.detail["result"] == [0, 1, 0]


def test_ideal_violation_at_the_worked_pair(cross3, worked_set):
    result = check_pair(cross3, worked_set, Mode.IDEAL, (1, 0, 0), (1, 1, 1))
    assert result.witness.condition == Condition.BRACKET
    assert result.witness.detail["result"] == [0, 4, 1]
    assert result.witness.detail["result_value"] == {"r": "0/1", "w_over_pi": "0/1"}
    assert check_pair(cross3, worked_set, Mode.SUBALGEBRA, (1, 0, 0), (2, 0, 0)).ok


def test_scalar_condition_witness(cross3, scalar_breaker):
    result = is_complex_fuzzy_subalgebra(cross3, scalar_breaker)
    assert result.witness.condition == Condition.SCALAR
    assert result.witness.scalar == 2
    assert result.witness.elements == ((1, 0, 0),)
    assert result.witness.detail["result"] == [2, 0, 0]


def test_non_homogeneous_set_gets_no_verdict(line):
    A = ComplexFuzzySet(line, (m("1", "1/2"), m("1/2", "1"), m("1/2", "1")), "A")
    assert is_complex_fuzzy_subalgebra(line, A).verdict == Verdict.NOT_HOMOGENEOUS
    assert is_complex_fuzzy_ideal(line, A).verdict == Verdict.NOT_HOMOGENEOUS


def test_set_on_another_algebra(cross3, line, one_way_pair):
    with pytest.raises(CarrierMismatchError):
        is_complex_fuzzy_subalgebra(cross3, one_way_pair[0])


def test_real_fuzzy_ideal(line):
    assert is_real_fuzzy_ideal(line, RealFuzzySet(line, (1, Fraction(1, 2), Fraction(1, 2)))).ok
    assert not is_real_fuzzy_ideal(line, RealFuzzySet(line, (0, 1, 0))).ok


def test_negation_lemma(cross3, worked_set, scalar_breaker):
    assert check_negation_lemma(cross3, worked_set).ok
    with pytest.raises(HypothesisError) as info:
        check_negation_lemma(cross3, scalar_breaker)
    assert info.value.hypothesis == "subalgebra"


def test_decomposition(cross3, worked_set, scalar_breaker):
    result = check_decomposition_theorem(cross3, worked_set)
    assert result.ok
    assert result.details == {"subalgebra": True, "ideal": False}
    assert check_decomposition_theorem(cross3, scalar_breaker).details["subalgebra"] is False


def test_pi_scaling(line, cross3, worked_set):
    assert check_pi_scaling(line, RealFuzzySet(line, (Fraction(9, 10), Fraction(1, 3), Fraction(1, 3)))).ok
    F = RealFuzzySet(cross3, tuple(v.r for v in worked_set.values))
    assert check_pi_scaling(cross3, F).details == {"subalgebra": True, "ideal": False}


def test_ideal_implies_subalgebra(cross3, worked_set):
    result = check_ideal_implies_subalgebra(cross3, worked_set)
    assert result.ok and result.details == {"ideal": False, "subalgebra": True}


def test_level_subsets(cross3, worked_set):
    line_level = upper_level(worked_set, LINE_OF_A)
    assert len(line_level) == 5
    assert set(line_level) == set(e1_line())
    assert strong_upper_level(worked_set, LINE_OF_A) == CrispSubset.zero(cross3)
    assert len(upper_level(worked_set, ZERO)) == 125


def test_level_cuts(worked_set):
    assert len(level_cut(worked_set, LevelSpec(Fraction(3, 5), Fraction(1, 2)))) == 5
    assert len(level_cut(worked_set, LevelSpec(Fraction(0), Fraction(0), strict_r=True, strict_w=True))) == 5
    assert len(level_cut(worked_set, LevelSpec(Fraction(3, 5), Fraction(1, 2), strict_r=True))) == 1
    assert len(amplitude_level(worked_set, "7/10")) == 1
    assert len(phase_level(worked_set, "1/2")) == 5


def test_cut_parameters_are_range_checked():
    with pytest.raises(MembershipError):
        LevelSpec(Fraction(3, 2), Fraction(0))
    with pytest.raises(MembershipError):
        LevelSpec(Fraction(0), Fraction(3))


def test_image_values_ascending(worked_set):
    assert image_values(worked_set) == [ZERO, LINE_OF_A, TOP_OF_A]


def test_image_values_on_incomparable_values(line):
    A = ComplexFuzzySet(line, (m("1", "1/2"), m("1/2", "1"), m("1/2", "1")), "A")
    with pytest.raises(NotHomogeneousError):
        image_values(A)


@pytest.mark.parametrize("mode", list(Mode))
@pytest.mark.parametrize("strength", list(Strength))
def test_level_theorem_on_examples(cross3, worked_set, scalar_breaker, mode, strength):
    assert check_level_theorem(cross3, worked_set, mode, strength).ok
    result = check_level_theorem(cross3, scalar_breaker, mode, strength)
    assert result.ok
    assert result.details == {"fuzzy": False, "levels": False}


def test_fuzzy_sum_of_two_lines(cross3):
    A = ComplexFuzzySet.from_mapping(cross3, {x: m("4/5", "1") for x in e1_line()}, ZERO, "A")
    B = ComplexFuzzySet.from_mapping(cross3, {(0, k, 0): m("1/2", "1/2") for k in range(5)}, ZERO, "B")
    S = fuzzy_sum(cross3, A, B)
    assert S.name == "A+B"
    assert S[(1, 1, 0)] == m("1/2", "1/2")
    # B(0) caps every decomposition through b = 0
    assert S[(1, 0, 0)] == m("1/2", "1/2")
    assert S[(0, 0, 1)] == ZERO
    assert sum_attainment(cross3, A, B).ok
    assert check_sum_commutative(cross3, A, B).ok


def test_sum_with_the_zero_indicator(cross3, worked_set):
    unit = ComplexFuzzySet.from_mapping(cross3, {(0, 0, 0): m("1", "2")}, ZERO, "U")
    assert fuzzy_sum(cross3, worked_set, unit).values == worked_set.values


def test_sum_attainment_can_fail_without_homogeneity(line):
    A = ComplexFuzzySet(line, (m("1", "0"), m("0", "1"), ZERO), "A")
    C = ComplexFuzzySet(line, (m("1", "0"), ZERO, m("0", "1")), "C")
    # At 0: 0 + 0 gives (1, 0) and 1 + 2 gives (0, pi); the supremum (1, pi) is reached by neither
    result = sum_attainment(line, A, C)
    assert result.verdict == Verdict.FAIL
    assert result.witness.condition == Condition.SUM_ATTAINMENT
    assert result.witness.elements == ((0,),)

    B = ComplexFuzzySet(line, (m("1", "1"), ZERO, ZERO), "B")
    assert sum_attainment(line, A, B).ok


def test_sum_ideal_theorem(line):
    A = ComplexFuzzySet(line, (m("1", "2"), m("1/2", "1"), m("1/2", "1")), "A")
    B = ComplexFuzzySet(line, (m("3/4", "3/2"), m("1/4", "1/2"), m("1/4", "1/2")), "B")
    result = check_sum_ideal_theorem(line, A, B)
    assert result.ok and result.details["theorem"] == "sum-ideal"


def test_one_direction_of_homogeneity_is_not_enough(line, one_way_pair):
    A, B = one_way_pair
    with pytest.raises(HypothesisError) as info:
        check_sum_ideal_theorem(line, A, B)
    assert info.value.hypothesis == HYP_MUTUAL_HOMOGENEITY

    assert is_homogeneous(fuzzy_sum(line, A, B)).verdict == Verdict.NOT_HOMOGENEOUS
    dropped = check_sum_ideal_theorem(line, A, B, [HYP_MUTUAL_HOMOGENEITY])
    assert dropped.verdict == Verdict.NOT_HOMOGENEOUS


def test_intersection_theorems(cross3, worked_set):
    C = ComplexFuzzySet.constant(cross3, m("7/10", "1"), "C")
    assert check_intersection_theorems(cross3, [worked_set, C], Mode.SUBALGEBRA).ok
    assert check_intersection_theorems(cross3, [C], Mode.IDEAL).ok
    with pytest.raises(HypothesisError):
        check_intersection_theorems(cross3, [worked_set, C], Mode.IDEAL)


def test_chain_generates_the_worked_set(cross3, worked_set):
    spec = ChainSpec(
        (CrispSubset.zero(cross3), span(cross3, [(1, 0, 0)]), CrispSubset.whole(cross3)),
        (TOP_OF_A, LINE_OF_A, ZERO),
        Mode.SUBALGEBRA,
    )
    assert generate_from_chain(cross3, spec, "A") == worked_set


def test_chain_without_the_whole_carrier(cross3, worked_set):
    spec = ChainSpec((CrispSubset.zero(cross3), span(cross3, [(1, 0, 0)])), (TOP_OF_A, LINE_OF_A))
    assert generate_from_chain(cross3, spec, "A") == worked_set


def test_chain_validation(cross3):
    zero, e1 = CrispSubset.zero(cross3), span(cross3, [(1, 0, 0)])
    whole = CrispSubset.whole(cross3)
    with pytest.raises(ChainError, match="strictly decreasing"):
        generate_from_chain(cross3, ChainSpec((zero, e1), (LINE_OF_A, TOP_OF_A)))
    with pytest.raises(ChainError, match="proper subset"):
        generate_from_chain(cross3, ChainSpec((e1, zero), (TOP_OF_A, LINE_OF_A)))
    with pytest.raises(ChainError, match="not a crisp ideal"):
        generate_from_chain(cross3, ChainSpec((zero, e1, whole), (TOP_OF_A, LINE_OF_A, ZERO), Mode.IDEAL))
    with pytest.raises(ChainError, match="neither 0"):
        generate_from_chain(cross3, ChainSpec((zero, e1), (TOP_OF_A, m("1/2", "0"))))
    with pytest.raises(ChainError, match="empty"):
        generate_from_chain(cross3, ChainSpec((), ()))
