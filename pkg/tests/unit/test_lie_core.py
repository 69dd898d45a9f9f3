"""Lie algebra construction, carrier tables, crisp subalgebras/ideals and homs."""

import json

import pytest

from src.lie_core import (
    CrispSubset,
    LieAlgebra,
    LieHom,
    bracket,
    crisp_ideals,
    crisp_subalgebras,
    enumerate_carrier,
    enumerate_subspaces,
    is_crisp_ideal,
    is_crisp_subalgebra,
    make_catalog_algebra,
    rank_mod_p,
    span,
    validate_algebra,
)
from src.models import AlgebraError, BudgetExceededError, CarrierMismatchError, Condition, HomError, Verdict

CROSS = [
    [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
    [[0, 0, -1], [0, 0, 0], [1, 0, 0]],
    [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
]


def test_cross_product_constants_are_a_lie_algebra():
    assert validate_algebra(CROSS, 5, 3).ok


def test_alternating_checked_first():
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][0][1] = 1  # [e1, e1] = e2
    result = validate_algebra(c, 5, 3)
    assert result.verdict == Verdict.FAIL
    assert result.witness.condition == Condition.ALTERNATING
    assert result.witness.detail["basis_indices"] == [1]


def test_antisymmetry_violation():
    c = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = 1  # [e1, e2] = e1 but [e2, e1] = 0
    result = validate_algebra(c, 3, 2)
    assert result.witness.condition == Condition.ANTISYMMETRY
    assert result.witness.detail["basis_indices"] == [1, 2]


def test_jacobi_violation_on_cyclic_table():
    # [e1,e2]=e1, [e2,e3]=e2, [e3,e1]=e3
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for (i, j, k) in ((0, 1, 0), (1, 2, 1), (2, 0, 2)):
        c[i][j][k] = 1
        c[j][i][k] = -1
    result = validate_algebra(c, 5, 3)
    assert result.witness.condition == Condition.JACOBI
    assert result.witness.detail["basis_indices"] == [1, 2, 3]
    assert result.witness.detail["cyclic_sum"] == [1, 1, 1]


@pytest.mark.parametrize("p", [0, 1, 4, 9, 37])
def test_bad_field_modulus(p):
    with pytest.raises(AlgebraError):
        make_catalog_algebra("abelian-2", p)


def test_dimension_out_of_range():
    with pytest.raises(AlgebraError):
        make_catalog_algebra("abelian-5", 3)


def test_create_names_the_violated_axiom():
    with pytest.raises(AlgebraError, match="alternating"):
        LieAlgebra.create("bad", 3, 1, [[[1]]])


def test_catalog_algebras(cross3, heis):
    assert cross3.dim == 3 and cross3.size == 125
    assert heis.size == 27
    assert bracket(heis, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert bracket(heis, (0, 1, 0), (1, 0, 0)) == (0, 0, 2)
    assert make_catalog_algebra("sl2", 5).size == 125
    with pytest.raises(AlgebraError):
        make_catalog_algebra("octonions", 5)
    with pytest.raises(AlgebraError):
        make_catalog_algebra("cross3", 2)


def test_cross_product_bracket(cross3):
    assert bracket(cross3, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    # [e1, e1 + e2 + e3] = e3 - e2
    assert bracket(cross3, (1, 0, 0), (1, 1, 1)) == (0, 4, 1)


def test_carrier_is_lexicographic(line):
    assert enumerate_carrier(line) == [(0,), (1,), (2,)]
    L = make_catalog_algebra("abelian-2", 3)
    assert L.carrier[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    for i in range(L.size):
        assert L.index_of(L.element(i)) == i


def test_coerce_rejects_wrong_length(cross3):
    with pytest.raises(CarrierMismatchError):
        cross3.index_of((1, 0))
    assert cross3.coerce((6, -1, 5)) == (1, 4, 0)


def test_budget_is_enforced():
    L = make_catalog_algebra("abelian-4", 31)
    with pytest.raises(BudgetExceededError):
        enumerate_carrier(L)
    with pytest.raises(BudgetExceededError):
        L.tables


def test_tables_are_shared_between_equal_algebras():
    a = make_catalog_algebra("heisenberg3", 3)
    b = LieAlgebra("copy", a.field, a.dim, a.constants)
    assert a.tables is b.tables


def test_crisp_subalgebra_examples(cross3):
    e1 = span(cross3, [(1, 0, 0)])
    assert len(e1) == 5
    assert is_crisp_subalgebra(cross3, e1).ok
    assert is_crisp_subalgebra(cross3, CrispSubset.zero(cross3)).ok

    result = is_crisp_subalgebra(cross3, CrispSubset.of(cross3, [(0, 0, 0), (1, 0, 0), (0, 1, 0)]))
    assert result.witness.condition == Condition.SUM
    assert result.witness.elements == ((0, 1, 0), (0, 1, 0))
    assert result.witness.detail["result"] == [0, 2, 0]


def test_crisp_witnesses_are_plain_json(cross3):
    partial = CrispSubset.of(cross3, [(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    for result in (is_crisp_subalgebra(cross3, partial), is_crisp_ideal(cross3, span(cross3, [(1, 0, 0)]))):
        data = json.loads(json.dumps(result.to_dict()))
        assert data["verdict"] == "FAIL"
        assert all(type(v) is int for v in result.witness.detail["result"])


def test_e1_line_is_not_an_ideal_of_cross3(cross3):
    result = is_crisp_ideal(cross3, span(cross3, [(1, 0, 0)]))
    assert result.verdict == Verdict.FAIL
    assert result.witness.condition == Condition.BRACKET


def test_every_subspace_of_an_abelian_algebra_is_an_ideal():
    L = make_catalog_algebra("abelian-2", 3)
    assert is_crisp_ideal(L, span(L, [(1, 0)])).ok
    # {0}, four lines, the plane
    assert len(enumerate_subspaces(L)) == 6
    assert len(crisp_ideals(L)) == 6


def test_heisenberg_ideals_contain_the_center(heis):
    center = span(heis, [(0, 0, 1)])
    ideals = crisp_ideals(heis)
    assert center in ideals
    assert all(S == CrispSubset.zero(heis) or center <= S for S in ideals)
    assert len(crisp_subalgebras(heis)) > len(ideals)


def test_subset_from_another_algebra(cross3, heis):
    with pytest.raises(CarrierMismatchError):
        is_crisp_subalgebra(cross3, CrispSubset.zero(heis))


def test_rank_mod_p():
    assert rank_mod_p([[1, 2], [2, 4]], 5) == 1
    assert rank_mod_p([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3) == 3
    assert rank_mod_p([[0, 0]], 7) == 0
    assert rank_mod_p([[1, 1], [1, 2]], 3) == 2


def test_hom_shape_and_field_checks(heis):
    plane = make_catalog_algebra("abelian-2", 3)
    phi = LieHom("proj", heis, plane, [[1, 0, 0], [0, 1, 0]])
    assert phi.apply((2, 1, 2)) == (2, 1)
    assert phi.is_surjective and phi.rank == 2

    flat = LieHom("flat", heis, plane, [1, 0, 0, 0, 1, 0])
    assert flat.matrix == phi.matrix

    with pytest.raises(HomError):
        LieHom("wrong", heis, plane, [[1, 0], [0, 1]])
    with pytest.raises(HomError):
        LieHom("fields", heis, make_catalog_algebra("abelian-2", 5), [[1, 0, 0], [0, 1, 0]])


def test_hom_images_follow_apply(heis):
    center = LieHom("center", heis, heis, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    assert not center.is_surjective
    for i, x in enumerate(heis.carrier):
        assert heis.element(int(center.images[i])) == center.apply(x)
