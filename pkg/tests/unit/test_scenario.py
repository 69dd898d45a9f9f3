"""Scenario files: loading, validation errors and the JSON round trip."""

import json

import pytest

from src.models import ScenarioError, Verdict
from src.scenario import dump_fuzzy_set, dump_scenario, element_from_text, load_scenario, parse_scenario, save_scenario
from tests.conftest import LINE_OF_A, TOP_OF_A


def test_load_worked_example(worked_scenario_path, worked_set):
    scenario = load_scenario(worked_scenario_path)
    assert set(scenario.fuzzy_sets) == {"A", "B", "C", "E1", "E2"}
    assert scenario.algebra("cross3").p == 5
    assert scenario.fuzzy_set("A").values == worked_set.values
    assert scenario.checks[3].expect == Verdict.FAIL


def test_load_heisenberg_scenario(heisenberg_scenario_path):
    scenario = load_scenario(heisenberg_scenario_path)
    assert scenario.hom("proj").is_surjective
    assert not scenario.hom("center").is_surjective


def test_bad_field_is_rejected(bad_field_path):
    with pytest.raises(ScenarioError, match="algebra"):
        load_scenario(bad_field_path)


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioError, match="cannot read"):
        load_scenario(tmp_path / "nope.json")


def test_json_errors_carry_a_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "algebras": [\n    {"name": "L",}\n  ]\n}\n')
    with pytest.raises(ScenarioError) as info:
        load_scenario(path)
    assert str(info.value).startswith(f"{path}:3:")


def _doc(**extra):
    doc = {"algebras": [{"name": "L", "field": 3, "catalog": "abelian-1"}]}
    doc.update(extra)
    return doc


def test_duplicate_names():
    doc = _doc()
    doc["algebras"].append({"name": "L", "field": 5, "catalog": "abelian-1"})
    with pytest.raises(ScenarioError, match="duplicate algebra name 'L'"):
        parse_scenario(doc)


def test_unknown_names_in_checks():
    with pytest.raises(ScenarioError, match="unknown fuzzy set 'X'"):
        parse_scenario(_doc(checks=[{"op": "homogeneous", "sets": ["X"]}]))
    with pytest.raises(ScenarioError, match="unknown algebra 'M'"):
        parse_scenario(_doc(fuzzy_sets=[{"name": "A", "algebra": "M"}]))


def test_schema_errors_name_the_field():
    with pytest.raises(ScenarioError, match="algebras.0.field"):
        parse_scenario({"algebras": [{"name": "L", "catalog": "abelian-1"}]})
    with pytest.raises(ScenarioError, match="exactly one"):
        parse_scenario({"algebras": [{"name": "L", "field": 3}]})


def test_membership_out_of_range():
    doc = _doc(fuzzy_sets=[{"name": "A", "algebra": "L", "entries": [{"element": [0], "r": "3/2", "w_over_pi": 0}]}])
    with pytest.raises(ScenarioError, match="fuzzy set 'A'"):
        parse_scenario(doc)


def test_explicit_constants_are_validated():
    doc = {"algebras": [{"name": "bad", "field": 3, "dim": 1, "constants": [[[1]]]}]}
    with pytest.raises(ScenarioError, match="alternating"):
        parse_scenario(doc)


def test_numbers_are_accepted_as_memberships():
    doc = _doc(fuzzy_sets=[{"name": "A", "algebra": "L", "default": {"r": 0.5, "w_over_pi": 1}}])
    A = parse_scenario(doc).fuzzy_set("A")
    assert A[(2,)].r == A[(0,)].r == 0.5


def test_dump_uses_the_most_common_value_as_default(worked_set):
    dumped = dump_fuzzy_set(worked_set)
    assert dumped["default"] == {"r": "0/1", "w_over_pi": "0/1"}
    assert len(dumped["entries"]) == 5
    assert dumped["entries"][0] == {"element": [0, 0, 0], **TOP_OF_A.to_dict()}
    assert dumped["entries"][1] == {"element": [1, 0, 0], **LINE_OF_A.to_dict()}


def test_dump_and_parse_preserve_the_scenario(worked_scenario_path, tmp_path):
    scenario = load_scenario(worked_scenario_path)
    out = tmp_path / "copy.json"
    save_scenario(scenario, out)
    back = load_scenario(out)
    assert back.fuzzy_sets == scenario.fuzzy_sets
    assert back.algebras == scenario.algebras
    assert [c.model_dump() for c in back.checks] == [c.model_dump() for c in scenario.checks]
    assert json.loads(out.read_text()) == dump_scenario(back)


@pytest.mark.parametrize("text, expected", [("1,0,0", (1, 0, 0)), ("(1, 0, 2)", (1, 0, 2)), ("[4]", (4,))])
def test_element_from_text(text, expected):
    assert element_from_text(text) == expected


def test_element_from_text_rejects_words():
    with pytest.raises(ScenarioError):
        element_from_text("e1")
