"""Named checks shared by the CLI, the HTTP API and scenario runs."""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from .cfla import (
    LevelSpec,
    check_decomposition_theorem,
    check_ideal_implies_subalgebra,
    check_intersection_theorems,
    check_level_theorem,
    check_negation_lemma,
    check_pair,
    check_pi_scaling,
    check_sum_commutative,
    check_sum_ideal_theorem,
    image_values,
    is_complex_fuzzy_ideal,
    is_complex_fuzzy_subalgebra,
    level_cut,
    strong_upper_level,
    sum_attainment,
    upper_level,
)
from .cfuzzy import ComplexFuzzySet, decompose, is_homogeneous, is_mutually_homogeneous, to_fraction
from .homs import check_hom_theorems, check_image_of_preimage, check_levelcut_commutation, validate_hom
from .lie_core import validate_algebra
from .models import (
    CheckResult,
    Condition,
    HypothesisError,
    Mode,
    NotHomogeneousError,
    ScenarioError,
    Strength,
    Verdict,
    Witness,
)
from .scenario import CheckEntry, Scenario

logger = logging.getLogger(__name__)

OpFn = Callable[[Scenario, CheckEntry], CheckResult]

ANY_NUMBER = -1


@dataclass(frozen=True)
class Op:
    name: str
    fn: OpFn
    sets: int
    hom: bool = False
    description: str = ""


OPS: Dict[str, Op] = {}


def register(name: str, sets: int = 1, hom: bool = False, description: str = ""):
    def decorator(fn: OpFn) -> OpFn:
        OPS[name] = Op(name, fn, sets, hom, description)
        return fn

    return decorator


def level_spec_from(entry: CheckEntry) -> Optional[LevelSpec]:
    if entry.alpha is None and entry.beta_over_pi is None:
        return None
    return LevelSpec(
        to_fraction(entry.alpha or "0"),
        to_fraction(entry.beta_over_pi or "0"),
        strict_r=entry.strict_r,
        strict_w=entry.strict_w,
    )


def _sets(s: Scenario, e: CheckEntry) -> List[ComplexFuzzySet]:
    return [s.fuzzy_set(name) for name in e.sets]


def _closure(s: Scenario, e: CheckEntry, mode: Mode) -> CheckResult:
    (A,) = _sets(s, e)
    if e.at is not None:
        if len(e.at) != 2:
            raise ScenarioError(f"'{e.op}' at a pair needs exactly two elements, got {len(e.at)}")
        return check_pair(A.algebra, A, mode, e.at[0], e.at[1])
    if mode == Mode.IDEAL:
        return is_complex_fuzzy_ideal(A.algebra, A)
    return is_complex_fuzzy_subalgebra(A.algebra, A)


@register("subalgebra", description="complex fuzzy subalgebra predicate (optionally at one pair)")
def _subalgebra(s: Scenario, e: CheckEntry) -> CheckResult:
    return _closure(s, e, Mode.SUBALGEBRA)


@register("ideal", description="complex fuzzy ideal predicate (optionally at one pair)")
def _ideal(s: Scenario, e: CheckEntry) -> CheckResult:
    return _closure(s, e, Mode.IDEAL)


@register("homogeneous", description="amplitude and phase orders agree")
def _homogeneous(s: Scenario, e: CheckEntry) -> CheckResult:
    return is_homogeneous(*_sets(s, e))


@register("mutually-homogeneous", sets=2, description="first set homogeneous with the second")
def _mutually_homogeneous(s: Scenario, e: CheckEntry) -> CheckResult:
    return is_mutually_homogeneous(*_sets(s, e))


@register("levels", description="level-theorem biconditional for both modes and strengths")
def _levels(s: Scenario, e: CheckEntry) -> CheckResult:
    (A,) = _sets(s, e)
    variants = {}
    for mode in Mode:
        for strength in Strength:
            result = check_level_theorem(A.algebra, A, mode, strength)
            if not result.ok:
                return result
            variants[f"{mode.value}/{strength.value}"] = result.details
    return CheckResult.passed(**variants)


@register("decomposition", description="decomposition into amplitude and phase parts")
def _decomposition(s: Scenario, e: CheckEntry) -> CheckResult:
    (A,) = _sets(s, e)
    return check_decomposition_theorem(A.algebra, A)


@register("negation", description="negation lemma on a complex fuzzy subalgebra")
def _negation(s: Scenario, e: CheckEntry) -> CheckResult:
    (A,) = _sets(s, e)
    return check_negation_lemma(A.algebra, A)


@register("pi-scaling", description="pi-scaling equivalence on the amplitude part")
def _pi_scaling(s: Scenario, e: CheckEntry) -> CheckResult:
    (A,) = _sets(s, e)
    F, _ = decompose(A)
    return check_pi_scaling(A.algebra, F)


@register("ideal-implies-subalgebra", description="every ideal passes the subalgebra conditions")
def _ideal_implies_subalgebra(s: Scenario, e: CheckEntry) -> CheckResult:
    (A,) = _sets(s, e)
    return check_ideal_implies_subalgebra(A.algebra, A)


@register("sum-ideal", sets=2, description="sum of mutually homogeneous ideals is an ideal")
def _sum_ideal(s: Scenario, e: CheckEntry) -> CheckResult:
    A, B = _sets(s, e)
    return check_sum_ideal_theorem(A.algebra, A, B, e.drop)


@register("sum-attainment", sets=2, description="fuzzy-sum supremum attained by one decomposition")
def _sum_attainment(s: Scenario, e: CheckEntry) -> CheckResult:
    A, B = _sets(s, e)
    return sum_attainment(A.algebra, A, B)


@register("sum-commutative", sets=2, description="A + B equals B + A pointwise")
def _sum_commutative(s: Scenario, e: CheckEntry) -> CheckResult:
    A, B = _sets(s, e)
    return check_sum_commutative(A.algebra, A, B)


@register("intersection-subalgebra", sets=ANY_NUMBER, description="intersection of subalgebras")
def _intersection_subalgebra(s: Scenario, e: CheckEntry) -> CheckResult:
    sets = _sets(s, e)
    return check_intersection_theorems(sets[0].algebra, sets, Mode.SUBALGEBRA, e.drop)


@register("intersection-ideal", sets=ANY_NUMBER, description="intersection of ideals")
def _intersection_ideal(s: Scenario, e: CheckEntry) -> CheckResult:
    sets = _sets(s, e)
    return check_intersection_theorems(sets[0].algebra, sets, Mode.IDEAL, e.drop)


@register("algebra", sets=0, description="Lie axioms of a named algebra")
def _algebra(s: Scenario, e: CheckEntry) -> CheckResult:
    if e.algebra is None:
        raise ScenarioError("'algebra' needs an algebra name")
    L = s.algebra(e.algebra)
    return validate_algebra(L.constants, L.p, L.dim)


@register("validate-hom", sets=0, hom=True, description="bracket preservation and surjectivity")
def _validate_hom(s: Scenario, e: CheckEntry) -> CheckResult:
    return validate_hom(s.hom(e.hom))


def _hom_theorem(which: str, sets: int):
    def run(s: Scenario, e: CheckEntry) -> CheckResult:
        phi, given = s.hom(e.hom), _sets(s, e)
        if which.startswith("preimage-"):
            return check_hom_theorems(phi, which, B=given[0], dropped=e.drop)
        return check_hom_theorems(phi, which, *given, dropped=e.drop)

    register(which, sets=sets, hom=True, description=f"homomorphism theorem {which}")(run)


for _which in ("preimage-subalgebra", "preimage-ideal", "image-subalgebra", "image-ideal"):
    _hom_theorem(_which, 1)
_hom_theorem("sum-commutation", 2)


@register("levelcut", hom=True, description="preimage of a cut equals the cut of the preimage")
def _levelcut(s: Scenario, e: CheckEntry) -> CheckResult:
    spec = level_spec_from(e)
    if spec is None:
        raise ScenarioError("'levelcut' needs alpha and/or beta_over_pi")
    (B,) = _sets(s, e)
    return check_levelcut_commutation(s.hom(e.hom), B, spec)


@register("image-preimage", hom=True, description="image of the preimage agrees with the set on phi(L)")
def _image_preimage(s: Scenario, e: CheckEntry) -> CheckResult:
    (B,) = _sets(s, e)
    return check_image_of_preimage(s.hom(e.hom), B)


def run_check(scenario: Scenario, entry: CheckEntry) -> CheckResult:
    """Resolve and run one check. An unmet theorem hypothesis is reported as the failing hypothesis."""
    op = OPS.get(entry.op)
    if op is None:
        raise ScenarioError(f"Unknown op '{entry.op}'; known ops: {', '.join(sorted(OPS))}")
    if op.sets == ANY_NUMBER:
        if not entry.sets:
            raise ScenarioError(f"'{op.name}' needs at least one set")
    elif len(entry.sets) != op.sets:
        raise ScenarioError(f"'{op.name}' needs {op.sets} set(s), got {len(entry.sets)}")
    if op.hom and entry.hom is None:
        raise ScenarioError(f"'{op.name}' needs a hom")

    try:
        return op.fn(scenario, entry)
    except HypothesisError as e:
        result = e.result
        witness = result.witness if result is not None and result.witness else Witness(Condition.CONCLUSION)
        verdict = result.verdict if result is not None and not result.ok else Verdict.FAIL
        return CheckResult(verdict, witness, {"hypothesis": e.hypothesis})
    except NotHomogeneousError as e:
        return e.result


@dataclass
class ScenarioRun:
    source: str
    results: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["matched"] for r in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {"scenario": self.source, "ok": self.ok, "results": self.results}


def run_scenario(scenario: Scenario) -> ScenarioRun:
    """Run every listed check; a check matches when its verdict equals "expect" (OK when absent)."""
    run = ScenarioRun(scenario.source)
    for entry in scenario.checks:
        result = run_check(scenario, entry)
        expected = entry.expect or Verdict.OK
        matched = result.verdict == expected
        if not matched:
            logger.warning(f"{scenario.source}: '{entry.op}' on {entry.sets} gave {result.verdict.value}, expected {expected.value}")
        run.results.append(
            {"op": entry.op, "sets": entry.sets, "hom": entry.hom, "expect": expected.value, "matched": matched, **result.to_dict()}
        )
    logger.info(f"Ran {len(run.results)} checks from {scenario.source}")
    return run


def describe_levels(A: ComplexFuzzySet, spec: Optional[LevelSpec] = None) -> Dict[str, Any]:
    """Im(mu) with the upper and strong upper level at each value, or a single (alpha, beta) cut."""
    if spec is not None:
        cut = level_cut(A, spec)
        return {"set": A.name, "cut": spec.to_dict(), "size": len(cut), "elements": [list(x) for x in cut]}
    levels = []
    for t in image_values(A):
        upper, strong = upper_level(A, t), strong_upper_level(A, t)
        levels.append(
            {
                "t": t.to_dict(),
                "upper": {"size": len(upper), "elements": [list(x) for x in upper]},
                "strong": {"size": len(strong), "elements": [list(x) for x in strong]},
            }
        )
    return {"set": A.name, "image": [t.to_dict() for t in image_values(A)], "levels": levels}
