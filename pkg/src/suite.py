"""
Theorem verification suite and hypothesis-necessity probe.

Every theorem has a trial function that draws a hypothesis-satisfying
instance from a per-trial seeded stream, evaluates the conclusion exactly
and returns the result together with a replayable scenario. Reports are
deterministic for a given configuration; wall times are opt-in.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cfla import (
    HYP_MUTUAL_HOMOGENEITY,
    LevelSpec,
    check_decomposition_theorem,
    check_ideal_implies_subalgebra,
    check_intersection_theorems,
    check_level_theorem,
    check_negation_lemma,
    check_pi_scaling,
    check_sum_commutative,
    check_sum_ideal_theorem,
    complex_predicate,
    sum_attainment,
)
from .cfuzzy import ComplexFuzzySet
from .config import settings
from .generators import (
    GenConfig,
    as_amplitude_set,
    chain_set,
    cut_grid,
    homogeneous_set,
    independent_family,
    mutually_homogeneous_family,
    pick,
    real_set,
    trial_rng,
)
from .homs import HYP_SURJECTIVITY, check_hom_theorems, check_image_of_preimage, check_levelcut_commutation
from .lie_core import LieHom
from .models import CflaError, CheckResult, Mode, Strength, UnknownTheoremError
from .scenario import CheckEntry, Scenario, dump_scenario

logger = logging.getLogger(__name__)

Trial = Tuple[CheckResult, Scenario]
TrialFn = Callable[[np.random.Generator, GenConfig], Trial]


class NoInstanceError(CflaError):
    """The configuration offers nothing this theorem can be tried on."""


@dataclass(frozen=True)
class Theorem:
    id: str
    description: str
    trial: TrialFn


THEOREMS: Dict[str, Theorem] = {}


def theorem(theorem_id: str, description: str):
    def decorator(fn: TrialFn) -> TrialFn:
        THEOREMS[theorem_id] = Theorem(theorem_id, description, fn)
        return fn

    return decorator


def _instance(sets: Sequence[ComplexFuzzySet], op: str, homs: Sequence[LieHom] = (), **check: Any) -> Scenario:
    entry = CheckEntry(op=op, sets=[A.name for A in sets], hom=homs[0].name if homs else None, **check)
    return Scenario.of(fuzzy_sets=sets, homs=homs, checks=[entry])


def _algebra(rng, config: GenConfig):
    return pick(rng, config.algebras())


def _hom(rng, config: GenConfig, surjective: Optional[bool] = None) -> LieHom:
    homs = [h for h in config.hom_list() if surjective is None or h.is_surjective == surjective]
    if not homs:
        kind = {True: "surjective ", False: "non-surjective ", None: ""}[surjective]
        raise NoInstanceError(f"no {kind}homs in the configured catalog")
    return pick(rng, homs)


@theorem("pi-scaling", "a fuzzy subalgebra (ideal) iff its 2-pi scaling is a pi-fuzzy subalgebra (ideal)")
def _pi_scaling(rng, config) -> Trial:
    L = _algebra(rng, config)
    F = real_set(rng, L, config)
    return check_pi_scaling(L, F), _instance([as_amplitude_set(F)], "pi-scaling")


@theorem("decomposition", "complex fuzzy subalgebra/ideal iff amplitude and phase parts are")
def _decomposition(rng, config) -> Trial:
    L = _algebra(rng, config)
    A = homogeneous_set(rng, L, config)
    return check_decomposition_theorem(L, A), _instance([A], "decomposition")


@theorem("negation-lemma", "subalgebras satisfy the negation and difference identities")
def _negation(rng, config) -> Trial:
    L = _algebra(rng, config)
    A = chain_set(rng, L, Mode.SUBALGEBRA, config)
    return check_negation_lemma(L, A), _instance([A], "negation")


@theorem("ideal-implies-subalgebra", "every complex fuzzy ideal is a complex fuzzy subalgebra")
def _ideal_subalgebra(rng, config) -> Trial:
    L = _algebra(rng, config)
    A = homogeneous_set(rng, L, config)
    return check_ideal_implies_subalgebra(L, A), _instance([A], "ideal-implies-subalgebra")


for _mode in Mode:
    for _strength in Strength:

        def _level(rng, config, mode=_mode, strength=_strength) -> Trial:
            L = _algebra(rng, config)
            A = homogeneous_set(rng, L, config)
            return check_level_theorem(L, A, mode, strength), _instance([A], "levels")

        theorem(
            f"level-{_mode.value}-{_strength.value}",
            f"{_mode.value} iff every {_strength.value} upper level at t in Im(mu) is a crisp {_mode.value}",
        )(_level)


@theorem("sum-ideal", "sum of mutually homogeneous complex fuzzy ideals is an ideal")
def _sum_ideal(rng, config) -> Trial:
    L = _algebra(rng, config)
    A, B = mutually_homogeneous_family(rng, L, Mode.IDEAL, config, 2)
    return check_sum_ideal_theorem(L, A, B), _instance([A, B], "sum-ideal")


@theorem("sum-attainment", "under mutual homogeneity the fuzzy-sum supremum is attained")
def _sum_attainment(rng, config) -> Trial:
    L = _algebra(rng, config)
    A, B = mutually_homogeneous_family(rng, L, pick(rng, list(Mode)), config, 2)
    return sum_attainment(L, A, B), _instance([A, B], "sum-attainment")


@theorem("sum-commutative", "A + B equals B + A")
def _sum_commutative(rng, config) -> Trial:
    L = _algebra(rng, config)
    A, B = homogeneous_set(rng, L, config, "A"), homogeneous_set(rng, L, config, "B")
    return check_sum_commutative(L, A, B), _instance([A, B], "sum-commutative")


for _mode in Mode:

    def _intersection(rng, config, mode=_mode) -> Trial:
        L = _algebra(rng, config)
        sets = mutually_homogeneous_family(rng, L, mode, config, int(rng.integers(1, 5)))
        return check_intersection_theorems(L, sets, mode), _instance(sets, f"intersection-{mode.value}")

    theorem(f"intersection-{_mode.value}", f"intersection of mutually homogeneous {_mode.value}s is one")(
        _intersection
    )


for _which in ("preimage-subalgebra", "preimage-ideal"):

    def _preimage(rng, config, which=_which) -> Trial:
        phi = _hom(rng, config)
        mode = Mode.IDEAL if which.endswith("ideal") else Mode.SUBALGEBRA
        B = chain_set(rng, phi.target, mode, config, "B")
        return check_hom_theorems(phi, which, B=B), _instance([B], which, [phi])

    theorem(_which, f"{_which.replace('-', ' of a ')} along a homomorphism")(_preimage)


for _which in ("image-subalgebra", "image-ideal"):

    def _image(rng, config, which=_which) -> Trial:
        phi = _hom(rng, config, surjective=True)
        mode = Mode.IDEAL if which.endswith("ideal") else Mode.SUBALGEBRA
        A = chain_set(rng, phi.source, mode, config, "A")
        return check_hom_theorems(phi, which, A), _instance([A], which, [phi])

    theorem(_which, f"{_which.replace('-', ' of a ')} along a surjective homomorphism")(_image)


@theorem("sum-commutation", "phi(A + B) = phi(A) + phi(B) for surjective phi")
def _sum_commutation(rng, config) -> Trial:
    phi = _hom(rng, config, surjective=True)
    A, B = mutually_homogeneous_family(rng, phi.source, pick(rng, list(Mode)), config, 2)
    return check_hom_theorems(phi, "sum-commutation", A, B), _instance([A, B], "sum-commutation", [phi])


@theorem("levelcut-commutation", "crisp preimage of every (alpha, beta) cut is the cut of the preimage")
def _levelcut(rng, config) -> Trial:
    phi = _hom(rng, config)
    B = homogeneous_set(rng, phi.target, config, "B")
    checked, spec = 0, None
    for alpha, beta in cut_grid(rng, B):
        for strict_r in (False, True):
            for strict_w in (False, True):
                spec = LevelSpec(alpha, beta, strict_r, strict_w)
                result = check_levelcut_commutation(phi, B, spec)
                checked += 1
                if not result.ok:
                    return result, _instance([B], "levelcut", [phi], **spec.to_dict())
    return CheckResult.passed(cuts=checked), _instance([B], "levelcut", [phi], **spec.to_dict())


@theorem("image-preimage", "image of the preimage of B agrees with B on phi(L)")
def _image_preimage(rng, config) -> Trial:
    phi = _hom(rng, config)
    B = homogeneous_set(rng, phi.target, config, "B")
    return check_image_of_preimage(phi, B), _instance([B], "image-preimage", [phi])


@theorem("chain-soundness", "chain-generated sets pass their predicate")
def _chain_soundness(rng, config) -> Trial:
    L = _algebra(rng, config)
    mode = pick(rng, list(Mode))
    A = chain_set(rng, L, mode, config)
    return complex_predicate(mode)(L, A), _instance([A], mode.value)


@dataclass
class TheoremReport:
    id: str
    description: str
    trials: int = 0
    passes: int = 0
    skipped: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    errors: List[Dict[str, Any]] = field(default_factory=list)
    note: Optional[str] = None
    elapsed_seconds: Optional[float] = None

    @property
    def status(self) -> str:
        if self.failures or self.errors:
            return "FAIL"
        if not self.passes:
            return "VACUOUS"
        return "PASS"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.id,
            "description": self.description,
            "status": self.status,
            "trials": self.trials,
            "passes": self.passes,
            "skipped": self.skipped,
            "failures": self.failures,
            "errors": self.errors,
        }
        if self.note:
            data["note"] = self.note
        if self.elapsed_seconds is not None:
            data["elapsed_seconds"] = round(self.elapsed_seconds, 3)
        return data


@dataclass
class SuiteReport:
    config: GenConfig
    theorems: List[TheoremReport] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        statuses = [t.status for t in self.theorems]
        if "FAIL" in statuses:
            return "FAIL"
        if not statuses or all(s == "VACUOUS" for s in statuses):
            return "VACUOUS"
        return "PASS"

    @property
    def ok(self) -> bool:
        return self.verdict != "FAIL"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.config.seed,
            "verdict": self.verdict,
            "config": self.config.model_dump(mode="json"),
            "theorems": [t.to_dict() for t in self.theorems],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _selected(config: GenConfig) -> List[Theorem]:
    ids = config.theorems or list(THEOREMS)
    unknown = [i for i in ids if i not in THEOREMS]
    if unknown:
        raise UnknownTheoremError(f"Unknown theorem id(s): {', '.join(unknown)}")
    return [THEOREMS[i] for i in ids]


def run_suite(config: Optional[GenConfig] = None, timings: bool = False) -> SuiteReport:
    """Run every selected theorem for config.trials seeded trials."""
    config = config or GenConfig()
    selected = _selected(config)
    report = SuiteReport(config)
    if config.trials == 0:
        logger.warning("Suite run with zero trials: every theorem is vacuous")
    logger.info(f"Running {len(selected)} theorems, seed={config.seed}, trials={config.trials}")
    for thm in selected:
        result_report = TheoremReport(thm.id, thm.description)
        start = time.perf_counter()
        for i in range(config.trials):
            rng = trial_rng(config.seed, thm.id, i)
            try:
                result, instance = thm.trial(rng, config)
            except NoInstanceError as e:
                result_report.skipped += 1
                result_report.note = str(e)
                continue
            except CflaError as e:
                logger.warning(f"{thm.id} trial {i}: {e}")
                result_report.errors.append({"trial": i, "error": str(e)})
                continue

            result_report.trials += 1
            if result.ok:
                result_report.passes += 1
                logger.debug(f"{thm.id} trial {i}: OK")
            else:
                logger.error(f"{thm.id} trial {i}: {result.verdict.value}")
                result_report.failures.append({"trial": i, **result.to_dict(), "instance": dump_scenario(instance)})
        if timings:
            result_report.elapsed_seconds = time.perf_counter() - start
        report.theorems.append(result_report)

    logger.info(f"Suite finished: {report.verdict}")
    return report


# Relaxed instance builders for the probe: theorem -> hypothesis -> builder
def _probe_sum_ideal(rng, config) -> Trial:
    L = _algebra(rng, config)
    A, B = independent_family(rng, L, Mode.IDEAL, config, 2)
    dropped = [HYP_MUTUAL_HOMOGENEITY]
    return check_sum_ideal_theorem(L, A, B, dropped), _instance([A, B], "sum-ideal", drop=dropped)


def _probe_intersection(mode: Mode) -> TrialFn:
    def build(rng, config) -> Trial:
        L = _algebra(rng, config)
        sets = independent_family(rng, L, mode, config, 2)
        dropped = [HYP_MUTUAL_HOMOGENEITY]
        result = check_intersection_theorems(L, sets, mode, dropped)
        return result, _instance(sets, f"intersection-{mode.value}", drop=dropped)

    return build


def _probe_image(which: str) -> TrialFn:
    def build(rng, config) -> Trial:
        phi = _hom(rng, config, surjective=False)
        mode = Mode.IDEAL if which.endswith("ideal") else Mode.SUBALGEBRA
        A = chain_set(rng, phi.source, mode, config, "A")
        dropped = [HYP_SURJECTIVITY]
        return check_hom_theorems(phi, which, A, dropped=dropped), _instance([A], which, [phi], drop=dropped)

    return build


def _probe_sum_commutation(surjective: bool, family) -> TrialFn:
    def build(rng, config) -> Trial:
        phi = _hom(rng, config, surjective=surjective)
        A, B = family(rng, phi.source, pick(rng, list(Mode)), config, 2)
        dropped = [HYP_SURJECTIVITY, HYP_MUTUAL_HOMOGENEITY]
        result = check_hom_theorems(phi, "sum-commutation", A, B, dropped=dropped)
        return result, _instance([A, B], "sum-commutation", [phi], drop=dropped)

    return build


DROPPABLE: Dict[str, Dict[str, TrialFn]] = {
    "sum-ideal": {HYP_MUTUAL_HOMOGENEITY: _probe_sum_ideal},
    "intersection-subalgebra": {HYP_MUTUAL_HOMOGENEITY: _probe_intersection(Mode.SUBALGEBRA)},
    "intersection-ideal": {HYP_MUTUAL_HOMOGENEITY: _probe_intersection(Mode.IDEAL)},
    "image-subalgebra": {HYP_SURJECTIVITY: _probe_image("image-subalgebra")},
    "image-ideal": {HYP_SURJECTIVITY: _probe_image("image-ideal")},
    "sum-commutation": {
        HYP_SURJECTIVITY: _probe_sum_commutation(False, mutually_homogeneous_family),
        HYP_MUTUAL_HOMOGENEITY: _probe_sum_commutation(True, independent_family),
    },
}


@dataclass
class ProbeResult:
    theorem: str
    dropped: str
    budget: int
    tried: int = 0
    result: Optional[CheckResult] = None
    instance: Optional[Scenario] = None

    @property
    def found(self) -> bool:
        return self.instance is not None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "theorem": self.theorem,
            "dropped": self.dropped,
            "status": "FOUND" if self.found else "NOT_FOUND",
            "budget": self.budget,
            "tried": self.tried,
        }
        if self.found:
            data["result"] = self.result.to_dict()
            data["instance"] = dump_scenario(self.instance)
        return data


def find_hypothesis_counterexample(
    theorem_id: str, dropped: Optional[str], budget: Optional[int] = None, config: Optional[GenConfig] = None
) -> ProbeResult:
    """
    Search for an instance where the conclusion fails once `dropped` is no
    longer required. Instances that miss another hypothesis are skipped.
    A counterexample is informational: it shows the hypothesis is needed.
    """
    if theorem_id not in THEOREMS:
        raise UnknownTheoremError(f"Unknown theorem id: '{theorem_id}'")
    options = DROPPABLE.get(theorem_id, {})
    if dropped not in options:
        allowed = ", ".join(options) or "none"
        raise UnknownTheoremError(f"Hypothesis '{dropped}' is not droppable for '{theorem_id}' (droppable: {allowed})")

    config = config or GenConfig()
    budget = settings.probe_budget if budget is None else budget
    probe = ProbeResult(theorem_id, dropped, budget)
    build = options[dropped]

    for i in range(budget):
        rng = trial_rng(config.seed, f"probe:{theorem_id}:{dropped}", i)
        probe.tried += 1
        try:
            result, instance = build(rng, config)
        except NoInstanceError as e:
            logger.warning(f"Probe {theorem_id}/{dropped}: {e}")
            break
        except CflaError as e:
            logger.debug(f"Probe {theorem_id}/{dropped} instance {i} skipped: {e}")
            continue
        if not result.ok:
            probe.result, probe.instance = result, instance
            logger.info(f"Probe {theorem_id}/{dropped}: counterexample after {probe.tried} instances")
            return probe

    logger.info(f"Probe {theorem_id}/{dropped}: nothing found in {probe.tried} instances")
    return probe

