"""
Scenario files: named algebras, complex fuzzy sets, homomorphisms and checks.

The on-disk format is JSON, validated with pydantic before any algebraic
object is built. Fuzzy sets are sparse: a default membership plus entries.
"""

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .cfuzzy import ZERO, ComplexFuzzySet, Membership, to_fraction
from .lie_core import LieAlgebra, LieHom, make_catalog_algebra
from .models import CflaError, Element, ScenarioError, Verdict

logger = logging.getLogger(__name__)


class MembershipModel(BaseModel):
    r: str
    w_over_pi: str

    @field_validator("r", "w_over_pi", mode="before")
    @classmethod
    def as_text(cls, v: Any) -> str:
        # Accept bare numbers; "num/den" strings are the canonical form
        if isinstance(v, bool):
            raise ValueError("booleans are not memberships")
        return str(v)

    def build(self) -> Membership:
        return Membership(to_fraction(self.r), to_fraction(self.w_over_pi))


class EntryModel(MembershipModel):
    element: List[int]


class AlgebraModel(BaseModel):
    name: str
    field: int
    dim: Optional[int] = None
    constants: Optional[List[List[List[int]]]] = None
    catalog: Optional[str] = None

    @model_validator(mode="after")
    def constants_or_catalog(self) -> "AlgebraModel":
        if (self.constants is None) == (self.catalog is None):
            raise ValueError("give exactly one of 'constants' or 'catalog'")
        if self.constants is not None and self.dim is None:
            raise ValueError("'dim' is required with 'constants'")
        return self


class FuzzySetModel(BaseModel):
    name: str
    algebra: str
    default: MembershipModel = Field(default_factory=lambda: MembershipModel(r="0/1", w_over_pi="0/1"))
    entries: List[EntryModel] = []


class HomModel(BaseModel):
    name: str
    source: str
    target: str
    matrix: Union[List[List[int]], List[int]]


class CheckEntry(BaseModel):
    """One check: an op applied to named sets (and optionally a hom)."""

    op: str
    sets: List[str] = []
    hom: Optional[str] = None
    algebra: Optional[str] = None
    at: Optional[List[List[int]]] = None
    alpha: Optional[str] = None
    beta_over_pi: Optional[str] = None
    strict_r: bool = False
    strict_w: bool = False
    drop: List[str] = []
    expect: Optional[Verdict] = None

    @field_validator("alpha", "beta_over_pi", mode="before")
    @classmethod
    def as_text(cls, v: Any) -> Optional[str]:
        return None if v is None else str(v)


class ScenarioModel(BaseModel):
    algebras: List[AlgebraModel] = []
    fuzzy_sets: List[FuzzySetModel] = []
    homs: List[HomModel] = []
    checks: List[CheckEntry] = []


@dataclass
class Scenario:
    """A loaded scenario: every name resolved, every definition validated."""

    algebras: Dict[str, LieAlgebra] = field(default_factory=dict)
    fuzzy_sets: Dict[str, ComplexFuzzySet] = field(default_factory=dict)
    homs: Dict[str, LieHom] = field(default_factory=dict)
    checks: List[CheckEntry] = field(default_factory=list)
    source: str = "<inline>"

    def algebra(self, name: str) -> LieAlgebra:
        if name not in self.algebras:
            raise ScenarioError(f"{self.source}: unknown algebra '{name}'")
        return self.algebras[name]

    def fuzzy_set(self, name: str) -> ComplexFuzzySet:
        if name not in self.fuzzy_sets:
            raise ScenarioError(f"{self.source}: unknown fuzzy set '{name}'")
        return self.fuzzy_sets[name]

    def hom(self, name: str) -> LieHom:
        if name not in self.homs:
            raise ScenarioError(f"{self.source}: unknown hom '{name}'")
        return self.homs[name]

    @classmethod
    def of(cls, algebras=(), fuzzy_sets=(), homs=(), checks=(), source: str = "<generated>") -> "Scenario":
        """Assemble from objects, keyed by their names; hom algebras are added automatically."""
        scenario = cls(source=source, checks=list(checks))
        for phi in homs:
            scenario.homs[phi.name] = phi
            scenario.algebras.setdefault(phi.source.name, phi.source)
            scenario.algebras.setdefault(phi.target.name, phi.target)
        for L in algebras:
            scenario.algebras[L.name] = L
        for A in fuzzy_sets:
            scenario.fuzzy_sets[A.name] = A
            scenario.algebras.setdefault(A.algebra.name, A.algebra)
        return scenario


def _unique(kind: str, names: List[str], source: str):
    seen = set()
    for name in names:
        if name in seen:
            raise ScenarioError(f"{source}: duplicate {kind} name '{name}'")
        seen.add(name)


def _build_algebra(model: AlgebraModel) -> LieAlgebra:
    if model.catalog is not None:
        L = make_catalog_algebra(model.catalog, model.field)
        if model.dim is not None and model.dim != L.dim:
            raise ScenarioError(f"catalog algebra '{model.catalog}' has dimension {L.dim}, not {model.dim}")
        return LieAlgebra(model.name, L.field, L.dim, L.constants)
    return LieAlgebra.create(model.name, model.field, model.dim, model.constants)


def parse_scenario(data: Any, source: str = "<inline>") -> Scenario:
    """Validate a decoded JSON document and build every definition."""
    try:
        model = ScenarioModel.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise ScenarioError(f"{source}: {problems}")

    _unique("algebra", [a.name for a in model.algebras], source)
    _unique("fuzzy set", [s.name for s in model.fuzzy_sets], source)
    _unique("hom", [h.name for h in model.homs], source)

    scenario = Scenario(source=source, checks=list(model.checks))
    for a in model.algebras:
        try:
            scenario.algebras[a.name] = _build_algebra(a)
        except CflaError as e:
            raise ScenarioError(f"{source}: algebra '{a.name}': {e}")

    for s in model.fuzzy_sets:
        L = scenario.algebra(s.algebra)
        try:
            entries = {tuple(e.element): e.build() for e in s.entries}
            scenario.fuzzy_sets[s.name] = ComplexFuzzySet.from_mapping(L, entries, s.default.build(), s.name)
        except CflaError as e:
            raise ScenarioError(f"{source}: fuzzy set '{s.name}': {e}")

    for h in model.homs:
        try:
            scenario.homs[h.name] = LieHom(h.name, scenario.algebra(h.source), scenario.algebra(h.target), h.matrix)
        except ScenarioError:
            raise
        except CflaError as e:
            raise ScenarioError(f"{source}: hom '{h.name}': {e}")

    for check in scenario.checks:
        for name in check.sets:
            scenario.fuzzy_set(name)
        if check.hom is not None:
            scenario.hom(check.hom)
        if check.algebra is not None:
            scenario.algebra(check.algebra)

    logger.debug(
        f"Parsed scenario {source}: {len(scenario.algebras)} algebras, "
        f"{len(scenario.fuzzy_sets)} sets, {len(scenario.homs)} homs, {len(scenario.checks)} checks"
    )
    return scenario


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ScenarioError(f"{path}: cannot read scenario ({e.strerror})")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")
    scenario = parse_scenario(data, str(path))
    logger.info(f"Loaded scenario {path}")
    return scenario


def dump_fuzzy_set(A: ComplexFuzzySet) -> Dict[str, Any]:
    counts = Counter(A.values)
    # Most frequent value becomes the default; ties go to the value seen first
    default = ZERO if counts.get(ZERO, 0) == max(counts.values()) else max(counts, key=counts.get)
    entries = [
        {"element": list(x), **v.to_dict()} for x, v in A.items() if v != default
    ]
    return {"name": A.name, "algebra": A.algebra.name, "default": default.to_dict(), "entries": entries}


def dump_scenario(scenario: Scenario) -> Dict[str, Any]:
    """JSON-ready form that parse_scenario reads back to an equal scenario."""
    return {
        "algebras": [
            {"name": L.name, "field": L.p, "dim": L.dim, "constants": [[list(row) for row in plane] for plane in L.constants]}
            for L in scenario.algebras.values()
        ],
        "fuzzy_sets": [dump_fuzzy_set(A) for A in scenario.fuzzy_sets.values()],
        "homs": [
            {"name": h.name, "source": h.source.name, "target": h.target.name, "matrix": [list(row) for row in h.matrix]}
            for h in scenario.homs.values()
        ],
        "checks": [c.model_dump(mode="json", exclude_defaults=True) for c in scenario.checks],
    }


def save_scenario(scenario: Scenario, path: Union[str, Path]):
    Path(path).write_text(json.dumps(dump_scenario(scenario), indent=2) + "\n")
    logger.info(f"Wrote scenario {path}")


def element_from_text(text: str) -> Element:
    """Parse "1,0,0" or "(1, 0, 0)" into a coordinate tuple."""
    try:
        return tuple(int(v) for v in text.strip("()[] ").split(",") if v.strip())
    except ValueError:
        raise ScenarioError(f"Not an element: '{text}'")
