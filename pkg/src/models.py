"""Shared data models: verdicts, witnesses and the error hierarchy."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

# A carrier element: n residues mod p, lexicographically ordered
Element = Tuple[int, ...]


class Verdict(str, Enum):
    OK = "OK"
    FAIL = "FAIL"
    NOT_HOMOGENEOUS = "NOT_HOMOGENEOUS"


class Comparison(str, Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INCOMPARABLE = "INCOMPARABLE"


class Mode(str, Enum):
    SUBALGEBRA = "subalgebra"
    IDEAL = "ideal"


class Strength(str, Enum):
    UPPER = "upper"
    STRONG = "strong"


class Condition(str, Enum):
    """Tags naming the condition a witness violates."""

    # Lie axioms
    ALTERNATING = "alternating"
    ANTISYMMETRY = "antisymmetry"
    JACOBI = "jacobi"
    # Closure conditions (crisp and fuzzy)
    SUM = "sum"
    SCALAR = "scalar"
    BRACKET = "bracket"
    MEMBERSHIP = "membership"
    # Order conditions
    HOMOGENEITY = "homogeneity"
    MUTUAL_HOMOGENEITY = "mutual_homogeneity"
    # Negation lemma clauses
    ZERO_MAXIMAL = "zero_maximal"
    NEGATION = "negation"
    DIFFERENCE_AT_ZERO = "difference_at_zero"
    STRICT_DIFFERENCE = "strict_difference"
    # Theorem-level disagreements
    DECOMPOSITION = "decomposition"
    LEVEL_AGREEMENT = "level_agreement"
    PI_SCALING = "pi_scaling"
    SUM_ATTAINMENT = "sum_attainment"
    SET_EQUALITY = "set_equality"
    BRACKET_PRESERVATION = "bracket_preservation"
    SURJECTIVITY = "surjectivity"
    CONCLUSION = "conclusion"


@dataclass(frozen=True)
class Witness:
    """Evidence for a failed predicate: the condition plus the elements involved."""

    condition: Condition
    elements: Tuple[Element, ...] = ()
    scalar: Optional[int] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "condition": self.condition.value,
            "elements": [list(e) for e in self.elements],
        }
        if self.scalar is not None:
            data["scalar"] = self.scalar
        if self.detail:
            data["detail"] = self.detail
        return data


@dataclass(frozen=True)
class CheckResult:
    """Verdict of a predicate. FAIL and NOT_HOMOGENEOUS always carry a witness."""

    verdict: Verdict
    witness: Optional[Witness] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict == Verdict.OK and self.witness is not None:
            raise ValueError("OK results carry no witness")
        if self.verdict != Verdict.OK and self.witness is None:
            raise ValueError(f"{self.verdict.value} results need a witness")

    @property
    def ok(self) -> bool:
        return self.verdict == Verdict.OK

    @classmethod
    def passed(cls, **details: Any) -> "CheckResult":
        return cls(Verdict.OK, None, details)

    @classmethod
    def failed(
        cls,
        condition: Condition,
        elements: Tuple[Element, ...] = (),
        scalar: Optional[int] = None,
        detail: Optional[Dict[str, Any]] = None,
        **details: Any,
    ) -> "CheckResult":
        witness = Witness(condition, tuple(elements), scalar, detail or {})
        return cls(Verdict.FAIL, witness, details)

    @classmethod
    def not_homogeneous(cls, witness: Witness, **details: Any) -> "CheckResult":
        return cls(Verdict.NOT_HOMOGENEOUS, witness, details)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"verdict": self.verdict.value}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        if self.details:
            data["details"] = self.details
        return data


class CflaError(ValueError):
    """Base class for every domain error raised by the library."""


class AlgebraError(CflaError):
    """Invalid field, dimension, structure constants or catalog request."""


class BudgetExceededError(CflaError):
    """Carrier too large to enumerate under the configured budget."""


class CarrierMismatchError(CflaError):
    """Operands live on different algebras."""


class HomError(CflaError):
    """Homomorphism does not fit its source/target."""


class ChainError(CflaError):
    """ChainSpec violates its nesting or ordering invariants."""


class UnknownTheoremError(CflaError):
    """Theorem id or hypothesis name not known to the registry."""


class MembershipError(CflaError):
    """Membership value outside the closed unit disc, or a fuzzy set that is not total."""


class ScenarioError(CflaError):
    """Scenario file failed to parse or validate."""


class HypothesisError(CflaError):
    """A theorem's hypothesis is not satisfied by the given instance."""

    def __init__(self, hypothesis: str, result: Optional[CheckResult] = None):
        self.hypothesis = hypothesis
        self.result = result
        super().__init__(f"Hypothesis not satisfied: {hypothesis}")


class NotHomogeneousError(CflaError):
    """An ordering was requested on a set whose values are not a chain."""

    def __init__(self, result: CheckResult):
        self.result = result
        super().__init__("Complex fuzzy set is not homogeneous")
