"""
Exact unit-disc membership values and complex fuzzy sets on a finite carrier.

A membership r e^{iw} is stored as the pair (r, w/pi) of Fractions. Values are
ordered componentwise (a partial order); meet and join are componentwise min
and max. The phase interval [0, 2pi] is ordered, not circular: w = 2pi is the
top phase and differs from w = 0.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .lie_core import LieAlgebra, enumerate_carrier
from .models import (
    CarrierMismatchError,
    CflaError,
    CheckResult,
    Comparison,
    Condition,
    Element,
    MembershipError,
    Witness,
)

logger = logging.getLogger(__name__)

Rational = Union[Fraction, int, str, float]


def to_fraction(value: Rational) -> Fraction:
    """Parse "num/den", integers, Fractions, or decimal literals exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # Go through the decimal literal so 0.6 means 3/5, not its binary neighbour
        value = repr(value)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise MembershipError(f"Not an exact rational: {value!r} ({e})")


def format_fraction(value: Fraction) -> str:
    """Always "num/den", e.g. "3/5", "0/1", "2/1"."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Membership:
    """A point r e^{iw} of the closed unit disc with r in [0, 1] and w = w_over_pi * pi in [0, 2pi]."""

    r: Fraction
    w_over_pi: Fraction

    def __post_init__(self):
        r, w = to_fraction(self.r), to_fraction(self.w_over_pi)
        if not 0 <= r <= 1:
            raise MembershipError(f"Amplitude {r} outside [0, 1]")
        if not 0 <= w <= 2:
            raise MembershipError(f"Phase {w}*pi outside [0, 2pi]")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "w_over_pi", w)

    # Partial order, same convention as set inclusion
    def __le__(self, other: "Membership") -> bool:
        return self.r <= other.r and self.w_over_pi <= other.w_over_pi

    def __ge__(self, other: "Membership") -> bool:
        return other <= self

    def __lt__(self, other: "Membership") -> bool:
        return self <= other and self != other

    def __gt__(self, other: "Membership") -> bool:
        return other < self

    def __str__(self) -> str:
        return f"{self.r}e^(i{self.w_over_pi}pi)"

    def to_dict(self) -> Dict[str, str]:
        return {"r": format_fraction(self.r), "w_over_pi": format_fraction(self.w_over_pi)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Rational]) -> "Membership":
        return cls(to_fraction(data["r"]), to_fraction(data["w_over_pi"]))


ZERO = Membership(Fraction(0), Fraction(0))
TOP = Membership(Fraction(1), Fraction(2))


def cmp_membership(m1: Membership, m2: Membership) -> Comparison:
    if m1 == m2:
        return Comparison.EQ
    if m1 <= m2:
        return Comparison.LT
    if m2 <= m1:
        return Comparison.GT
    return Comparison.INCOMPARABLE


def meet(m1: Membership, m2: Membership) -> Membership:
    return Membership(min(m1.r, m2.r), min(m1.w_over_pi, m2.w_over_pi))


def join(m1: Membership, m2: Membership) -> Membership:
    return Membership(max(m1.r, m2.r), max(m1.w_over_pi, m2.w_over_pi))


def meet_all(values: Iterable[Membership]) -> Membership:
    values = list(values)
    if not values:
        return TOP
    return Membership(min(v.r for v in values), min(v.w_over_pi for v in values))


def join_all(values: Iterable[Membership]) -> Membership:
    values = list(values)
    if not values:
        return ZERO
    return Membership(max(v.r for v in values), max(v.w_over_pi for v in values))


def _check_total(L: LieAlgebra, values: Sequence, kind: str):
    if len(values) != L.size:
        raise MembershipError(f"{kind} on '{L.name}' has {len(values)} values for {L.size} carrier elements")


@dataclass(frozen=True)
class ComplexFuzzySet:
    """A total map carrier -> Membership, stored in carrier (lexicographic) order."""

    algebra: LieAlgebra
    values: Tuple[Membership, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        _check_total(self.algebra, self.values, "Complex fuzzy set")

    @classmethod
    def constant(cls, L: LieAlgebra, value: Membership, name: str = "") -> "ComplexFuzzySet":
        return cls(L, (value,) * L.size, name)

    @classmethod
    def from_mapping(
        cls,
        L: LieAlgebra,
        entries: Mapping[Sequence[int], Membership],
        default: Membership = ZERO,
        name: str = "",
    ) -> "ComplexFuzzySet":
        """Sparse form: a default value plus exceptions."""
        values = [default] * L.size
        for x, value in entries.items():
            values[L.index_of(x)] = value
        return cls(L, tuple(values), name)

    @classmethod
    def from_function(cls, L: LieAlgebra, fn: Callable[[Element], Membership], name: str = "") -> "ComplexFuzzySet":
        return cls(L, tuple(fn(x) for x in enumerate_carrier(L)), name)

    def __getitem__(self, x: Sequence[int]) -> Membership:
        return self.values[self.algebra.index_of(x)]

    def items(self) -> List[Tuple[Element, Membership]]:
        return list(zip(enumerate_carrier(self.algebra), self.values))

    def named(self, name: str) -> "ComplexFuzzySet":
        return replace(self, name=name)

    def distinct_values(self) -> List[Membership]:
        """Distinct values in order of first occurrence."""
        return list(dict.fromkeys(self.values))


@dataclass(frozen=True)
class RealFuzzySet:
    """A total map carrier -> [0, 1]."""

    algebra: LieAlgebra
    values: Tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        values = tuple(to_fraction(v) for v in self.values)
        _check_total(self.algebra, values, "Fuzzy set")
        for v in values:
            if not 0 <= v <= 1:
                raise MembershipError(f"Fuzzy value {v} outside [0, 1]")
        object.__setattr__(self, "values", values)

    def __getitem__(self, x: Sequence[int]) -> Fraction:
        return self.values[self.algebra.index_of(x)]


@dataclass(frozen=True)
class PiFuzzySet:
    """A total map carrier -> [0, 2pi], stored as multiples of pi in [0, 2]."""

    algebra: LieAlgebra
    values: Tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        values = tuple(to_fraction(v) for v in self.values)
        _check_total(self.algebra, values, "Pi-fuzzy set")
        for v in values:
            if not 0 <= v <= 2:
                raise MembershipError(f"Pi-fuzzy value {v}*pi outside [0, 2pi]")
        object.__setattr__(self, "values", values)

    def __getitem__(self, x: Sequence[int]) -> Fraction:
        return self.values[self.algebra.index_of(x)]


class OrderCodec:
    """
    Order-preserving integer codes for a finite set of exact rationals.

    Every predicate in this package only compares values and takes min/max,
    so working on codes is exact and lets numpy do the exhaustive scans.
    Zero is always encoded so empty suprema decode to 0.
    """

    def __init__(self, values: Iterable[Fraction]):
        self.levels: List[Fraction] = sorted(set(values) | {Fraction(0)})
        self._codes = {v: i for i, v in enumerate(self.levels)}

    @property
    def zero(self) -> int:
        return self._codes[Fraction(0)]

    def encode(self, values: Iterable[Fraction]) -> np.ndarray:
        return np.array([self._codes[v] for v in values], dtype=np.intp)

    def decode(self, codes: Iterable[int]) -> List[Fraction]:
        return [self.levels[int(c)] for c in codes]


def encode_sets(*sets: ComplexFuzzySet) -> Tuple[OrderCodec, OrderCodec, List[Tuple[np.ndarray, np.ndarray]]]:
    """Joint amplitude/phase codes for several sets, so codes compare across sets."""
    r_codec = OrderCodec(v.r for A in sets for v in A.values)
    w_codec = OrderCodec(v.w_over_pi for A in sets for v in A.values)
    arrays = [
        (r_codec.encode(v.r for v in A.values), w_codec.encode(v.w_over_pi for v in A.values)) for A in sets
    ]
    return r_codec, w_codec, arrays


def decode_set(
    L: LieAlgebra, r_codec: OrderCodec, w_codec: OrderCodec, R: np.ndarray, W: np.ndarray, name: str = ""
) -> ComplexFuzzySet:
    return ComplexFuzzySet(L, tuple(Membership(r, w) for r, w in zip(r_codec.decode(R), w_codec.decode(W))), name)


def _value_table(A: ComplexFuzzySet) -> Tuple[List[Membership], np.ndarray]:
    """Distinct values and, for each, the index of its first carrier element."""
    first: Dict[Membership, int] = {}
    for i, v in enumerate(A.values):
        first.setdefault(v, i)
    return list(first), np.array(list(first.values()), dtype=np.intp)


def _lex_first(bad: np.ndarray, first_a: np.ndarray, first_b: np.ndarray, size: int) -> Optional[Tuple[int, int]]:
    """Lexicographically smallest carrier pair among violating value pairs."""
    rows, cols = np.nonzero(bad)
    if not len(rows):
        return None
    keys = first_a[rows] * size + first_b[cols]
    k = int(np.argmin(keys))
    return int(first_a[rows[k]]), int(first_b[cols[k]])


def is_homogeneous(A: ComplexFuzzySet) -> CheckResult:
    """r(x) <= r(y) iff w(x) <= w(y) for every pair of carrier elements."""
    L = A.algebra
    values, first = _value_table(A)
    R = np.array([v.r for v in values], dtype=object)
    W = np.array([v.w_over_pi for v in values], dtype=object)
    r_le = R[:, None] <= R[None, :]
    w_le = W[:, None] <= W[None, :]

    hit = _lex_first(r_le != w_le, first, first, L.size)
    if hit:
        x, y = hit
        return CheckResult.not_homogeneous(
            Witness(
                Condition.HOMOGENEITY,
                (L.element(x), L.element(y)),
                detail={"values": [A.values[x].to_dict(), A.values[y].to_dict()]},
            )
        )

    comparable = bool(np.all(r_le | r_le.T) and np.all((r_le & w_le) | (r_le.T & w_le.T)))
    if not comparable:
        logger.error(f"Homogeneous set '{A.name}' has incomparable values")
    return CheckResult.passed(chain_length=len(values), pairwise_comparable=comparable)


def is_mutually_homogeneous(A: ComplexFuzzySet, B: ComplexFuzzySet) -> CheckResult:
    """r_A(x) <= r_B(y) iff w_A(x) <= w_B(y) for all x, y."""
    if A.algebra != B.algebra:
        raise CarrierMismatchError(f"Sets live on '{A.algebra.name}' and '{B.algebra.name}'")
    L = A.algebra
    values_a, first_a = _value_table(A)
    values_b, first_b = _value_table(B)
    r_le = np.array([[a.r <= b.r for b in values_b] for a in values_a], dtype=bool)
    w_le = np.array([[a.w_over_pi <= b.w_over_pi for b in values_b] for a in values_a], dtype=bool)

    hit = _lex_first(r_le != w_le, first_a, first_b, L.size)
    if hit:
        x, y = hit
        return CheckResult.not_homogeneous(
            Witness(
                Condition.MUTUAL_HOMOGENEITY,
                (L.element(x), L.element(y)),
                detail={"values": [A.values[x].to_dict(), B.values[y].to_dict()]},
            )
        )
    return CheckResult.passed()


def decompose(A: ComplexFuzzySet) -> Tuple[RealFuzzySet, PiFuzzySet]:
    """Split into the amplitude fuzzy set and the phase pi-fuzzy set."""
    return (
        RealFuzzySet(A.algebra, tuple(v.r for v in A.values), A.name),
        PiFuzzySet(A.algebra, tuple(v.w_over_pi for v in A.values), A.name),
    )


def recompose(F: RealFuzzySet, G: PiFuzzySet, name: str = "") -> ComplexFuzzySet:
    if F.algebra != G.algebra:
        raise CarrierMismatchError(f"Parts live on '{F.algebra.name}' and '{G.algebra.name}'")
    return ComplexFuzzySet(F.algebra, tuple(Membership(r, w) for r, w in zip(F.values, G.values)), name or F.name)


def to_pi_fuzzy(F: RealFuzzySet) -> PiFuzzySet:
    """gamma = 2 pi mu, i.e. w_over_pi = 2 mu."""
    return PiFuzzySet(F.algebra, tuple(2 * v for v in F.values), F.name)


def intersect(A: ComplexFuzzySet, B: ComplexFuzzySet) -> ComplexFuzzySet:
    if A.algebra != B.algebra:
        raise CarrierMismatchError(f"Sets live on '{A.algebra.name}' and '{B.algebra.name}'")
    name = f"{A.name}&{B.name}" if A.name and B.name else ""
    return ComplexFuzzySet(A.algebra, tuple(meet(a, b) for a, b in zip(A.values, B.values)), name)


def intersect_family(sets: Sequence[ComplexFuzzySet]) -> ComplexFuzzySet:
    """Pointwise meet of a non-empty family."""
    sets = list(sets)
    if not sets:
        raise CflaError("Cannot intersect an empty family")
    result = sets[0]
    for other in sets[1:]:
        result = intersect(result, other)
    return result


def are_mutually_homogeneous(sets: Sequence[ComplexFuzzySet]) -> CheckResult:
    """is_mutually_homogeneous over every ordered pair of distinct positions in the family."""
    for i, A in enumerate(sets):
        for j, B in enumerate(sets):
            if i == j:
                continue
            result = is_mutually_homogeneous(A, B)
            if not result.ok:
                return CheckResult.not_homogeneous(result.witness, pair=[i, j])
    return CheckResult.passed()


def compare_sets(left: ComplexFuzzySet, right: ComplexFuzzySet) -> CheckResult:
    """Pointwise equality; the witness is the first differing element."""
    if left.algebra != right.algebra:
        raise CarrierMismatchError(f"Sets live on '{left.algebra.name}' and '{right.algebra.name}'")
    for i, (a, b) in enumerate(zip(left.values, right.values)):
        if a != b:
            return CheckResult.failed(
                Condition.SET_EQUALITY,
                (left.algebra.element(i),),
                detail={"left": a.to_dict(), "right": b.to_dict()},
            )
    return CheckResult.passed()
