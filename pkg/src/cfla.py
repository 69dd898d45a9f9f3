"""
Complex fuzzy Lie subalgebras and ideals.

Predicates run exhaustively over the carrier. Membership values are first
rank-encoded per component (see cfuzzy.OrderCodec) so that every closure
condition becomes a numpy comparison over carrier index tables.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cfuzzy import (
    ZERO,
    ComplexFuzzySet,
    Membership,
    OrderCodec,
    PiFuzzySet,
    RealFuzzySet,
    Rational,
    are_mutually_homogeneous,
    compare_sets,
    decode_set,
    decompose,
    encode_sets,
    format_fraction,
    intersect_family,
    is_homogeneous,
    join,
    meet,
    to_pi_fuzzy,
    to_fraction,
)
from .lie_core import (
    CrispSubset,
    LieAlgebra,
    _first_pair,
    add,
    bracket,
    is_crisp_ideal,
    is_crisp_subalgebra,
    scale,
)
from .models import (
    CarrierMismatchError,
    ChainError,
    CheckResult,
    Condition,
    Element,
    HypothesisError,
    MembershipError,
    Mode,
    NotHomogeneousError,
    Strength,
    Verdict,
)

logger = logging.getLogger(__name__)

# Hypothesis names shared with the suite and the counterexample probe
HYP_MUTUAL_HOMOGENEITY = "mutual-homogeneity"
HYP_IDEAL = "ideal"
HYP_SUBALGEBRA = "subalgebra"


def require_hypothesis(name: str, result: CheckResult, dropped: Iterable[str] = ()) -> bool:
    """Raise HypothesisError unless the hypothesis holds or was dropped on purpose."""
    if result.ok:
        return True
    if name in set(dropped):
        logger.debug(f"Hypothesis '{name}' fails but was dropped")
        return False
    logger.warning(f"Hypothesis '{name}' not satisfied: {result.to_dict()}")
    raise HypothesisError(name, result)


def _require_on(L: LieAlgebra, *sets):
    for A in sets:
        if A.algebra != L:
            raise CarrierMismatchError(f"Set '{A.name}' lives on '{A.algebra.name}', not on '{L.name}'")


def _closure_scan(
    L: LieAlgebra,
    channels: Sequence[np.ndarray],
    mode: Mode,
    describe: Callable[[int], object],
) -> CheckResult:
    """
    Closure conditions on rank-encoded channels, each compared componentwise:
    scalar  mu(a x) >= mu(x) for a in F_p^*,
    sum     mu(x + y) >= mu(x) meet mu(y),
    bracket mu([x, y]) >= mu(x) meet mu(y)  (join for ideals).
    The first violation in lexicographic order is reported.
    """
    t = L.tables

    def holds(target: np.ndarray, combine) -> np.ndarray:
        ok = np.ones(target.shape, dtype=bool)
        for ch in channels:
            ok &= ch[target] >= combine(ch)
        return ok

    scaled = t.scale[1:]
    hit = _first_pair(~holds(scaled, lambda ch: ch[None, :]))
    if hit:
        a, x = hit
        z = int(scaled[a, x])
        return CheckResult.failed(
            Condition.SCALAR,
            (L.element(x),),
            scalar=a + 1,
            detail={"result": list(L.element(z)), "value": describe(x), "result_value": describe(z)},
        )

    pairwise = (
        (Condition.SUM, t.add, np.minimum),
        (Condition.BRACKET, t.bracket, np.maximum if mode == Mode.IDEAL else np.minimum),
    )
    for condition, table, op in pairwise:
        hit = _first_pair(~holds(table, lambda ch: op(ch[:, None], ch[None, :])))
        if hit:
            x, y = hit
            z = int(table[x, y])
            return CheckResult.failed(
                condition,
                (L.element(x), L.element(y)),
                detail={
                    "result": list(L.element(z)),
                    "values": [describe(x), describe(y)],
                    "result_value": describe(z),
                },
            )
    return CheckResult.passed()


def _complex_check(L: LieAlgebra, A: ComplexFuzzySet, mode: Mode) -> CheckResult:
    _require_on(L, A)
    homogeneity = is_homogeneous(A)
    if not homogeneity.ok:
        return homogeneity
    _, _, [(R, W)] = encode_sets(A)
    return _closure_scan(L, [R, W], mode, lambda i: A.values[i].to_dict())


def is_complex_fuzzy_subalgebra(L: LieAlgebra, A: ComplexFuzzySet) -> CheckResult:
    return _complex_check(L, A, Mode.SUBALGEBRA)


def is_complex_fuzzy_ideal(L: LieAlgebra, A: ComplexFuzzySet) -> CheckResult:
    return _complex_check(L, A, Mode.IDEAL)


def complex_predicate(mode: Mode) -> Callable[[LieAlgebra, ComplexFuzzySet], CheckResult]:
    return is_complex_fuzzy_ideal if mode == Mode.IDEAL else is_complex_fuzzy_subalgebra


def _scalar_check(L: LieAlgebra, F, mode: Mode) -> CheckResult:
    _require_on(L, F)
    codec = OrderCodec(F.values)
    return _closure_scan(L, [codec.encode(F.values)], mode, lambda i: format_fraction(F.values[i]))


def is_real_fuzzy_subalgebra(L: LieAlgebra, F: RealFuzzySet) -> CheckResult:
    return _scalar_check(L, F, Mode.SUBALGEBRA)


def is_real_fuzzy_ideal(L: LieAlgebra, F: RealFuzzySet) -> CheckResult:
    return _scalar_check(L, F, Mode.IDEAL)


def is_pi_fuzzy_subalgebra(L: LieAlgebra, G: PiFuzzySet) -> CheckResult:
    return _scalar_check(L, G, Mode.SUBALGEBRA)


def is_pi_fuzzy_ideal(L: LieAlgebra, G: PiFuzzySet) -> CheckResult:
    return _scalar_check(L, G, Mode.IDEAL)


def check_pair(L: LieAlgebra, A: ComplexFuzzySet, mode: Mode, x: Sequence[int], y: Sequence[int]) -> CheckResult:
    """Evaluate the closure conditions at one given pair (every nonzero scalar for x)."""
    _require_on(L, A)
    homogeneity = is_homogeneous(A)
    if not homogeneity.ok:
        return homogeneity
    x, y = L.coerce(x), L.coerce(y)
    mx, my = A[x], A[y]

    for a in range(1, L.p):
        z = scale(L, a, x)
        if not A[z] >= mx:
            return CheckResult.failed(
                Condition.SCALAR,
                (x,),
                scalar=a,
                detail={"result": list(z), "value": mx.to_dict(), "result_value": A[z].to_dict()},
            )

    bound = join(mx, my) if mode == Mode.IDEAL else meet(mx, my)
    for condition, z, needed in (
        (Condition.SUM, add(L, x, y), meet(mx, my)),
        (Condition.BRACKET, bracket(L, x, y), bound),
    ):
        if not A[z] >= needed:
            return CheckResult.failed(
                condition,
                (x, y),
                detail={
                    "result": list(z),
                    "values": [mx.to_dict(), my.to_dict()],
                    "result_value": A[z].to_dict(),
                },
            )
    return CheckResult.passed()


def check_negation_lemma(L: LieAlgebra, A: ComplexFuzzySet) -> CheckResult:
    """
    Consequences of the subalgebra conditions, verified exhaustively:
    mu(x) <= mu(0); mu(-x) = mu(x); mu(x - y) = mu(0) implies mu(x) = mu(y);
    mu(x) < mu(y) implies mu(x - y) = mu(x) = mu(y - x).
    """
    require_hypothesis(HYP_SUBALGEBRA, is_complex_fuzzy_subalgebra(L, A))
    t = L.tables
    _, _, [(R, W)] = encode_sets(A)
    zero = L.index_of(L.zero)

    def le(i, j):
        return (R[i] <= R[j]) & (W[i] <= W[j])

    def eq(i, j):
        return (R[i] == R[j]) & (W[i] == W[j])

    idx = np.arange(L.size)
    xs, ys = idx[:, None], idx[None, :]

    bad = ~le(idx, zero)
    if bad.any():
        x = int(np.flatnonzero(bad)[0])
        return CheckResult.failed(Condition.ZERO_MAXIMAL, (L.element(x),))

    bad = ~eq(t.neg, idx)
    if bad.any():
        x = int(np.flatnonzero(bad)[0])
        return CheckResult.failed(Condition.NEGATION, (L.element(x),), detail={"negative": list(L.element(t.neg[x]))})

    diff = t.sub
    hit = _first_pair(eq(diff, zero) & ~eq(xs, ys))
    if hit:
        x, y = hit
        return CheckResult.failed(Condition.DIFFERENCE_AT_ZERO, (L.element(x), L.element(y)))

    strictly_below = le(xs, ys) & ~eq(xs, ys)
    hit = _first_pair(strictly_below & ~(eq(diff, xs) & eq(diff.T, xs)))
    if hit:
        x, y = hit
        return CheckResult.failed(Condition.STRICT_DIFFERENCE, (L.element(x), L.element(y)))

    return CheckResult.passed()


def check_decomposition_theorem(L: LieAlgebra, A: ComplexFuzzySet) -> CheckResult:
    """A is a complex fuzzy subalgebra (ideal) iff its amplitude part is a fuzzy one and its phase part a pi-fuzzy one."""
    _require_on(L, A)
    homogeneity = is_homogeneous(A)
    if not homogeneity.ok:
        return homogeneity
    F, G = decompose(A)

    sides = {}
    for mode, complex_check, real_check, pi_check in (
        (Mode.SUBALGEBRA, is_complex_fuzzy_subalgebra, is_real_fuzzy_subalgebra, is_pi_fuzzy_subalgebra),
        (Mode.IDEAL, is_complex_fuzzy_ideal, is_real_fuzzy_ideal, is_pi_fuzzy_ideal),
    ):
        whole = complex_check(L, A).ok
        amplitude, phase = real_check(L, F).ok, pi_check(L, G).ok
        if whole != (amplitude and phase):
            logger.error(f"Decomposition disagreement on '{A.name}' ({mode.value})")
            return CheckResult.failed(
                Condition.DECOMPOSITION,
                detail={"mode": mode.value, "complex": whole, "amplitude": amplitude, "phase": phase},
            )
        sides[mode.value] = whole
    return CheckResult.passed(**sides)


@dataclass(frozen=True)
class LevelSpec:
    """(alpha, beta) cut parameters; strict flags select > instead of >= per component."""

    alpha: Fraction
    beta_over_pi: Fraction
    strict_r: bool = False
    strict_w: bool = False

    def __post_init__(self):
        alpha, beta = to_fraction(self.alpha), to_fraction(self.beta_over_pi)
        if not 0 <= alpha <= 1:
            raise MembershipError(f"Cut amplitude {alpha} outside [0, 1]")
        if not 0 <= beta <= 2:
            raise MembershipError(f"Cut phase {beta}*pi outside [0, 2pi]")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta_over_pi", beta)

    @property
    def threshold(self) -> Membership:
        return Membership(self.alpha, self.beta_over_pi)

    def to_dict(self) -> dict:
        return {
            "alpha": format_fraction(self.alpha),
            "beta_over_pi": format_fraction(self.beta_over_pi),
            "strict_r": self.strict_r,
            "strict_w": self.strict_w,
        }


def _select(A: ComplexFuzzySet, keep: Callable[[Membership], bool]) -> CrispSubset:
    return CrispSubset.from_mask(A.algebra, np.array([keep(v) for v in A.values], dtype=bool))


def upper_level(A: ComplexFuzzySet, t: Membership) -> CrispSubset:
    return _select(A, lambda v: v >= t)


def strong_upper_level(A: ComplexFuzzySet, t: Membership) -> CrispSubset:
    """Strict in the partial order: mu(x) >= t and mu(x) != t."""
    return _select(A, lambda v: v > t)


def level_cut(A: ComplexFuzzySet, spec: LevelSpec) -> CrispSubset:
    def keep(v: Membership) -> bool:
        r_ok = v.r > spec.alpha if spec.strict_r else v.r >= spec.alpha
        w_ok = v.w_over_pi > spec.beta_over_pi if spec.strict_w else v.w_over_pi >= spec.beta_over_pi
        return r_ok and w_ok

    return _select(A, keep)


def amplitude_level(A: ComplexFuzzySet, alpha: Rational, strict: bool = False) -> CrispSubset:
    return level_cut(A, LevelSpec(to_fraction(alpha), Fraction(0), strict_r=strict))


def phase_level(A: ComplexFuzzySet, beta_over_pi: Rational, strict: bool = False) -> CrispSubset:
    return level_cut(A, LevelSpec(Fraction(0), to_fraction(beta_over_pi), strict_w=strict))


def image_values(A: ComplexFuzzySet) -> List[Membership]:
    """Distinct membership values, ascending. Raises NotHomogeneousError if two of them are incomparable."""
    values = sorted(A.distinct_values(), key=lambda v: (v.r, v.w_over_pi))
    for lo, hi in zip(values, values[1:]):
        if not lo <= hi:
            raise NotHomogeneousError(is_homogeneous(A))
    return values


def check_level_theorem(L: LieAlgebra, A: ComplexFuzzySet, mode: Mode, strength: Strength) -> CheckResult:
    """The fuzzy predicate holds iff every (strong) upper level at t in Im(mu) is a crisp subalgebra (ideal)."""
    _require_on(L, A)
    homogeneity = is_homogeneous(A)
    if not homogeneity.ok:
        return homogeneity

    fuzzy = complex_predicate(mode)(L, A)
    crisp_check = is_crisp_ideal if mode == Mode.IDEAL else is_crisp_subalgebra
    cut = strong_upper_level if strength == Strength.STRONG else upper_level

    failing_level: Optional[Tuple[Membership, CheckResult]] = None
    for t in image_values(A):
        result = crisp_check(L, cut(A, t))
        if not result.ok:
            failing_level = (t, result)
            break

    levels_ok = failing_level is None
    if fuzzy.ok == levels_ok:
        return CheckResult.passed(fuzzy=fuzzy.ok, levels=levels_ok)

    logger.error(f"Level theorem ({mode.value}/{strength.value}) disagrees on '{A.name}'")
    detail = {"mode": mode.value, "strength": strength.value, "fuzzy": fuzzy.ok, "levels": levels_ok}
    elements: Tuple[Element, ...] = ()
    if failing_level:
        t, result = failing_level
        detail["t"] = t.to_dict()
        elements = result.witness.elements
    return CheckResult.failed(Condition.LEVEL_AGREEMENT, elements, detail=detail)


def _sum_channels(L: LieAlgebra, A: ComplexFuzzySet, B: ComplexFuzzySet):
    """Per channel, the (x, a) matrix of mu_A(a) meet mu_B(x - a)."""
    r_codec, w_codec, [(RA, WA), (RB, WB)] = encode_sets(A, B)
    diff = L.tables.sub
    M_R = np.minimum(RA[None, :], RB[diff])
    M_W = np.minimum(WA[None, :], WB[diff])
    return r_codec, w_codec, M_R, M_W


def fuzzy_sum(L: LieAlgebra, A: ComplexFuzzySet, B: ComplexFuzzySet) -> ComplexFuzzySet:
    """mu_{A+B}(x) = sup over x = a + b of mu_A(a) meet mu_B(b), componentwise."""
    _require_on(L, A, B)
    r_codec, w_codec, M_R, M_W = _sum_channels(L, A, B)
    name = f"{A.name}+{B.name}" if A.name and B.name else ""
    return decode_set(L, r_codec, w_codec, M_R.max(axis=1), M_W.max(axis=1), name)


def sum_attainment(L: LieAlgebra, A: ComplexFuzzySet, B: ComplexFuzzySet) -> CheckResult:
    """OK iff for every x the componentwise supremum is the meet at one single decomposition."""
    _require_on(L, A, B)
    _, _, M_R, M_W = _sum_channels(L, A, B)
    attained = ((M_R == M_R.max(axis=1)[:, None]) & (M_W == M_W.max(axis=1)[:, None])).any(axis=1)
    if not attained.all():
        x = int(np.flatnonzero(~attained)[0])
        return CheckResult.failed(Condition.SUM_ATTAINMENT, (L.element(x),))
    return CheckResult.passed()


def conclude(result: CheckResult, theorem: str, dropped: Sequence[str]) -> CheckResult:
    if not result.ok and not dropped:
        logger.error(f"Theorem '{theorem}' violated: {result.to_dict()}")
    return CheckResult(result.verdict, result.witness, {**result.details, "theorem": theorem})


def check_sum_ideal_theorem(
    L: LieAlgebra, A: ComplexFuzzySet, B: ComplexFuzzySet, dropped: Sequence[str] = ()
) -> CheckResult:
    """
    For complex fuzzy ideals A and B homogeneous with each other, A + B is a
    homogeneous complex fuzzy ideal. Mutual homogeneity is required in both
    directions; with only one direction the sum can lose homogeneity.
    """
    _require_on(L, A, B)
    require_hypothesis(HYP_IDEAL, is_complex_fuzzy_ideal(L, A))
    require_hypothesis(HYP_IDEAL, is_complex_fuzzy_ideal(L, B))
    require_hypothesis(HYP_MUTUAL_HOMOGENEITY, are_mutually_homogeneous([A, B]), dropped)
    return conclude(is_complex_fuzzy_ideal(L, fuzzy_sum(L, A, B)), "sum-ideal", dropped)


def check_intersection_theorems(
    L: LieAlgebra, sets: Sequence[ComplexFuzzySet], mode: Mode, dropped: Sequence[str] = ()
) -> CheckResult:
    """The intersection of a family of mutually homogeneous subalgebras (ideals) is one too."""
    _require_on(L, *sets)
    predicate = complex_predicate(mode)
    hypothesis = HYP_IDEAL if mode == Mode.IDEAL else HYP_SUBALGEBRA
    for A in sets:
        require_hypothesis(hypothesis, predicate(L, A))
    require_hypothesis(HYP_MUTUAL_HOMOGENEITY, are_mutually_homogeneous(sets), dropped)
    return conclude(predicate(L, intersect_family(sets)), f"intersection-{mode.value}", dropped)


def check_pi_scaling(L: LieAlgebra, F: RealFuzzySet) -> CheckResult:
    """F is a fuzzy subalgebra (ideal) iff 2 pi F is a pi-fuzzy subalgebra (ideal)."""
    G = to_pi_fuzzy(F)
    sides = {}
    for mode, real_check, pi_check in (
        (Mode.SUBALGEBRA, is_real_fuzzy_subalgebra, is_pi_fuzzy_subalgebra),
        (Mode.IDEAL, is_real_fuzzy_ideal, is_pi_fuzzy_ideal),
    ):
        real, scaled = real_check(L, F).ok, pi_check(L, G).ok
        if real != scaled:
            logger.error(f"Pi-scaling disagreement on '{F.name}' ({mode.value})")
            return CheckResult.failed(Condition.PI_SCALING, detail={"mode": mode.value, "real": real, "pi": scaled})
        sides[mode.value] = real
    return CheckResult.passed(**sides)


def check_ideal_implies_subalgebra(L: LieAlgebra, A: ComplexFuzzySet) -> CheckResult:
    ideal = is_complex_fuzzy_ideal(L, A)
    if ideal.verdict == Verdict.NOT_HOMOGENEOUS:
        return ideal
    subalgebra = is_complex_fuzzy_subalgebra(L, A)
    if ideal.ok and not subalgebra.ok:
        logger.error(f"Ideal '{A.name}' fails the subalgebra conditions")
        return CheckResult(Verdict.FAIL, subalgebra.witness, {"theorem": "ideal-implies-subalgebra"})
    return CheckResult.passed(ideal=ideal.ok, subalgebra=subalgebra.ok)


def check_sum_commutative(L: LieAlgebra, A: ComplexFuzzySet, B: ComplexFuzzySet) -> CheckResult:
    return compare_sets(fuzzy_sum(L, A, B), fuzzy_sum(L, B, A))


@dataclass(frozen=True)
class ChainSpec:
    """Nested crisp subalgebras (ideals) S_1 < ... < S_k with strictly decreasing values m_1 > ... > m_k."""

    chain: Tuple[CrispSubset, ...]
    values: Tuple[Membership, ...]
    mode: Mode = Mode.SUBALGEBRA

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))
        object.__setattr__(self, "values", tuple(self.values))


def validate_chain(L: LieAlgebra, spec: ChainSpec):
    """Raise ChainError unless the spec generates a homogeneous set satisfying its mode's predicate."""
    if not spec.chain:
        raise ChainError("Chain is empty")
    if len(spec.chain) != len(spec.values):
        raise ChainError(f"Chain has {len(spec.chain)} members but {len(spec.values)} values")

    crisp_check = is_crisp_ideal if spec.mode == Mode.IDEAL else is_crisp_subalgebra
    for i, S in enumerate(spec.chain):
        if S.algebra != L:
            raise ChainError(f"Chain member {i + 1} lives on '{S.algebra.name}', not on '{L.name}'")
        if not len(S):
            raise ChainError(f"Chain member {i + 1} is empty")
        result = crisp_check(L, S)
        if not result.ok:
            raise ChainError(f"Chain member {i + 1} is not a crisp {spec.mode.value}: {result.witness.to_dict()}")
        if i and not spec.chain[i - 1] < S:
            raise ChainError(f"Chain member {i} is not a proper subset of member {i + 1}")

    for i, (hi, lo) in enumerate(zip(spec.values, spec.values[1:])):
        # Both components must drop, otherwise the result is not homogeneous
        if not (hi.r > lo.r and hi.w_over_pi > lo.w_over_pi):
            raise ChainError(f"Values {i + 1} and {i + 2} are not strictly decreasing in both components")

    last = spec.values[-1]
    if len(spec.chain[-1]) < L.size and last != ZERO and not (last.r > 0 and last.w_over_pi > 0):
        raise ChainError(f"Last value {last} is neither 0 nor strictly above 0 in both components")


def generate_from_chain(L: LieAlgebra, spec: ChainSpec, name: str = "") -> ComplexFuzzySet:
    """mu(x) = m_i for the smallest i with x in S_i, and 0 outside the last member."""
    validate_chain(L, spec)
    values = [ZERO] * L.size
    assigned = np.zeros(L.size, dtype=bool)
    for S, m in zip(spec.chain, spec.values):
        fresh = S.mask() & ~assigned
        for i in np.flatnonzero(fresh):
            values[int(i)] = m
        assigned |= fresh
    return ComplexFuzzySet(L, tuple(values), name)


