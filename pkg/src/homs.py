"""
Lie algebra homomorphisms acting on complex fuzzy sets.

preimage: mu_{phi^-1(B)}(x) = mu_B(phi(x)).
image:    mu_{phi(A)}(y) = join of mu_A over the fiber phi^-1(y), and 0 when the fiber is empty.
"""

import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .cfla import (
    HYP_IDEAL,
    HYP_MUTUAL_HOMOGENEITY,
    HYP_SUBALGEBRA,
    LevelSpec,
    conclude,
    fuzzy_sum,
    is_complex_fuzzy_ideal,
    is_complex_fuzzy_subalgebra,
    level_cut,
    require_hypothesis,
)
from .cfuzzy import ComplexFuzzySet, are_mutually_homogeneous, compare_sets, decode_set, encode_sets
from .lie_core import LieAlgebra, LieHom, bracket, make_catalog_algebra
from .models import (
    CarrierMismatchError,
    CheckResult,
    Condition,
    HomError,
    UnknownTheoremError,
)

logger = logging.getLogger(__name__)

HYP_HOMOMORPHISM = "homomorphism"
HYP_SURJECTIVITY = "surjectivity"

HOM_THEOREMS = ("preimage-subalgebra", "preimage-ideal", "image-subalgebra", "image-ideal", "sum-commutation")

# name -> (source, target, matrix with phi(x) = M x)
_CATALOG_HOMS: Dict[str, Tuple[str, str, list]] = {
    "heisenberg3->abelian-2": ("heisenberg3", "abelian-2", [[1, 0, 0], [0, 1, 0]]),
    "abelian-3->abelian-2": ("abelian-3", "abelian-2", [[1, 0, 0], [0, 1, 0]]),
    "abelian-1->abelian-2": ("abelian-1", "abelian-2", [[1], [0]]),
    "abelian-2->abelian-3": ("abelian-2", "abelian-3", [[1, 0], [0, 1], [0, 0]]),
    "affine2->abelian-1": ("affine2", "abelian-1", [[0, 1]]),
    "heisenberg3->center": ("heisenberg3", "heisenberg3", [[0, 0, 0], [0, 0, 0], [1, 0, 0]]),
}

CATALOG_HOM_NAMES = tuple(_CATALOG_HOMS)


def make_catalog_hom(name: str, p: int) -> LieHom:
    """Catalog homomorphisms; "identity:<algebra>" builds the identity on any catalog algebra."""
    if name.startswith("identity:"):
        return LieHom.identity(make_catalog_algebra(name.split(":", 1)[1], p))
    if name not in _CATALOG_HOMS:
        raise HomError(f"Unknown catalog hom: '{name}'")
    source, target, matrix = _CATALOG_HOMS[name]
    return LieHom(name, make_catalog_algebra(source, p), make_catalog_algebra(target, p), matrix)


def validate_hom(phi: LieHom) -> CheckResult:
    """Bracket preservation on all basis pairs; linearity holds by construction."""
    S = phi.source
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            ei, ej = S.basis(i), S.basis(j)
            mapped = phi.apply(bracket(S, ei, ej))
            expected = bracket(phi.target, phi.apply(ei), phi.apply(ej))
            if mapped != expected:
                return CheckResult.failed(
                    Condition.BRACKET_PRESERVATION,
                    (ei, ej),
                    detail={"basis_indices": [i + 1, j + 1], "image_of_bracket": list(mapped), "bracket_of_images": list(expected)},
                )
    return CheckResult.passed(surjective=phi.is_surjective, rank=phi.rank)


def _require_set(A: ComplexFuzzySet, L: LieAlgebra, side: str):
    if A.algebra != L:
        raise CarrierMismatchError(f"Set '{A.name}' lives on '{A.algebra.name}', hom {side} is '{L.name}'")


def preimage_cfs(phi: LieHom, B: ComplexFuzzySet) -> ComplexFuzzySet:
    _require_set(B, phi.target, "target")
    name = f"{phi.name}^-1({B.name})" if B.name else ""
    return ComplexFuzzySet(phi.source, tuple(B.values[int(j)] for j in phi.images), name)


def image_cfs(phi: LieHom, A: ComplexFuzzySet) -> ComplexFuzzySet:
    _require_set(A, phi.source, "source")
    r_codec, w_codec, [(R, W)] = encode_sets(A)
    # Empty fibers keep the code of 0
    out_r = np.full(phi.target.size, r_codec.zero, dtype=np.intp)
    out_w = np.full(phi.target.size, w_codec.zero, dtype=np.intp)
    np.maximum.at(out_r, phi.images, R)
    np.maximum.at(out_w, phi.images, W)
    name = f"{phi.name}({A.name})" if A.name else ""
    return decode_set(phi.target, r_codec, w_codec, out_r, out_w, name)


def _first_difference(L: LieAlgebra, left: np.ndarray, right: np.ndarray, detail: dict) -> Optional[CheckResult]:
    diff = np.flatnonzero(left != right)
    if not len(diff):
        return None
    i = int(diff[0])
    return CheckResult.failed(Condition.SET_EQUALITY, (L.element(i),), detail={**detail, "left": bool(left[i]), "right": bool(right[i])})


def check_hom_theorems(
    phi: LieHom,
    which: str,
    A: Optional[ComplexFuzzySet] = None,
    B: Optional[ComplexFuzzySet] = None,
    dropped: Sequence[str] = (),
) -> CheckResult:
    """
    Preimage theorems take B on the target; image theorems take A on the
    source; sum-commutation takes A and B, both on the source.
    Surjectivity and mutual homogeneity may be dropped for probing.
    """
    if which not in HOM_THEOREMS:
        raise UnknownTheoremError(f"Unknown hom theorem: '{which}'")
    require_hypothesis(HYP_HOMOMORPHISM, validate_hom(phi))
    src, tgt = phi.source, phi.target

    if which.startswith("preimage-"):
        if B is None:
            raise CarrierMismatchError(f"'{which}' needs a set on the target")
        if which == "preimage-ideal":
            require_hypothesis(HYP_IDEAL, is_complex_fuzzy_ideal(tgt, B))
            result = is_complex_fuzzy_ideal(src, preimage_cfs(phi, B))
        else:
            require_hypothesis(HYP_SUBALGEBRA, is_complex_fuzzy_subalgebra(tgt, B))
            result = is_complex_fuzzy_subalgebra(src, preimage_cfs(phi, B))
        return conclude(result, which, dropped)

    if A is None:
        raise CarrierMismatchError(f"'{which}' needs a set on the source")
    surjective = CheckResult.passed() if phi.is_surjective else CheckResult.failed(
        Condition.SURJECTIVITY, detail={"rank": phi.rank, "target_dim": tgt.dim}
    )
    require_hypothesis(HYP_SURJECTIVITY, surjective, dropped)

    if which == "image-ideal":
        require_hypothesis(HYP_IDEAL, is_complex_fuzzy_ideal(src, A))
        return conclude(is_complex_fuzzy_ideal(tgt, image_cfs(phi, A)), which, dropped)
    if which == "image-subalgebra":
        require_hypothesis(HYP_SUBALGEBRA, is_complex_fuzzy_subalgebra(src, A))
        return conclude(is_complex_fuzzy_subalgebra(tgt, image_cfs(phi, A)), which, dropped)

    if B is None:
        raise CarrierMismatchError("'sum-commutation' needs two sets on the source")
    require_hypothesis(HYP_MUTUAL_HOMOGENEITY, are_mutually_homogeneous([A, B]), dropped)
    left = image_cfs(phi, fuzzy_sum(src, A, B))
    right = fuzzy_sum(tgt, image_cfs(phi, A), image_cfs(phi, B))
    return conclude(compare_sets(left, right), which, dropped)


def check_levelcut_commutation(phi: LieHom, B: ComplexFuzzySet, spec: LevelSpec) -> CheckResult:
    """Crisp preimage of the cut of B equals the cut of the fuzzy preimage of B."""
    require_hypothesis(HYP_HOMOMORPHISM, validate_hom(phi))
    cut = level_cut(B, spec).mask()
    left = cut[phi.images]
    right = level_cut(preimage_cfs(phi, B), spec).mask()
    failure = _first_difference(phi.source, left, right, {"spec": spec.to_dict()})
    if failure:
        logger.error(f"Level-cut commutation fails for '{phi.name}' at {spec.to_dict()}")
        return failure
    return CheckResult.passed(size=int(left.sum()))


def check_image_of_preimage(phi: LieHom, B: ComplexFuzzySet) -> CheckResult:
    """image(preimage(B)) agrees with B at every point of phi(L)."""
    require_hypothesis(HYP_HOMOMORPHISM, validate_hom(phi))
    back = image_cfs(phi, preimage_cfs(phi, B))
    for j in np.unique(phi.images):
        j = int(j)
        if back.values[j] != B.values[j]:
            logger.error(f"Image of preimage differs from '{B.name}' at {phi.target.element(j)}")
            return CheckResult.failed(
                Condition.SET_EQUALITY,
                (phi.target.element(j),),
                detail={"left": back.values[j].to_dict(), "right": B.values[j].to_dict()},
            )
    return CheckResult.passed(image_size=int(len(np.unique(phi.images))))
