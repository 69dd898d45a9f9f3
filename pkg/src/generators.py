"""
Seeded random instances for the verification suite and the counterexample probe.

Valid instances are built from chains of crisp subalgebras (ideals) found by
exhaustive subspace search, so every generated set satisfies its theorem's
hypotheses by construction. Values come from small-denominator grids.
"""

import hashlib
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .cfla import ChainSpec, generate_from_chain
from .cfuzzy import ZERO, ComplexFuzzySet, Membership, RealFuzzySet
from .config import settings
from .homs import make_catalog_hom
from .lie_core import CrispSubset, LieAlgebra, LieHom, crisp_ideals, crisp_subalgebras, make_catalog_algebra
from .models import CflaError, Mode

logger = logging.getLogger(__name__)

# Catalog algebras with at most 27 elements
DEFAULT_CATALOG = [
    "abelian-2/3",
    "abelian-3/3",
    "heisenberg3/3",
    "cross3/3",
    "sl2/3",
    "affine2/3",
    "affine2/5",
    "abelian-1/5",
]

DEFAULT_HOMS = [
    "identity:cross3/3",
    "identity:heisenberg3/3",
    "heisenberg3->abelian-2/3",
    "abelian-3->abelian-2/3",
    "affine2->abelian-1/3",
    "abelian-1->abelian-2/3",
    "abelian-2->abelian-3/3",
    "heisenberg3->center/3",
]


def split_entry(entry: str) -> Tuple[str, int]:
    """ "name/p" -> (name, p)."""
    name, sep, p = entry.rpartition("/")
    if not sep or not name:
        raise ValueError(f"catalog entry '{entry}' is not of the form name/p")
    try:
        return name, int(p)
    except ValueError:
        raise ValueError(f"catalog entry '{entry}' has a non-integer prime")


class GenConfig(BaseModel):
    """Seed, trial count, catalog and value grids for generated instances."""

    seed: int = Field(default_factory=lambda: settings.default_seed)
    trials: int = Field(default_factory=lambda: settings.default_trials)
    catalog: List[str] = Field(default_factory=lambda: list(DEFAULT_CATALOG))
    homs: List[str] = Field(default_factory=lambda: list(DEFAULT_HOMS))
    max_p: int = Field(default_factory=lambda: settings.max_prime)
    max_dim: int = Field(default_factory=lambda: settings.max_dim)
    r_denominator: int = Field(default_factory=lambda: settings.r_denominator)
    w_denominator: int = Field(default_factory=lambda: settings.w_denominator)
    max_chain_length: int = Field(default_factory=lambda: settings.max_chain_length)
    theorems: Optional[List[str]] = None

    @field_validator("trials")
    @classmethod
    def non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("trials must be >= 0")
        return v

    @field_validator("r_denominator", "w_denominator", "max_chain_length")
    @classmethod
    def positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be >= 1")
        return v

    @model_validator(mode="after")
    def within_bounds(self) -> "GenConfig":
        if self.max_p > settings.max_prime or self.max_dim > settings.max_dim:
            raise ValueError(f"bounds exceed the supported p <= {settings.max_prime}, n <= {settings.max_dim}")
        if not self.catalog:
            raise ValueError("catalog must name at least one algebra")
        for entry in self.catalog:
            name, p = split_entry(entry)
            self._check_algebra(entry, name, p)
        for entry in self.homs:
            name, p = split_entry(entry)
            try:
                phi = make_catalog_hom(name, p)
            except CflaError as e:
                raise ValueError(f"hom '{entry}': {e}")
            self._check_algebra(entry, phi.source.name, p)
            self._check_algebra(entry, phi.target.name, p)
        return self

    def _check_algebra(self, entry: str, name: str, p: int):
        if p > self.max_p:
            raise ValueError(f"'{entry}': p = {p} exceeds max_p = {self.max_p}")
        try:
            L = make_catalog_algebra(name, p)
        except CflaError as e:
            raise ValueError(f"'{entry}': {e}")
        if L.dim > self.max_dim:
            raise ValueError(f"'{entry}': dimension {L.dim} exceeds max_dim = {self.max_dim}")
        if L.size > settings.carrier_budget:
            raise ValueError(f"'{entry}': {L.size} elements exceed the carrier budget {settings.carrier_budget}")

    def algebras(self) -> List[LieAlgebra]:
        return [make_catalog_algebra(*split_entry(entry)) for entry in self.catalog]

    def hom_list(self) -> List[LieHom]:
        return [make_catalog_hom(*split_entry(entry)) for entry in self.homs]


def trial_rng(seed: int, label: str, index: int) -> np.random.Generator:
    """Independent stream per (seed, theorem, trial) so trials can run in any order."""
    digest = hashlib.md5(f"{seed}:{label}:{index}".encode()).hexdigest()
    return np.random.default_rng(int(digest[:16], 16))


def pick(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(len(items)))]


def value_chain(rng: np.random.Generator, k: int, config: GenConfig) -> List[Membership]:
    """k grid values, strictly decreasing in both components and strictly positive."""
    k = max(1, min(k, config.r_denominator, 2 * config.w_denominator))
    rs = sorted(rng.choice(np.arange(1, config.r_denominator + 1), size=k, replace=False), reverse=True)
    ws = sorted(rng.choice(np.arange(1, 2 * config.w_denominator + 1), size=k, replace=False), reverse=True)
    return [
        Membership(Fraction(int(r), config.r_denominator), Fraction(int(w), config.w_denominator))
        for r, w in zip(rs, ws)
    ]


def random_chain(rng: np.random.Generator, L: LieAlgebra, mode: Mode, length: int) -> List[CrispSubset]:
    """A strictly increasing chain of crisp subalgebras (ideals), at most `length` long."""
    candidates = crisp_ideals(L) if mode == Mode.IDEAL else crisp_subalgebras(L)
    chain = [pick(rng, candidates)]
    while len(chain) < length:
        bigger = [S for S in candidates if chain[-1] < S]
        if not bigger:
            break
        chain.append(pick(rng, bigger))
    return chain


def chain_set(
    rng: np.random.Generator,
    L: LieAlgebra,
    mode: Mode,
    config: GenConfig,
    name: str = "A",
    pool: Optional[List[Membership]] = None,
) -> ComplexFuzzySet:
    """
    A complex fuzzy subalgebra (ideal) from a random chain. With a pool, the
    values are an order-preserving selection from it, so sets drawn from one
    pool are homogeneous with each other.
    """
    length = int(rng.integers(1, config.max_chain_length + 1))
    if pool is None:
        pool = value_chain(rng, length, config)
    chain = random_chain(rng, L, mode, min(length, len(pool)))
    picks = sorted(rng.choice(len(pool), size=len(chain), replace=False))
    spec = ChainSpec(tuple(chain), tuple(pool[int(i)] for i in picks), mode)
    return generate_from_chain(L, spec, name)


def perturbed_set(rng: np.random.Generator, L: LieAlgebra, config: GenConfig, name: str = "A") -> ComplexFuzzySet:
    """A homogeneous set that usually breaks closure: a chain set with a few values moved."""
    pool = value_chain(rng, config.max_chain_length, config) + [ZERO]
    values = list(chain_set(rng, L, Mode.SUBALGEBRA, config, name, pool=pool[:-1]).values)
    for i in rng.choice(L.size, size=min(L.size, int(rng.integers(1, 4))), replace=False):
        values[int(i)] = pick(rng, pool)
    return ComplexFuzzySet(L, tuple(values), name)


def homogeneous_set(rng: np.random.Generator, L: LieAlgebra, config: GenConfig, name: str = "A") -> ComplexFuzzySet:
    """Half chain-generated (valid subalgebra or ideal), half perturbed."""
    if rng.random() < 0.5:
        return chain_set(rng, L, pick(rng, list(Mode)), config, name)
    return perturbed_set(rng, L, config, name)


def mutually_homogeneous_family(
    rng: np.random.Generator, L: LieAlgebra, mode: Mode, config: GenConfig, count: int
) -> List[ComplexFuzzySet]:
    """Chain sets whose values all come from one shared pool."""
    pool = value_chain(rng, 2 * config.max_chain_length, config)
    names = ["A", "B"] if count == 2 else [f"A{i + 1}" for i in range(count)]
    return [chain_set(rng, L, mode, config, name, pool=pool) for name in names]


def independent_family(
    rng: np.random.Generator, L: LieAlgebra, mode: Mode, config: GenConfig, count: int
) -> List[ComplexFuzzySet]:
    """Chain sets with unrelated value chains; usually not homogeneous with each other."""
    names = ["A", "B"] if count == 2 else [f"A{i + 1}" for i in range(count)]
    return [chain_set(rng, L, mode, config, name) for name in names]


def real_set(rng: np.random.Generator, L: LieAlgebra, config: GenConfig, name: str = "F") -> RealFuzzySet:
    """Half amplitude parts of chain sets, half arbitrary grid values."""
    if rng.random() < 0.5:
        A = chain_set(rng, L, pick(rng, list(Mode)), config, name)
        return RealFuzzySet(L, tuple(v.r for v in A.values), name)
    grid = rng.integers(0, config.r_denominator + 1, size=L.size)
    return RealFuzzySet(L, tuple(Fraction(int(v), config.r_denominator) for v in grid), name)


def as_amplitude_set(F: RealFuzzySet) -> ComplexFuzzySet:
    """Carry a fuzzy set inside a scenario as a complex one with zero phase."""
    return ComplexFuzzySet(F.algebra, tuple(Membership(v, Fraction(0)) for v in F.values), F.name)


def cut_grid(rng: np.random.Generator, B: ComplexFuzzySet, points: int = 5) -> List[Tuple[Fraction, Fraction]]:
    """points x points (alpha, beta) pairs from Im(B), the interval ends, and midpoints between them."""

    def axis(values, top) -> List[Fraction]:
        stops = sorted(set(values) | {Fraction(0), Fraction(top)})
        # split the widest gap until the axis is full
        while len(stops) < points:
            i = max(range(len(stops) - 1), key=lambda k: stops[k + 1] - stops[k])
            stops.insert(i + 1, (stops[i] + stops[i + 1]) / 2)
        if len(stops) > points:
            stops = [stops[int(i)] for i in sorted(rng.choice(len(stops), size=points, replace=False))]
        return stops

    alphas = axis([v.r for v in B.values], 1)
    betas = axis([v.w_over_pi for v in B.values], 2)
    return [(a, b) for a in alphas for b in betas]
