"""
Finite-dimensional Lie algebras over prime fields.

An algebra is given by structure constants c[i][j][k] with
[e_i, e_j] = sum_k c[i][j][k] e_k. The carrier is the full set of p**n
coordinate vectors, enumerated lexicographically, so every predicate can be
decided exhaustively with index tables for +, scaling and the bracket.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .cache import CacheLayer
from .config import settings
from .models import (
    AlgebraError,
    BudgetExceededError,
    CarrierMismatchError,
    CheckResult,
    Condition,
    Element,
    HomError,
)

logger = logging.getLogger(__name__)

Constants = Tuple[Tuple[Tuple[int, ...], ...], ...]

# Shared across algebras with identical (p, n, constants)
_table_cache = CacheLayer(max_entries=settings.table_cache_size)

CATALOG_NAMES = ("abelian-1", "abelian-2", "abelian-3", "abelian-4", "cross3", "heisenberg3", "sl2", "affine2")


def table_cache_stats() -> Dict[str, object]:
    return _table_cache.stats()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class FieldPrime:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not _is_prime(int(self.p)):
            raise AlgebraError(f"Field modulus {self.p} is not prime")
        if self.p > settings.max_prime:
            raise AlgebraError(f"Field modulus {self.p} exceeds the supported maximum {settings.max_prime}")
        object.__setattr__(self, "p", int(self.p))

    @property
    def scalars(self) -> range:
        return range(self.p)


@dataclass(frozen=True)
class CarrierTables:
    """Index tables over the lexicographically enumerated carrier."""

    coords: np.ndarray  # (N, n) coordinates
    add: np.ndarray  # (N, N) index of x + y
    neg: np.ndarray  # (N,) index of -x
    scale: np.ndarray  # (p, N) index of a * x
    bracket: np.ndarray  # (N, N) index of [x, y]

    @cached_property
    def sub(self) -> np.ndarray:
        """(N, N) index of x - y."""
        return self.add[:, self.neg]


def _check_dim(n: int):
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= settings.max_dim:
        raise AlgebraError(f"Dimension {n} outside the supported range 1..{settings.max_dim}")


def normalize_constants(c, p: int, n: int) -> Constants:
    """Coerce a nested n x n x n integer table into reduced, hashable form."""
    try:
        arr = np.array(c, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise AlgebraError(f"Structure constants are not an integer table: {e}")
    if arr.shape != (n, n, n):
        raise AlgebraError(f"Structure constants have shape {arr.shape}, expected {(n, n, n)}")
    arr = arr % p
    return tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in arr)


def _basis(n: int, i: int) -> Element:
    return tuple(1 if k == i else 0 for k in range(n))


def validate_algebra(c, p: int, n: int) -> CheckResult:
    """
    Check the Lie axioms for a structure-constant table.

    Alternating ([e_i, e_i] = 0) is checked before antisymmetry because in
    characteristic 2 antisymmetry alone does not force it. The Jacobi identity
    is checked on all basis triples; witnesses use 1-based basis indices.
    """
    FieldPrime(p)
    _check_dim(n)
    table = np.array(normalize_constants(c, p, n), dtype=np.int64)

    for i in range(n):
        if table[i, i].any():
            return CheckResult.failed(
                Condition.ALTERNATING,
                (_basis(n, i),),
                detail={"basis_indices": [i + 1], "bracket": table[i, i].tolist()},
            )

    for i, j in itertools.combinations(range(n), 2):
        if ((table[i, j] + table[j, i]) % p).any():
            return CheckResult.failed(
                Condition.ANTISYMMETRY,
                (_basis(n, i), _basis(n, j)),
                detail={"basis_indices": [i + 1, j + 1]},
            )

    # [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
    jacobi = (
        np.einsum("jkm,iml->ijkl", table, table)
        + np.einsum("kim,jml->ijkl", table, table)
        + np.einsum("ijm,kml->ijkl", table, table)
    ) % p
    nonzero = np.argwhere(jacobi.any(axis=3))
    if len(nonzero):
        i, j, k = (int(v) for v in nonzero[0])
        return CheckResult.failed(
            Condition.JACOBI,
            (_basis(n, i), _basis(n, j), _basis(n, k)),
            detail={"basis_indices": [i + 1, j + 1, k + 1], "cyclic_sum": jacobi[i, j, k].tolist()},
        )

    return CheckResult.passed()


@dataclass(frozen=True)
class LieAlgebra:
    """A Lie algebra over F_p of dimension n, defined by structure constants."""

    name: str
    field: FieldPrime
    dim: int
    constants: Constants

    @classmethod
    def create(cls, name: str, p: int, n: int, constants) -> "LieAlgebra":
        """Build and validate; raises AlgebraError naming the violated axiom."""
        result = validate_algebra(constants, p, n)
        if not result.ok:
            witness = result.witness
            raise AlgebraError(
                f"Algebra '{name}' violates the {witness.condition.value} axiom "
                f"at basis indices {witness.detail.get('basis_indices')}"
            )
        return cls(name, FieldPrime(p), int(n), normalize_constants(constants, p, n))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def size(self) -> int:
        return self.p**self.dim

    @property
    def zero(self) -> Element:
        return (0,) * self.dim

    @property
    def cache_key(self) -> str:
        return _table_cache.make_key(self.p, self.dim, self.constants)

    @property
    def tables(self) -> CarrierTables:
        """Index tables for the carrier, built once per (p, n, constants)."""
        _check_budget(self)
        return _table_cache.get_or_build(self.cache_key, lambda: _build_tables(self))

    @property
    def carrier(self) -> List[Element]:
        return enumerate_carrier(self)

    def coerce(self, x: Sequence[int]) -> Element:
        """Reduce a coordinate sequence mod p, checking its length."""
        if len(x) != self.dim:
            raise CarrierMismatchError(f"Element {tuple(x)} has length {len(x)}, algebra '{self.name}' has dimension {self.dim}")
        return tuple(int(v) % self.p for v in x)

    def index_of(self, x: Sequence[int]) -> int:
        index = 0
        for v in self.coerce(x):
            index = index * self.p + v
        return index

    def element(self, index: int) -> Element:
        coords = []
        for _ in range(self.dim):
            index, v = divmod(index, self.p)
            coords.append(v)
        return tuple(reversed(coords))

    def basis(self, i: int) -> Element:
        """The 0-based i-th basis vector."""
        return _basis(self.dim, i)


def _check_budget(L: LieAlgebra, budget: Optional[int] = None):
    budget = settings.carrier_budget if budget is None else budget
    if L.size > budget:
        raise BudgetExceededError(f"Carrier of '{L.name}' has {L.size} elements, budget is {budget}")


def _build_tables(L: LieAlgebra) -> CarrierTables:
    p, n = L.p, L.dim
    logger.debug(f"Building carrier tables for '{L.name}' over F_{p} ({L.size} elements)")

    coords = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)

    def encode(v: np.ndarray) -> np.ndarray:
        return ((v % p) @ weights).astype(np.intp)

    c = np.array(L.constants, dtype=np.int64)
    return CarrierTables(
        coords=coords,
        add=encode(coords[:, None, :] + coords[None, :, :]),
        neg=encode(-coords),
        scale=encode(np.arange(p, dtype=np.int64)[:, None, None] * coords[None, :, :]),
        bracket=encode(np.einsum("ai,bj,ijk->abk", coords, coords, c)),
    )


def bracket(L: LieAlgebra, x: Sequence[int], y: Sequence[int]) -> Element:
    """Bilinear extension of the structure constants."""
    x, y = L.coerce(x), L.coerce(y)
    c = np.array(L.constants, dtype=np.int64)
    return tuple(int(v) for v in np.einsum("i,j,ijk->k", np.array(x), np.array(y), c) % L.p)


def add(L: LieAlgebra, x: Sequence[int], y: Sequence[int]) -> Element:
    return tuple((a + b) % L.p for a, b in zip(L.coerce(x), L.coerce(y)))


def scale(L: LieAlgebra, alpha: int, x: Sequence[int]) -> Element:
    return tuple((alpha * a) % L.p for a in L.coerce(x))


def negate(L: LieAlgebra, x: Sequence[int]) -> Element:
    return scale(L, -1, x)


def enumerate_carrier(L: LieAlgebra, budget: Optional[int] = None) -> List[Element]:
    """All p**n elements in lexicographic coordinate order."""
    _check_budget(L, budget)
    return [tuple(v) for v in itertools.product(range(L.p), repeat=L.dim)]


@dataclass(frozen=True)
class CrispSubset:
    """An explicit finite set of carrier elements; subspace structure is checked, not assumed."""

    algebra: LieAlgebra
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.algebra.coerce(x) for x in self.members))

    @classmethod
    def of(cls, L: LieAlgebra, elements: Iterable[Sequence[int]]) -> "CrispSubset":
        return cls(L, frozenset(tuple(x) for x in elements))

    @classmethod
    def from_mask(cls, L: LieAlgebra, mask: np.ndarray) -> "CrispSubset":
        return cls(L, frozenset(L.element(int(i)) for i in np.flatnonzero(mask)))

    @classmethod
    def whole(cls, L: LieAlgebra) -> "CrispSubset":
        return cls(L, frozenset(enumerate_carrier(L)))

    @classmethod
    def zero(cls, L: LieAlgebra) -> "CrispSubset":
        return cls(L, frozenset([L.zero]))

    def __contains__(self, x) -> bool:
        return tuple(x) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Element]:
        return iter(sorted(self.members))

    def __le__(self, other: "CrispSubset") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "CrispSubset") -> bool:
        return self.members < other.members

    def mask(self) -> np.ndarray:
        m = np.zeros(self.algebra.size, dtype=bool)
        for x in self.members:
            m[self.algebra.index_of(x)] = True
        return m

    def sorted(self) -> List[Element]:
        return sorted(self.members)


def _require_same(L: LieAlgebra, S: CrispSubset):
    if S.algebra != L:
        raise CarrierMismatchError(f"Subset lives on '{S.algebra.name}', not on '{L.name}'")


def _first_pair(bad: np.ndarray) -> Optional[Tuple[int, int]]:
    flat = np.flatnonzero(bad)
    if not len(flat):
        return None
    return tuple(int(v) for v in np.unravel_index(flat[0], bad.shape))


def _subspace_violation(L: LieAlgebra, m: np.ndarray) -> Optional[CheckResult]:
    t = L.tables
    pair = m[:, None] & m[None, :]

    hit = _first_pair(pair & ~m[t.add])
    if hit:
        x, y = hit
        return CheckResult.failed(
            Condition.SUM, (L.element(x), L.element(y)), detail={"result": list(L.element(int(t.add[x, y])))}
        )

    hit = _first_pair((m[None, :] & ~m[t.scale]).T)
    if hit:
        x, alpha = hit
        return CheckResult.failed(
            Condition.SCALAR,
            (L.element(x),),
            scalar=alpha,
            detail={"result": list(L.element(int(t.scale[alpha, x])))},
        )
    return None


def is_crisp_subalgebra(L: LieAlgebra, S: CrispSubset) -> CheckResult:
    """Closure under +, scalar multiples and the bracket; the empty set passes vacuously."""
    _require_same(L, S)
    m = S.mask()
    failure = _subspace_violation(L, m)
    if failure:
        return failure

    t = L.tables
    hit = _first_pair(m[:, None] & m[None, :] & ~m[t.bracket])
    if hit:
        x, y = hit
        return CheckResult.failed(
            Condition.BRACKET, (L.element(x), L.element(y)), detail={"result": list(L.element(int(t.bracket[x, y])))}
        )
    return CheckResult.passed(size=len(S))


def is_crisp_ideal(L: LieAlgebra, S: CrispSubset) -> CheckResult:
    """A subspace with [x, y] in S for every x in S and every y in L."""
    _require_same(L, S)
    m = S.mask()
    failure = _subspace_violation(L, m)
    if failure:
        return failure

    t = L.tables
    hit = _first_pair(m[:, None] & ~m[t.bracket])
    if hit:
        x, y = hit
        return CheckResult.failed(
            Condition.BRACKET, (L.element(x), L.element(y)), detail={"result": list(L.element(int(t.bracket[x, y])))}
        )
    return CheckResult.passed(size=len(S))


def span(L: LieAlgebra, vectors: Iterable[Sequence[int]]) -> CrispSubset:
    """All F_p-linear combinations of the given vectors."""
    rows = np.array([L.coerce(v) for v in vectors], dtype=np.int64).reshape(-1, L.dim)
    if not len(rows):
        return CrispSubset.zero(L)
    coeffs = np.array(list(itertools.product(range(L.p), repeat=len(rows))), dtype=np.int64)
    combos = (coeffs @ rows) % L.p
    return CrispSubset(L, frozenset(tuple(int(v) for v in row) for row in combos))


def _rref_bases(p: int, n: int) -> Iterator[List[Tuple[int, ...]]]:
    """Every subspace of F_p^n exactly once, as the rows of its reduced echelon form."""
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(r, j) for r, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, c in enumerate(pivots):
                    rows[r][c] = 1
                for (r, j), v in zip(free, values):
                    rows[r][j] = v
                yield [tuple(row) for row in rows]


def enumerate_subspaces(L: LieAlgebra) -> List[CrispSubset]:
    """All subspaces of the carrier, smallest dimension first."""
    _check_budget(L)
    key = _table_cache.make_key("subspaces", L.p, L.dim, L.constants)
    subspaces = _table_cache.get_or_build(key, lambda: [span(L, basis) for basis in _rref_bases(L.p, L.dim)])
    # Cached entries may come from an equal-constants algebra with another name
    return [CrispSubset(L, s.members) for s in subspaces]


def crisp_subalgebras(L: LieAlgebra) -> List[CrispSubset]:
    return [S for S in enumerate_subspaces(L) if is_crisp_subalgebra(L, S).ok]


def crisp_ideals(L: LieAlgebra) -> List[CrispSubset]:
    return [S for S in enumerate_subspaces(L) if is_crisp_ideal(L, S).ok]


def _constants_from_brackets(n: int, p: int, brackets: Mapping[Tuple[int, int], Mapping[int, int]]):
    """Fill an antisymmetric table from [e_i, e_j] for i < j (1-based indices)."""
    table = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), result in brackets.items():
        for k, coeff in result.items():
            table[i - 1, j - 1, k - 1] = coeff % p
            table[j - 1, i - 1, k - 1] = (-coeff) % p
    return table.tolist()


def make_catalog_algebra(name: str, p: int) -> LieAlgebra:
    """
    Named algebras used by scenarios and the verification suite.

    cross3 is R^3 with the cross product replicated over F_p; sl2 uses the
    basis (e, f, h) with [e, f] = h, [h, e] = 2e, [h, f] = -2f.
    """
    FieldPrime(p)
    brackets: Dict[Tuple[int, int], Dict[int, int]]

    if name.startswith("abelian-"):
        try:
            n = int(name.split("-", 1)[1])
        except ValueError:
            raise AlgebraError(f"Unknown catalog algebra: '{name}'")
        _check_dim(n)
        brackets = {}
    elif name == "cross3":
        if p == 2:
            raise AlgebraError("cross3 is replicated over odd primes only")
        n = 3
        brackets = {(1, 2): {3: 1}, (2, 3): {1: 1}, (3, 1): {2: 1}}
    elif name == "heisenberg3":
        n = 3
        brackets = {(1, 2): {3: 1}}
    elif name == "sl2":
        if p == 2:
            raise AlgebraError("sl2 needs odd characteristic")
        n = 3
        brackets = {(1, 2): {3: 1}, (3, 1): {1: 2}, (3, 2): {2: -2}}
    elif name == "affine2":
        n = 2
        brackets = {(1, 2): {1: 1}}
    else:
        raise AlgebraError(f"Unknown catalog algebra: '{name}'")

    return LieAlgebra.create(name, p, n, _constants_from_brackets(n, p, brackets))


def rank_mod_p(matrix, p: int) -> int:
    """Exact rank over F_p by Gaussian elimination."""
    A = np.array(matrix, dtype=object) % p
    if A.ndim != 2 or 0 in A.shape:
        return 0
    m, n = A.shape
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if A[i, c] % p != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]
        inv = pow(int(A[r, c]) % p, -1, p)
        A[r, :] = (A[r, :] * inv) % p
        for i in range(r + 1, m):
            if A[i, c] % p != 0:
                f = A[i, c] % p
                A[i, :] = (A[i, :] - f * A[r, :]) % p
        r += 1
        if r == m:
            break
    return r


@dataclass(frozen=True)
class LieHom:
    """
    A linear map source -> target given by a (target.dim x source.dim) matrix,
    so phi(x) = M x. Bracket preservation is checked by homs.validate_hom.
    """

    name: str
    source: LieAlgebra
    target: LieAlgebra
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.source.p != self.target.p:
            raise HomError(
                f"Hom '{self.name}': source field F_{self.source.p} differs from target field F_{self.target.p}"
            )
        try:
            arr = np.array(self.matrix, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise HomError(f"Hom '{self.name}': matrix is not an integer table: {e}")
        if arr.size == self.target.dim * self.source.dim and arr.ndim == 1:
            arr = arr.reshape(self.target.dim, self.source.dim)
        if arr.shape != (self.target.dim, self.source.dim):
            raise HomError(
                f"Hom '{self.name}': matrix has shape {arr.shape}, "
                f"expected {(self.target.dim, self.source.dim)}"
            )
        arr = arr % self.source.p
        object.__setattr__(self, "matrix", tuple(tuple(int(v) for v in row) for row in arr))

    @property
    def p(self) -> int:
        return self.source.p

    def apply(self, x: Sequence[int]) -> Element:
        x = self.source.coerce(x)
        return tuple(int(v) for v in (np.array(self.matrix, dtype=np.int64) @ np.array(x, dtype=np.int64)) % self.p)

    @cached_property
    def images(self) -> np.ndarray:
        """Target index of phi(x) for every source index x."""
        coords = self.source.tables.coords
        mapped = (coords @ np.array(self.matrix, dtype=np.int64).T) % self.p
        weights = self.p ** np.arange(self.target.dim - 1, -1, -1, dtype=np.int64)
        return (mapped @ weights).astype(np.intp)

    @cached_property
    def rank(self) -> int:
        return rank_mod_p(self.matrix, self.p)

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    @classmethod
    def identity(cls, L: LieAlgebra) -> "LieHom":
        return cls(f"identity:{L.name}", L, L, tuple(tuple(int(i == j) for j in range(L.dim)) for i in range(L.dim)))
