"""Exact arithmetic in Z_p^d and the F_p linear-algebra kernel.

Vectors are immutable :class:`GroupVector` values tied to a :class:`FieldSpec`.
Internally the elimination routines work on plain coordinate tuples, and
subset-sum reachability runs as a numpy dynamic program over the ``p**d``
group elements.
"""

from __future__ import annotations

import bisect
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ResourceError

DEFAULT_STATE_BUDGET = 10**7


def is_prime(p: int) -> bool:
    """Deterministic primality check by trial division."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The group Z_p^d, viewed as a d-dimensional vector space over F_p."""

    p: int
    d: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d!r}")

    @property
    def size(self) -> int:
        return self.p**self.d

    def vector(self, coords: Iterable[int]) -> GroupVector:
        """Build a vector, reducing every coordinate mod p."""
        return GroupVector(self, tuple(int(c) % self.p for c in coords))

    def zero(self) -> GroupVector:
        return GroupVector(self, (0,) * self.d)

    def unit(self, j: int) -> GroupVector:
        coords = [0] * self.d
        coords[j] = 1
        return GroupVector(self, tuple(coords))

    def encode(self, coords: Sequence[int]) -> int:
        """Big-endian base-p code, so code order is lexicographic order."""
        code = 0
        for c in coords:
            code = code * self.p + c
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        if not 0 <= code < self.size:
            raise ValueError(f"code {code} out of range for Z_{self.p}^{self.d}")
        out = [0] * self.d
        for i in range(self.d - 1, -1, -1):
            code, out[i] = divmod(code, self.p)
        return tuple(out)

    def from_code(self, code: int) -> GroupVector:
        return GroupVector(self, self.decode(code))

    def all_vectors(self) -> Iterator[GroupVector]:
        for coords in itertools.product(range(self.p), repeat=self.d):
            yield GroupVector(self, coords)


@dataclass(frozen=True, slots=True)
class GroupVector:
    """An element of Z_p^d with reduced coordinates."""

    spec: FieldSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.spec.d:
            raise ValueError(f"expected {self.spec.d} coordinates, got {len(self.coords)}")
        p = self.spec.p
        if any(not 0 <= c < p for c in self.coords):
            raise ValueError(f"coordinates {self.coords} not reduced mod {p}")

    def __add__(self, other: GroupVector) -> GroupVector:
        return vec_add(self, other)

    def __neg__(self) -> GroupVector:
        return vec_neg(self)

    def __sub__(self, other: GroupVector) -> GroupVector:
        return vec_add(self, vec_neg(other))

    def scale(self, c: int) -> GroupVector:
        p = self.spec.p
        return GroupVector(self.spec, tuple(c * x % p for x in self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def code(self) -> int:
        return self.spec.encode(self.coords)

    def __repr__(self) -> str:
        return f"GroupVector(p={self.spec.p}, {self.coords})"


def _check_same(a: GroupVector, b: GroupVector) -> None:
    if a.spec != b.spec:
        raise ValueError(f"field mismatch: {a.spec} vs {b.spec}")


def vec_add(a: GroupVector, b: GroupVector) -> GroupVector:
    _check_same(a, b)
    p = a.spec.p
    return GroupVector(a.spec, tuple((x + y) % p for x, y in zip(a.coords, b.coords)))


def vec_neg(a: GroupVector) -> GroupVector:
    p = a.spec.p
    return GroupVector(a.spec, tuple(-x % p for x in a.coords))


def vec_sum(vs: Iterable[GroupVector], spec: FieldSpec) -> GroupVector:
    acc = [0] * spec.d
    for v in vs:
        if v.spec != spec:
            raise ValueError(f"field mismatch: {v.spec} vs {spec}")
        for i, c in enumerate(v.coords):
            acc[i] += c
    return spec.vector(acc)


class EchelonBasis:
    """Incremental row-echelon basis over F_p on raw coordinate tuples.

    Rows are kept normalized (pivot entry 1) and sorted by pivot column; the
    pivot of a new row is its lexicographically first nonzero column.
    """

    __slots__ = ("p", "d", "_pivots", "_rows")

    def __init__(self, p: int, d: int):
        self.p = p
        self.d = d
        self._pivots: list[int] = []
        self._rows: list[list[int]] = []

    def copy(self) -> EchelonBasis:
        out = EchelonBasis(self.p, self.d)
        out._pivots = list(self._pivots)
        out._rows = list(self._rows)  # rows are never mutated in place
        return out

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        p = self.p
        r = list(v)
        for col, row in zip(self._pivots, self._rows):
            c = r[col]
            if c:
                for j in range(col, self.d):
                    if row[j]:
                        r[j] = (r[j] - c * row[j]) % p
        return r

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[int]) -> bool:
        """Insert v; return False (and leave the basis unchanged) if v is already spanned."""
        r = self.reduce(v)
        for col, c in enumerate(r):
            if c:
                break
        else:
            return False
        inv = pow(c, -1, self.p)
        row = [x * inv % self.p for x in r]
        i = bisect.bisect(self._pivots, col)
        self._pivots.insert(i, col)
        self._rows.insert(i, row)
        return True

    def rref_rows(self) -> list[tuple[int, ...]]:
        """Fully reduced rows in increasing pivot order."""
        p = self.p
        rows = [list(r) for r in self._rows]
        for i in range(len(rows) - 1, -1, -1):
            col = self._pivots[i]
            for j in range(i):
                c = rows[j][col]
                if c:
                    rows[j] = [(x - c * y) % p for x, y in zip(rows[j], rows[i])]
        return [tuple(r) for r in rows]


@dataclass(frozen=True)
class SpanBasis:
    """Canonical (reduced row-echelon) basis of an F_p-subspace of Z_p^d.

    Two SpanBasis values compare equal exactly when their spans are equal.
    """

    spec: FieldSpec
    vectors: tuple[GroupVector, ...]
    pivots: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def coefficients(self, v: GroupVector) -> tuple[int, ...] | None:
        """Coefficients of v over ``self.vectors``, or None if v is outside the span."""
        _check_same(v, self.vectors[0] if self.vectors else self.spec.zero())
        coeffs = tuple(v.coords[c] for c in self.pivots)
        p = self.spec.p
        acc = [0] * self.spec.d
        for c, b in zip(coeffs, self.vectors):
            if c:
                for j, x in enumerate(b.coords):
                    acc[j] += c * x
        if tuple(x % p for x in acc) != v.coords:
            return None
        return coeffs

    def contains(self, v: GroupVector) -> bool:
        return self.coefficients(v) is not None

    def elements(self) -> Iterator[GroupVector]:
        """All p**dimension members of the span."""
        p = self.spec.p
        for coeffs in itertools.product(range(p), repeat=self.dimension):
            acc = [0] * self.spec.d
            for c, b in zip(coeffs, self.vectors):
                for j, x in enumerate(b.coords):
                    acc[j] += c * x
            yield GroupVector(self.spec, tuple(x % p for x in acc))

    def element_codes(self) -> np.ndarray:
        """Codes of all span members as an integer array."""
        p, d = self.spec.p, self.spec.d
        if not self.vectors:
            return np.zeros(1, dtype=np.int64)
        basis = np.array([b.coords for b in self.vectors], dtype=np.int64)
        coeffs = np.array(list(itertools.product(range(p), repeat=len(basis))), dtype=np.int64)
        members = coeffs @ basis % p
        return members @ _weights(p, d)


def _spec_of(vs: Sequence[GroupVector], spec: FieldSpec | None) -> FieldSpec:
    if spec is None:
        if not vs:
            raise ValueError("spec is required for an empty vector list")
        spec = vs[0].spec
    for v in vs:
        if v.spec != spec:
            raise ValueError(f"mixed fields: {v.spec} vs {spec}")
    return spec


def span_of(vs: Sequence[GroupVector], spec: FieldSpec | None = None) -> SpanBasis:
    vs = list(vs)
    spec = _spec_of(vs, spec)
    eb = EchelonBasis(spec.p, spec.d)
    for v in vs:
        eb.add(v.coords)
    rows = eb.rref_rows()
    return SpanBasis(spec, tuple(GroupVector(spec, r) for r in rows), tuple(eb._pivots))


def in_span(v: GroupVector, s: SpanBasis) -> bool:
    if v.spec != s.spec:
        raise ValueError(f"field mismatch: {v.spec} vs {s.spec}")
    return s.contains(v)


def rank(vs: Sequence[GroupVector], spec: FieldSpec | None = None) -> int:
    return span_of(vs, spec).dimension


def solve_representation(target: GroupVector, vs: Sequence[GroupVector]) -> list[int] | None:
    """Coefficients c with sum(c[i] * vs[i]) == target, or None if target is outside the span.

    Pivoting follows the order of ``vs``, so for p = 2 the support is a subset
    of the first independent vectors encountered.
    """
    spec = _spec_of([target, *vs], None)
    p, n = spec.p, len(vs)
    pivots: list[int] = []
    rows: list[list[int]] = []
    combos: list[list[int]] = []

    def reduce(r: list[int], combo: list[int]) -> tuple[list[int], list[int]]:
        for col, row, cb in zip(pivots, rows, combos):
            c = r[col]
            if c:
                r = [(x - c * y) % p for x, y in zip(r, row)]
                combo = [(x - c * y) % p for x, y in zip(combo, cb)]
        return r, combo

    for i, v in enumerate(vs):
        combo = [0] * n
        combo[i] = 1
        r, combo = reduce(list(v.coords), combo)
        col = next((j for j, c in enumerate(r) if c), None)
        if col is None:
            continue
        inv = pow(r[col], -1, p)
        pivots.append(col)
        rows.append([x * inv % p for x in r])
        combos.append([x * inv % p for x in combo])
    # t - sum(c_j R_j) = residual, so t = -combo when the residual vanishes
    r, combo = reduce(list(target.coords), [0] * n)
    if any(r):
        return None
    return [-x % p for x in combo]


@functools.lru_cache(maxsize=32)
def _coord_table(p: int, d: int) -> np.ndarray:
    table = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=32)
def _weights(p: int, d: int) -> np.ndarray:
    w = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    w.setflags(write=False)
    return w


class SumReachability:
    """All sub-multiset sums of ``source``, with reconstruction data.

    ``parent_state[t]`` is the code reached before the step that first hit
    code ``t`` and ``parent_index[t]`` is the source index used in that step;
    following parents back to code 0 uses each source index at most once.
    """

    def __init__(self, spec: FieldSpec, source: tuple[GroupVector, ...], mask: np.ndarray,
                 parent_state: np.ndarray, parent_index: np.ndarray):
        self.spec = spec
        self.source = source
        self.mask = mask
        self.parent_state = parent_state
        self.parent_index = parent_index

    def __contains__(self, v: GroupVector) -> bool:
        return bool(self.mask[v.code])

    def __len__(self) -> int:
        return int(self.mask.sum())

    @property
    def reachable(self) -> frozenset[GroupVector]:
        return frozenset(self.spec.from_code(int(c)) for c in np.flatnonzero(self.mask))

    def reconstruct(self, v: GroupVector) -> list[int] | None:
        """Ascending source indices summing to v, or None if v is unreachable."""
        t = v.code
        if not self.mask[t]:
            return None
        used = []
        while t != 0:
            used.append(int(self.parent_index[t]))
            t = int(self.parent_state[t])
        return sorted(used)


def reachable_sums(source: Sequence[GroupVector], spec: FieldSpec | None = None,
                   budget: int = DEFAULT_STATE_BUDGET) -> SumReachability:
    source = tuple(source)
    spec = _spec_of(source, spec)
    p, d, size = spec.p, spec.d, spec.size
    if max(len(source), 1) * size > budget:
        raise ResourceError(
            f"subset-sum DP needs {len(source)} x {size} states, budget is {budget}")
    table = _coord_table(p, d)
    weights = _weights(p, d)
    mask = np.zeros(size, dtype=bool)
    mask[0] = True
    parent_state = np.full(size, -1, dtype=np.int64)
    parent_index = np.full(size, -1, dtype=np.int64)
    reached = 1
    for i, v in enumerate(source):
        if reached == size:
            break
        src = np.flatnonzero(mask)
        dst = ((table[src] + np.asarray(v.coords, dtype=np.int64)) % p) @ weights
        fresh = ~mask[dst]
        dst_new = dst[fresh]
        parent_state[dst_new] = src[fresh]
        parent_index[dst_new] = i
        mask[dst_new] = True
        reached += int(fresh.sum())
    return SumReachability(spec, source, mask, parent_state, parent_index)


def is_additive_basis(source: Sequence[GroupVector], target: SpanBasis,
                      budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff every member of ``target``'s span is a sub-multiset sum of ``source``."""
    reach = reachable_sums(source, spec=target.spec, budget=budget)
    return bool(reach.mask[target.element_codes()].all())
