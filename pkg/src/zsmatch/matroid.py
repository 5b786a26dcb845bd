"""Matroids exposed through independence oracles.

Ground-set elements are dense integers ``0 .. size-1``. Every matroid hands
out an incremental :class:`IndependentSet` builder; the matching code only
ever talks to that builder, so linear, free and direct-sum matroids are
interchangeable there.

Sets passed to the oracles may repeat an element. A repeated element is
treated as dependent, which is how the distinct-label rule for matchings is
enforced.
"""

from __future__ import annotations

import bisect
import itertools
from typing import Iterable, Sequence

from .gf import EchelonBasis, FieldSpec, GroupVector


class IndependentSet:
    """Incrementally grown independent set of one matroid."""

    def add(self, x: int) -> bool:
        """Add x if that keeps the set independent; report whether it was added."""
        raise NotImplementedError

    def spans(self, x: int) -> bool:
        raise NotImplementedError

    def copy(self) -> IndependentSet:
        raise NotImplementedError

    @property
    def rank(self) -> int:
        raise NotImplementedError


class Matroid:
    size: int
    rank: int

    @property
    def ground(self) -> range:
        return range(self.size)

    def independent_set(self) -> IndependentSet:
        raise NotImplementedError

    def is_loop(self, x: int) -> bool:
        return self.independent_set().spans(x)

    def _check(self, xs: Iterable[int]) -> list[int]:
        xs = list(xs)
        for x in xs:
            if not (isinstance(x, int) and 0 <= x < self.size):
                raise ValueError(f"element {x!r} is not in the ground set of size {self.size}")
        return xs

    def is_independent(self, s: Iterable[int]) -> bool:
        b = self.independent_set()
        return all(b.add(x) for x in self._check(s))

    def rank_of(self, s: Iterable[int]) -> int:
        b = self.independent_set()
        for x in self._check(s):
            b.add(x)
        return b.rank

    def in_span(self, x: int, s: Iterable[int]) -> bool:
        self._check([x])
        b = self.independent_set()
        for y in self._check(s):
            b.add(y)
        return b.spans(x)


class _LinearSet(IndependentSet):
    __slots__ = ("m", "eb", "members")

    def __init__(self, m: LinearMatroid, eb: EchelonBasis, members: frozenset):
        self.m = m
        self.eb = eb
        self.members = members

    def add(self, x: int) -> bool:
        if x in self.members:
            return False
        if not self.eb.add(self.m.vectors[x]):
            return False
        self.members = self.members | {x}
        return True

    def spans(self, x: int) -> bool:
        return x in self.members or self.eb.contains(self.m.vectors[x])

    def copy(self) -> _LinearSet:
        return _LinearSet(self.m, self.eb.copy(), self.members)

    @property
    def rank(self) -> int:
        return self.eb.rank


class _AllCoords(Sequence):
    """Lazy sequence of every coordinate tuple of Z_p^d, indexed by code."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec

    def __len__(self) -> int:
        return self.spec.size

    def __getitem__(self, code):
        if isinstance(code, slice):
            return [self[i] for i in range(*code.indices(len(self)))]
        return self.spec.decode(code)


class LinearMatroid(Matroid):
    """Column matroid of a family of vectors over F_p.

    Parallel elements (distinct ids with equal vectors) are allowed.
    """

    def __init__(self, spec: FieldSpec, vectors: Sequence):
        self.spec = spec
        if isinstance(vectors, _AllCoords):
            self.vectors = vectors
        else:
            coords = []
            for v in vectors:
                if isinstance(v, GroupVector):
                    if v.spec != spec:
                        raise ValueError(f"field mismatch: {v.spec} vs {spec}")
                    coords.append(v.coords)
                else:
                    coords.append(spec.vector(v).coords)
            self.vectors = coords
        self.size = len(self.vectors)
        eb = EchelonBasis(spec.p, spec.d)
        if isinstance(self.vectors, _AllCoords):
            self.rank = spec.d
        else:
            for v in self.vectors:
                eb.add(v)
            self.rank = eb.rank

    @classmethod
    def full_space(cls, spec: FieldSpec) -> LinearMatroid:
        """The matroid whose ground set is all of Z_p^d; element id = vector code."""
        return cls(spec, _AllCoords(spec))

    def vector(self, x: int) -> GroupVector:
        return GroupVector(self.spec, tuple(self.vectors[x]))

    def element_of(self, v: GroupVector) -> int:
        """Element id of v in a :meth:`full_space` matroid."""
        if not isinstance(self.vectors, _AllCoords):
            raise TypeError("element_of is only defined for full_space matroids")
        return v.code

    def independent_set(self) -> _LinearSet:
        return _LinearSet(self, EchelonBasis(self.spec.p, self.spec.d), frozenset())


class _FreeSet(IndependentSet):
    __slots__ = ("members",)

    def __init__(self, members: frozenset):
        self.members = members

    def add(self, x: int) -> bool:
        if x in self.members:
            return False
        self.members = self.members | {x}
        return True

    def spans(self, x: int) -> bool:
        return x in self.members

    def copy(self) -> _FreeSet:
        return _FreeSet(self.members)

    @property
    def rank(self) -> int:
        return len(self.members)


class FreeMatroid(Matroid):
    """Every subset is independent; the rainbow-matching setting."""

    def __init__(self, size: int):
        if size < 0:
            raise ValueError("size must be non-negative")
        self.size = size
        self.rank = size

    def independent_set(self) -> _FreeSet:
        return _FreeSet(frozenset())


class _SumSet(IndependentSet):
    __slots__ = ("m", "parts")

    def __init__(self, m: DirectSumMatroid, parts: list[IndependentSet]):
        self.m = m
        self.parts = parts

    def add(self, x: int) -> bool:
        i, inner = self.m.tag(x)
        return self.parts[i].add(inner)

    def spans(self, x: int) -> bool:
        i, inner = self.m.tag(x)
        return self.parts[i].spans(inner)

    def copy(self) -> _SumSet:
        return _SumSet(self.m, [b.copy() for b in self.parts])

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.parts)


class DirectSumMatroid(Matroid):
    """Direct sum of matroids; element ids are assigned summand-major."""

    def __init__(self, summands: Sequence[Matroid]):
        if not summands:
            raise ValueError("direct sum needs at least one summand")
        self.summands = list(summands)
        self.offsets = list(itertools.accumulate((m.size for m in self.summands), initial=0))
        self.size = self.offsets[-1]
        self.rank = sum(m.rank for m in self.summands)
        sizes = {m.size for m in self.summands}
        self._uniform = sizes.pop() if len(sizes) == 1 else 0

    def tag(self, x: int) -> tuple[int, int]:
        """(summand index, inner element id) of x."""
        if not 0 <= x < self.size:
            raise ValueError(f"element {x!r} is not in the ground set of size {self.size}")
        if self._uniform:
            i = x // self._uniform
        else:
            i = bisect.bisect_right(self.offsets, x) - 1
        return i, x - self.offsets[i]

    def element(self, i: int, inner: int) -> int:
        if not 0 <= inner < self.summands[i].size:
            raise ValueError(f"element {inner!r} not in summand {i}")
        return self.offsets[i] + inner

    def independent_set(self) -> _SumSet:
        return _SumSet(self, [m.independent_set() for m in self.summands])


def is_independent(m: Matroid, s: Iterable[int]) -> bool:
    return m.is_independent(s)


def matroid_rank(m: Matroid, s: Iterable[int]) -> int:
    return m.rank_of(s)


def in_matroid_span(m: Matroid, x: int, s: Iterable[int]) -> bool:
    return m.in_span(x, s)


def direct_sum(ms: Sequence[Matroid]) -> DirectSumMatroid:
    return DirectSumMatroid(ms)


def axiom_violations(m: Matroid, max_ground: int = 12) -> list[str]:
    """Exhaustively check the independence axioms; return a description of each failure."""
    if m.size > max_ground:
        raise ValueError(f"exhaustive axiom check limited to {max_ground} elements")
    ground = range(m.size)
    indep = {
        s for k in range(m.size + 1) for s in itertools.combinations(ground, k)
        if m.is_independent(s)
    }
    bad = []
    if () not in indep:
        bad.append("empty set dependent")
    for s in indep:
        for k in range(len(s)):
            for t in itertools.combinations(s, k):
                if t not in indep:
                    bad.append(f"subset {t} of independent {s} is dependent")
    for a in indep:
        for b in indep:
            if len(a) < len(b) and not any(
                    tuple(sorted(a + (x,))) in indep for x in b if x not in a):
                bad.append(f"exchange fails for {a} < {b}")
    return bad
