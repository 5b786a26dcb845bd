"""Zero-sum directed cycles in Z_p^d-labelled complete digraphs.

The constructive route: label every ordered triple (x, y, z) by
``w(x,y) + w(y,z) - w(x,z)``, pull m vertex-disjoint basis matchings out of
that triple hypergraph, thread a base cycle through the matched triples,
and pick a set of detours x -> y -> z whose labels cancel the base cycle's
sum. Every witness is re-verified before it is returned.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InternalConsistencyError, PipelineFailure, ResourceError
from .gf import (FieldSpec, GroupVector, SpanBasis, _weights, is_additive_basis,
                 reachable_sums, solve_representation, span_of, vec_sum)
from .hypergraph import LabelledHypergraph
from .matching import EXACT, BasisMatchingsResult, disjoint_basis_matchings
from .matroid import LinearMatroid

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 8


class LabelledDigraph:
    """Complete digraph on vertices ``0 .. n-1`` with arc labels in Z_p^d.

    ``w`` is an ``(n, n, d)`` integer array; the diagonal is ignored.
    """

    def __init__(self, spec: FieldSpec, w):
        w = np.array(w, dtype=np.int64)
        if w.ndim != 3 or w.shape[0] != w.shape[1] or w.shape[2] != spec.d:
            raise ValueError(f"labels must have shape (n, n, {spec.d}), got {w.shape}")
        if ((w < 0) | (w >= spec.p)).any():
            raise ValueError(f"arc labels must be reduced residues mod {spec.p}")
        n = w.shape[0]
        w[np.arange(n), np.arange(n)] = 0
        w.setflags(write=False)
        self.spec = spec
        self.n = n
        self.w = w

    @classmethod
    def random(cls, spec: FieldSpec, n: int, rng: np.random.Generator) -> LabelledDigraph:
        w = rng.integers(0, spec.p, size=(n, n, spec.d))
        return cls(spec, w)

    @classmethod
    def from_arcs(cls, spec: FieldSpec, n: int, arcs: dict) -> LabelledDigraph:
        """Build from a mapping ``(u, v) -> coords``; every ordered pair must be present."""
        w = np.zeros((n, n, spec.d), dtype=np.int64)
        for u in range(n):
            for v in range(n):
                if u != v:
                    if (u, v) not in arcs:
                        raise ValueError(f"missing label for arc ({u}, {v})")
                    c = arcs[(u, v)]
                    w[u, v] = c.coords if isinstance(c, GroupVector) else c
        return cls(spec, w)

    def arc(self, u: int, v: int) -> GroupVector:
        if u == v:
            raise ValueError("no loops in a complete digraph")
        return GroupVector(self.spec, tuple(int(c) for c in self.w[u, v]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelledDigraph):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.w, other.w)

    def __repr__(self) -> str:
        return f"LabelledDigraph(n={self.n}, p={self.spec.p}, d={self.spec.d})"


def cycle_sum(dg: LabelledDigraph, c: Sequence[int]) -> GroupVector:
    c = _check_cycle(dg, c)
    idx = np.asarray(c)
    total = dg.w[idx, np.roll(idx, -1)].sum(axis=0) % dg.spec.p
    return GroupVector(dg.spec, tuple(int(x) for x in total))


def _check_cycle(dg: LabelledDigraph, c: Sequence[int]) -> list[int]:
    c = [int(v) for v in c]
    if len(c) < 2:
        raise ValueError("a directed cycle needs at least two vertices")
    if len(set(c)) != len(c):
        raise ValueError(f"cycle repeats a vertex: {c}")
    if any(not 0 <= v < dg.n for v in c):
        raise ValueError(f"cycle vertex out of range 0..{dg.n - 1}: {c}")
    return c


def verify_cycle(dg: LabelledDigraph, c: Sequence[int]) -> bool:
    """True iff the arc labels around c sum to zero."""
    return cycle_sum(dg, c).is_zero


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]
    sum: GroupVector
    route: str = "search"  # "digon", "detour" or "search"
    m_used: int = 0
    u_size: int = 0
    detours: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class TripleHypergraph:
    """The ordered-triple hypergraph of a digraph; edge id i is ``triples[i]``."""

    hypergraph: LabelledHypergraph
    triples: tuple[tuple[int, int, int], ...]
    codes: np.ndarray = field(repr=False)

    def label(self, eid: int) -> GroupVector:
        return self.hypergraph.matroid.vector(int(self.codes[eid]))


def gamma(dg: LabelledDigraph, x: int, y: int, z: int) -> GroupVector:
    """w(x,y) + w(y,z) - w(x,z)."""
    return dg.arc(x, y) + dg.arc(y, z) - dg.arc(x, z)


def triple_hypergraph(dg: LabelledDigraph) -> TripleHypergraph:
    """One hyperedge per ordered triple of distinct vertices, labelled in the full-space matroid."""
    n, spec = dg.n, dg.spec
    if n < 3:
        raise ValueError("the triple hypergraph needs at least 3 vertices")
    W = dg.w
    g = (W[:, :, None, :] + W[None, :, :, :] - W[:, None, :, :]) % spec.p
    codes_cube = g @ _weights(spec.p, spec.d)
    triples = tuple(itertools.permutations(range(n), 3))
    t = np.array(triples)
    codes = codes_cube[t[:, 0], t[:, 1], t[:, 2]]
    codes.setflags(write=False)
    matroid = LinearMatroid.full_space(spec)
    edges = [(tr, int(c)) for tr, c in zip(triples, codes)]
    h = LabelledHypergraph(range(n), edges, matroid, r=3)
    return TripleHypergraph(h, triples, codes)


@dataclass(frozen=True)
class BaseCycle:
    triples: tuple[tuple[int, int, int], ...]
    vertices: tuple[int, ...]
    a: GroupVector


def base_cycle(dg: LabelledDigraph, matched_triples: Sequence[tuple[int, int, int]],
               span: SpanBasis | None = None) -> BaseCycle:
    """The cycle x_1, z_1, ..., x_k, z_k and its label sum ``a``.

    ``a`` is recomputed as a telescoping sum of triple labels through
    u = y_1; when ``span`` is given, membership of ``a`` is asserted.
    """
    triples = tuple(tuple(int(v) for v in t) for t in matched_triples)
    if not triples:
        raise ValueError("base cycle needs at least one matched triple")
    flat = [v for t in triples for v in t]
    if len(set(flat)) != len(flat):
        raise ValueError("matched triples must be pairwise vertex-disjoint")
    verts = tuple(v for x, _, z in triples for v in (x, z))
    a = cycle_sum(dg, verts)
    u = triples[0][1]
    arcs = zip(verts, verts[1:] + verts[:1])
    tele = vec_sum((gamma(dg, u, v1, v2) for v1, v2 in arcs), dg.spec)
    if tele != a:
        raise InternalConsistencyError(f"telescoping sum {tele} != base cycle sum {a}")
    if span is not None and not span.contains(a):
        raise InternalConsistencyError(f"base cycle sum {a} lies outside the label span")
    return BaseCycle(triples, verts, a)


def select_detours(labels: Sequence[GroupVector], target: GroupVector) -> list[int]:
    """Indices whose labels sum to ``target``.

    Over F_2 any linear representation is a subset, so a linear solve
    suffices; otherwise the subset-sum DP reconstructs one.
    """
    spec = target.spec
    if target.is_zero:
        return []
    if spec.p == 2:
        coeffs = solve_representation(target, list(labels))
        if coeffs is not None:
            return [i for i, c in enumerate(coeffs) if c]
    else:
        picked = reachable_sums(labels, spec=spec).reconstruct(target)
        if picked is not None:
            return picked
    raise PipelineFailure(f"target {target.coords} is not a subset sum of the detour labels")


def default_m_schedule(spec: FieldSpec, n: int) -> list[int]:
    """Values of m to try, in order.

    Starts from the additive-basis bound (exactly 1 for p = 2) and escalates
    while 5 * d * m <= n. The first value is always tried.
    """
    p, d = spec.p, spec.d
    if p == 2:
        m0 = 1
    else:
        m0 = max((p - 1) * math.ceil(math.log2(d)) + (p - 2), p - 1)
    out = [m0]
    while 5 * d * (out[-1] + 1) <= n:
        out.append(out[-1] + 1)
    return out


def _splice(base: BaseCycle, chosen: Sequence[int]) -> tuple[int, ...]:
    chosen = set(chosen)
    out = []
    for i, (x, y, z) in enumerate(base.triples):
        out.append(x)
        if i in chosen:
            out.append(y)
        out.append(z)
    return tuple(out)


def _attempt(dg: LabelledDigraph, th: TripleHypergraph, m: int, mode: str) -> CycleWitness | str:
    spec = dg.spec
    res: BasisMatchingsResult = disjoint_basis_matchings(th.hypergraph, m, mode)
    rest = sorted(set(range(dg.n)) - res.u)
    sub = th.hypergraph.delete_vertices(res.u)
    codes = sorted(set(sub.labels()))
    span = span_of([spec.from_code(c) for c in codes], spec)
    if span.dimension == 0:
        if len(rest) < 3:
            return f"m={m}: only {len(rest)} vertices outside U"
        digon = (rest[0], rest[1])
        s = cycle_sum(dg, digon)
        if not s.is_zero:
            raise InternalConsistencyError(f"digon {digon} has sum {s.coords} although the span is trivial")
        return CycleWitness(digon, s, "digon", m, len(res.u))

    edges = sorted(e for mi in res.matchings for e in mi)
    labels = [th.label(e) for e in edges]
    for mi in res.matchings:
        if span_of([th.label(e) for e in mi], spec) != span or len(mi) != span.dimension:
            raise InternalConsistencyError(f"m={m}: a matching is not a basis of the residual span")
    try:
        additive = is_additive_basis(labels, span)
    except ResourceError as exc:
        return f"m={m}: {exc}"
    if not additive:
        return f"m={m}: matched labels are not an additive basis of the span"
    base = base_cycle(dg, [th.triples[e] for e in edges], span)
    try:
        chosen = select_detours(labels, -base.a)
    except PipelineFailure as exc:
        return f"m={m}: {exc}"
    cycle = _splice(base, chosen)
    s = cycle_sum(dg, cycle)
    expected = base.a + vec_sum((labels[i] for i in chosen), spec)
    if s != expected:
        raise InternalConsistencyError(f"detours changed the sum to {s.coords}, expected {expected.coords}")
    if not s.is_zero:
        raise InternalConsistencyError(f"spliced cycle has nonzero sum {s.coords}")
    return CycleWitness(cycle, s, "detour", m, len(res.u), tuple(chosen))


def find_zero_sum_cycle(dg: LabelledDigraph, m_override: int | None = None,
                        mode: str = EXACT) -> CycleWitness:
    """A verified zero-sum cycle, or PipelineFailure with the attempts made."""
    th = triple_hypergraph(dg)
    schedule = [m_override] if m_override is not None else default_m_schedule(dg.spec, dg.n)
    notes = []
    for m in schedule:
        out = _attempt(dg, th, m, mode)
        if isinstance(out, CycleWitness):
            if not verify_cycle(dg, out.vertices):
                raise InternalConsistencyError(f"witness {out.vertices} failed verification")
            return out
        log.info("attempt failed: %s", out)
        notes.append(out)
    raise PipelineFailure(
        f"no zero-sum cycle found; largest m attempted = {schedule[-1]} ({'; '.join(notes)})")


def bf_zero_sum_cycle(dg: LabelledDigraph) -> CycleWitness | None:
    """First zero-sum cycle by exhaustive search, ordered by length then lexicographically.

    Cycles are canonicalised to start at their smallest vertex.
    """
    n, p, d = dg.n, dg.spec.p, dg.spec.d
    if n > BRUTE_FORCE_MAX_N:
        raise ResourceError(f"exhaustive cycle search is capped at n = {BRUTE_FORCE_MAX_N}")
    w = [[tuple(int(c) for c in dg.w[u, v]) for v in range(n)] for u in range(n)]

    def extend(path, acc, length):
        last = path[-1]
        if len(path) == length:
            close = w[last][path[0]]
            if all((x + y) % p == 0 for x, y in zip(acc, close)):
                return tuple(path)
            return None
        for v in range(path[0] + 1, n):
            if v in path:
                continue
            found = extend(path + [v], tuple((x + y) % p for x, y in zip(acc, w[last][v])), length)
            if found:
                return found
        return None

    for length in range(2, n + 1):
        for s in range(n):
            found = extend([s], (0,) * d, length)
            if found:
                return CycleWitness(found, cycle_sum(dg, found))
    return None


def lower_bound_witness(spec: FieldSpec) -> LabelledDigraph:
    """Complete digraph on (p-1)d vertices with no zero-sum cycle.

    Vertices are split into d blocks of size p-1 and every arc into a vertex
    of block j carries the j-th unit vector, so each coordinate of a cycle
    sum counts at most p-1 visits.
    """
    n = (spec.p - 1) * spec.d
    w = np.zeros((n, n, spec.d), dtype=np.int64)
    for v in range(n):
        w[:, v, v // (spec.p - 1)] = 1
    return LabelledDigraph(spec, w)


def linear_bases(spec: FieldSpec) -> list[tuple[GroupVector, ...]]:
    """Every linear basis of Z_p^d as an (unordered) tuple in code order."""
    nonzero = [v for v in spec.all_vectors() if not v.is_zero]
    out = []

    def rec(start, chosen, eb_vectors):
        if len(chosen) == spec.d:
            out.append(tuple(chosen))
            return
        for i in range(start, len(nonzero)):
            v = nonzero[i]
            if span_of(eb_vectors + [v], spec).dimension == len(chosen) + 1:
                rec(i + 1, chosen + [v], eb_vectors + [v])

    rec(0, [], [])
    return out


def count_linear_bases(spec: FieldSpec) -> int:
    p, d = spec.p, spec.d
    ordered = math.prod(p**d - p**i for i in range(d))
    return ordered // math.factorial(d)


def random_basis(spec: FieldSpec, rng: np.random.Generator) -> tuple[GroupVector, ...]:
    while True:
        rows = rng.integers(0, spec.p, size=(spec.d, spec.d))
        vs = [spec.vector(r) for r in rows]
        if span_of(vs, spec).dimension == spec.d:
            return tuple(vs)


@dataclass(frozen=True)
class FProbe:
    value: int
    exact: bool
    tuples_checked: int


def probe_f(spec: FieldSpec, trials: int = 200, rng_seed: int = 0,
            exhaustive_cap: int = 20_000, max_m: int = 64) -> FProbe:
    """Smallest m such that every m-tuple of linear bases tested has an additive-basis union.

    Exhaustive over multisets of bases when p**d <= 81 and there are at most
    ``exhaustive_cap`` of them; otherwise ``trials`` random tuples per m.
    """
    full = span_of([spec.unit(j) for j in range(spec.d)], spec)
    reachable_sums([], spec=spec)  # raises early if p**d is over budget
    rng = np.random.default_rng(rng_seed)
    bases = None
    if spec.size <= 81 and count_linear_bases(spec) <= exhaustive_cap:
        bases = linear_bases(spec)
    checked = 0
    for m in range(1, max_m + 1):
        exhaustive = bases is not None and math.comb(len(bases) + m - 1, m) <= exhaustive_cap
        if exhaustive:
            pool = itertools.combinations_with_replacement(bases, m)
        else:
            pool = (tuple(random_basis(spec, rng) for _ in range(m)) for _ in range(trials))
        ok = True
        for combo in pool:
            checked += 1
            if not is_additive_basis([v for b in combo for v in b], full):
                ok = False
                break
        if ok:
            return FProbe(m, exhaustive, checked)
    raise ResourceError(f"no m <= {max_m} passed")
