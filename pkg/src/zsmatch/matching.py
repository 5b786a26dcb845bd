"""Independent matchings in matroid-labelled hypergraphs.

An independent matching is a set of pairwise vertex-disjoint hyperedges with
distinct labels whose labels are independent in the matroid. It is
*maximal* when every independent matching with the same label span is
inclusion-wise maximal.

Two modes are offered. ``"exact"`` certifies maximality by exhaustive
search over same-span matchings (capped by a :class:`SearchBudget`);
``"heuristic"`` restricts that search to single-edge swaps and reports its
results as uncertified. The higher-level routines fall back from exact to
heuristic when the budget runs out and record that in ``degraded``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InternalConsistencyError, ResourceError
from .hypergraph import LabelledHypergraph, Matching
from .matroid import DirectSumMatroid, IndependentSet

log = logging.getLogger(__name__)

EXACT = "exact"
HEURISTIC = "heuristic"
DEFAULT_SEARCH_BUDGET = 10**6
BRUTE_FORCE_EDGE_CAP = 20


class SearchBudget:
    """Counts partial matchings examined by the exhaustive searches."""

    def __init__(self, limit: int = DEFAULT_SEARCH_BUDGET):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceError(f"exact search examined more than {self.limit} matchings")


class NotMaximalError(ValueError):
    """The supplied matching is not maximal; ``extension`` is a witness.

    ``extension`` is an independent matching whose span strictly contains
    the span of the supplied one.
    """

    def __init__(self, msg: str, extension: Matching):
        super().__init__(msg)
        self.extension = extension


def _check_mode(mode: str) -> None:
    if mode not in (EXACT, HEURISTIC):
        raise ValueError(f"mode must be 'exact' or 'heuristic', got {mode!r}")


def _independent_set(h: LabelledHypergraph, m: Iterable[int]) -> IndependentSet:
    b = h.matroid.independent_set()
    for lab in h.labels(m):
        if not b.add(lab):
            raise ValueError("labels of the matching are not independent")
    return b


def _require_matching(h: LabelledHypergraph, m: Iterable[int]) -> Matching:
    m = frozenset(m)
    if not h.is_independent_matching(m):
        raise ValueError(f"{sorted(m)} is not an independent matching")
    return m


def extend_matching(h: LabelledHypergraph, m: Iterable[int]) -> int | None:
    """Lowest-id hyperedge that extends m to a larger independent matching, if any."""
    m = frozenset(m)
    used = h.covered_vertices(m)
    b = _independent_set(h, m)
    for e in h.edge_ids:
        if e in m or h._store.verts[e] & used:
            continue
        if not b.spans(h._store.labels[e]):
            return e
    return None


def greedy_extend(h: LabelledHypergraph, m: Iterable[int] = ()) -> Matching:
    """Extend m in one pass over the edges in id order; the result is inclusion-wise maximal."""
    m = set(m)
    used = set(h.covered_vertices(m))
    b = _independent_set(h, m)
    verts, labels = h._store.verts, h._store.labels
    for e in h.edge_ids:
        if e in m or verts[e] & used:
            continue
        if b.add(labels[e]):
            m.add(e)
            used |= verts[e]
    return frozenset(m)


def same_span_matchings(h: LabelledHypergraph, m: Iterable[int],
                        budget: SearchBudget | None = None) -> Iterator[Matching]:
    """Every independent matching of h whose label span equals that of m, in lexicographic id order."""
    m = frozenset(m)
    target = _independent_set(h, m)
    size = target.rank
    empty = h.matroid.independent_set()
    labels, verts = h._store.labels, h._store.verts
    cand = [e for e in h.edge_ids if target.spans(labels[e]) and not empty.spans(labels[e])]

    def rec(start: int, used: frozenset, b: IndependentSet, chosen: tuple) -> Iterator[Matching]:
        if budget is not None:
            budget.tick()
        if len(chosen) == size:
            yield frozenset(chosen)
            return
        need = size - len(chosen)
        for i in range(start, len(cand) - need + 1):
            e = cand[i]
            if verts[e] & used or b.spans(labels[e]):
                continue
            nb = b.copy()
            nb.add(labels[e])
            yield from rec(i + 1, used | verts[e], nb, chosen + (e,))

    yield from rec(0, frozenset(), empty, ())


def _swap_neighbours(h: LabelledHypergraph, m: Matching) -> Iterator[Matching]:
    """m itself, then every same-span matching differing from m in one edge."""
    yield m
    verts, labels = h._store.verts, h._store.labels
    span = _independent_set(h, m)
    for f in sorted(m):
        rest = m - {f}
        used = h.covered_vertices(rest)
        b = _independent_set(h, rest)
        for g in h.edge_ids:
            if g in m or verts[g] & used:
                continue
            lab = labels[g]
            if span.spans(lab) and not b.spans(lab):
                yield rest | {g}


def _find_extendable(h: LabelledHypergraph, m: Matching, mode: str,
                     budget: SearchBudget | None) -> tuple[Matching, int] | None:
    """A same-span matching of h that is not inclusion-wise maximal, with its extender."""
    pool = same_span_matchings(h, m, budget) if mode == EXACT else _swap_neighbours(h, m)
    for n in pool:
        ext = extend_matching(h, n)
        if ext is not None:
            return n, ext
    return None


@dataclass(frozen=True)
class MaximalMatching:
    matching: Matching
    certified: bool


def find_maximal_independent_matching(h: LabelledHypergraph, mode: str = EXACT,
                                      budget: SearchBudget | None = None,
                                      start: Iterable[int] = ()) -> MaximalMatching:
    """A maximal independent matching, grown from ``start``.

    Starting from a greedy inclusion-wise maximal matching, any same-span
    matching that can still be extended is replaced by its extension, which
    strictly increases the span; this stops after at most rank(M) rounds.
    Raises ResourceError in exact mode when the budget runs out.
    """
    _check_mode(mode)
    if mode == EXACT and budget is None:
        budget = SearchBudget()
    m = greedy_extend(h, start)
    full = h.label_rank()
    while True:
        if h.label_rank(m) == full:
            return MaximalMatching(m, True)
        found = _find_extendable(h, m, mode, budget)
        if found is None:
            return MaximalMatching(m, mode == EXACT)
        n, ext = found
        m = greedy_extend(h, n | {ext})


def is_maximal(h: LabelledHypergraph, m: Iterable[int], budget: SearchBudget | None = None) -> bool:
    """Exhaustive check of maximality."""
    m = _require_matching(h, m)
    return _find_extendable(h, m, EXACT, budget) is None


def _exchange(h: LabelledHypergraph, m: Matching, e: int, mode: str,
              budget: SearchBudget | None, trace: list | None) -> Matching | None:
    """One exchange step on m; None when no same-span matching of H - V(X) can be extended."""
    meet = h.meets(e, m)
    x = [e, *meet]
    sub = h.delete_vertices(h.covered_vertices(x))
    rest = m - frozenset(meet)
    found = _find_extendable(sub, rest, mode, budget)
    if found is None:
        return None
    mprime, estar = found
    m2 = mprime | frozenset(meet)
    matroid = h.matroid
    lab_star = h.label(estar)
    for eprime in meet:
        if not matroid.in_span(lab_star, h.labels(m2 - {eprime})):
            break
    else:
        raise NotMaximalError(
            f"hyperedge {estar} extends a matching with the same span as {sorted(m)}", m2 | {estar})
    out = (m2 - {eprime}) | {estar}
    if not h.is_independent_matching(out) or len(h.meets(e, out)) != len(meet) - 1:
        raise InternalConsistencyError(f"exchange produced an invalid matching {sorted(out)}")
    if trace is not None:
        trace.append(("exchange", len(meet), len(meet) - 1))
    return out


def _exchange_reduce(h: LabelledHypergraph, m: Iterable[int], e: int, mode: str,
                     budget: SearchBudget | None, trace: list | None) -> tuple[Matching, bool]:
    _check_mode(mode)
    m = _require_matching(h, m)
    if e not in h:
        raise KeyError(f"hyperedge {e!r} is not in this hypergraph")
    if h.matroid.in_span(h.label(e), h.labels(m)):
        raise ValueError(f"label of hyperedge {e} lies in the span of the matching")
    if not h.meets(e, m):
        raise NotMaximalError(f"hyperedge {e} extends {sorted(m)}", m | {e})
    if mode == EXACT and budget is None:
        budget = SearchBudget()
    while True:
        step = _exchange(h, m, e, mode, budget, trace)
        if step is not None:
            m = step
            continue
        if mode != EXACT:
            return m, False
        # The exchange fixed point need not minimise |e meets M| over all
        # same-span matchings; jump to the true minimiser and re-run.
        cur = len(h.meets(e, m))
        best = min(same_span_matchings(h, m, budget),
                   key=lambda n: (len(h.meets(e, n)), sorted(n)))
        best_count = len(h.meets(e, best))
        if best_count >= cur:
            return m, True
        if trace is not None:
            trace.append(("jump", cur, best_count))
        m = best


def exchange_reduce(h: LabelledHypergraph, m: Iterable[int], e: int, mode: str = EXACT,
                    budget: SearchBudget | None = None, trace: list | None = None) -> Matching:
    """Swap edges of m, keeping its span, until |e meets m| cannot be reduced further.

    m must be maximal and the label of e must lie outside its span. Each
    exchange step removes one edge meeting e. In exact mode the result
    minimises |e meets m| over all same-span matchings. ``trace``, when
    given, receives ``(kind, before, after)`` tuples.
    """
    return _exchange_reduce(h, m, e, mode, budget, trace)[0]


@dataclass(frozen=True)
class PeelResult:
    x: tuple[int, ...]
    k: int
    residual_matching: Matching
    matching: Matching
    certified: bool


def peel_step(h: LabelledHypergraph, m: Iterable[int], e: int, mode: str = EXACT,
              budget: SearchBudget | None = None, trace: list | None = None) -> PeelResult:
    m_star, certified = _exchange_reduce(h, m, e, mode, budget, trace)
    meet = h.meets(e, m_star)
    x = tuple(sorted([e, *meet]))
    return PeelResult(x, len(meet), m_star - frozenset(meet), m_star, certified)


@dataclass(frozen=True)
class SpanningMatchingResult:
    kind: str  # "full-rank" or "deficient"
    u: frozenset
    matching: Matching
    a: int
    rank: int
    r: int
    ell: int
    certified: bool
    degraded: bool = False
    peels: tuple[PeelResult, ...] = field(default=(), repr=False)

    @property
    def lemma_k(self) -> int:
        """The k of the deficient alternative: rank minus the final matching size."""
        return self.rank - len(self.matching)

    @property
    def within_budget(self) -> bool:
        return len(self.u) <= (2 * self.r - 1) * self.a

    @property
    def within_lemma_bound(self) -> bool:
        if self.kind == "full-rank":
            return not self.u
        return self.lemma_k >= 1 and len(self.u) <= (2 * self.r - 1) * (self.lemma_k - 1)


def spanning_matching(h: LabelledHypergraph, mode: str = EXACT,
                      budget: SearchBudget | None = None) -> SpanningMatchingResult:
    """Either a full-rank independent matching, or a deletion set U and a matching of H - U
    whose labels form a basis of the span of all labels left in H - U.

    Vertices of each peeled connected set X are added to U, so
    |U| <= (2r - 1) * a where a is the total number of matching edges peeled.
    """
    _check_mode(mode)
    d = h.matroid.rank
    if d < 1:
        raise ValueError("spanning_matching needs a matroid of rank at least 1")
    if budget is None:
        budget = SearchBudget()
    degraded = False

    def maximal(g, start=()):
        nonlocal mode, degraded
        try:
            return find_maximal_independent_matching(g, mode, budget, start)
        except ResourceError as exc:
            log.warning("%s; continuing in heuristic mode", exc)
            mode, degraded = HEURISTIC, True
            return find_maximal_independent_matching(g, mode, None, start)

    first = maximal(h)
    mm, certified = first.matching, first.certified
    ell = len(mm)
    if ell == d:
        return SpanningMatchingResult("full-rank", frozenset(), mm, 0, d, h.r, ell, certified, degraded)

    cur, u, a, peels = h, frozenset(), 0, []
    while True:
        b = _independent_set(cur, mm)
        if b.rank == cur.label_rank():
            break
        e = next(f for f in cur.edge_ids if not b.spans(cur._store.labels[f]))
        try:
            peel = peel_step(cur, mm, e, mode, budget if mode == EXACT else None)
        except NotMaximalError as exc:
            certified = False
            nxt = maximal(cur, exc.extension)
            mm = nxt.matching
            continue
        except ResourceError as exc:
            log.warning("%s; continuing in heuristic mode", exc)
            mode, degraded, certified = HEURISTIC, True, False
            continue
        peels.append(peel)
        vx = cur.covered_vertices(peel.x)
        u |= vx
        a += peel.k
        cur = cur.delete_vertices(vx)
        mm = peel.residual_matching
        certified = certified and peel.certified
        if not certified:
            mm = greedy_extend(cur, mm)

    res = SpanningMatchingResult("deficient", u, mm, a, d, h.r, ell, certified, degraded, tuple(peels))
    if certified and len(mm) != ell - a:
        raise InternalConsistencyError(f"matching size {len(mm)} != {ell} - {a}")
    if not res.within_budget:
        raise InternalConsistencyError(f"|U| = {len(u)} exceeds (2r-1)a = {(2 * h.r - 1) * a}")
    return res


@dataclass(frozen=True)
class BasisMatchingsResult:
    u: frozenset
    matchings: tuple[Matching, ...]
    lifted: SpanningMatchingResult = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.matchings)


def lift(h: LabelledHypergraph, m: int) -> tuple[LabelledHypergraph, int]:
    """m labelled copies of every edge, labelled in the m-fold direct sum.

    Copy i of edge e gets id ``i * stride + e`` and label ``(i, label(e))``.
    """
    ds = DirectSumMatroid([h.matroid] * m)
    stride = max(h.edge_ids, default=-1) + 1
    edges = {
        i * stride + e: (h.edge(e), ds.element(i, h.label(e)))
        for i in range(m) for e in h.edge_ids
    }
    return LabelledHypergraph(h.vertices, edges, ds, r=h.r), stride


def disjoint_basis_matchings(h: LabelledHypergraph, m: int, mode: str = EXACT,
                             budget: SearchBudget | None = None) -> BasisMatchingsResult:
    """U and m pairwise vertex-disjoint matchings of H - U, each a basis of span(labels of H - U)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    lifted, stride = lift(h, m)
    res = spanning_matching(lifted, mode, budget)
    parts = tuple(
        frozenset(x - i * stride for x in res.matching if x // stride == i) for i in range(m))
    return BasisMatchingsResult(res.u, parts, res)


def bf_best_independent_matching(h: LabelledHypergraph) -> Matching:
    """Largest independent matching by exhaustive search; lexicographically smallest among ties."""
    if len(h) > BRUTE_FORCE_EDGE_CAP:
        raise ResourceError(f"brute force is capped at {BRUTE_FORCE_EDGE_CAP} edges, got {len(h)}")
    verts, labels = h._store.verts, h._store.labels
    edges = list(h.edge_ids)
    best: tuple = ()

    def rec(start: int, used: frozenset, b: IndependentSet, chosen: tuple) -> None:
        nonlocal best
        if len(chosen) > len(best) or (len(chosen) == len(best) and chosen < best):
            best = chosen
        for i in range(start, len(edges)):
            e = edges[i]
            if verts[e] & used or b.spans(labels[e]):
                continue
            nb = b.copy()
            nb.add(labels[e])
            rec(i + 1, used | verts[e], nb, chosen + (e,))

    rec(0, frozenset(), h.matroid.independent_set(), ())
    return frozenset(best)
