"""Brute-force oracles, deliberately independent of the elimination and search code.

Spans are computed by enumerating every linear combination, and matchings
by iterating over ``itertools.combinations``. Only for desk-scale inputs.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .hypergraph import LabelledHypergraph
from .matroid import DirectSumMatroid, FreeMatroid, LinearMatroid, Matroid


def bf_span(vectors: Sequence[Sequence[int]], p: int, d: int) -> frozenset:
    """Every F_p-linear combination of ``vectors``, grown by closing under each new vector."""
    out = {(0,) * d}
    for v in vectors:
        out = {tuple((a + c * b) % p for a, b in zip(s, v)) for s in out for c in range(p)}
    return frozenset(out)


def bf_rank(vectors: Sequence[Sequence[int]], p: int, d: int) -> int:
    size = len(bf_span(vectors, p, d))
    r = 0
    while p**r < size:
        r += 1
    return r


def bf_independent(matroid: Matroid, elements: Sequence[int]) -> bool:
    elements = list(elements)
    if len(set(elements)) != len(elements):
        return False
    if isinstance(matroid, FreeMatroid):
        return True
    if isinstance(matroid, LinearMatroid):
        vs = [matroid.vectors[x] for x in elements]
        return bf_rank(vs, matroid.spec.p, matroid.spec.d) == len(vs)
    if isinstance(matroid, DirectSumMatroid):
        slices: dict[int, list[int]] = {}
        for x in elements:
            i, inner = matroid.tag(x)
            slices.setdefault(i, []).append(inner)
        return all(bf_independent(matroid.summands[i], s) for i, s in slices.items())
    raise TypeError(f"no brute-force oracle for {type(matroid).__name__}")


def bf_span_key(matroid: Matroid, elements: Iterable[int]):
    """A value that is equal for two element sets exactly when their spans are equal."""
    elements = list(elements)
    if isinstance(matroid, FreeMatroid):
        return frozenset(elements)
    if isinstance(matroid, LinearMatroid):
        return bf_span([matroid.vectors[x] for x in elements], matroid.spec.p, matroid.spec.d)
    if isinstance(matroid, DirectSumMatroid):
        slices: dict[int, list[int]] = {i: [] for i in range(len(matroid.summands))}
        for x in elements:
            i, inner = matroid.tag(x)
            slices[i].append(inner)
        return tuple(bf_span_key(matroid.summands[i], s) for i, s in sorted(slices.items()))
    raise TypeError(f"no brute-force oracle for {type(matroid).__name__}")


def _is_matching(h: LabelledHypergraph, m: Sequence[int]) -> bool:
    seen = set()
    for e in m:
        vs = h.edge(e)
        if seen & vs:
            return False
        seen |= vs
    return bf_independent(h.matroid, h.labels(m))


def bf_independent_matchings(h: LabelledHypergraph, max_size: int | None = None) -> list[frozenset]:
    """Every independent matching of h (including the empty one)."""
    top = h.matroid.rank if max_size is None else max_size
    out = []
    for k in range(min(top, len(h)) + 1):
        for combo in itertools.combinations(h.edge_ids, k):
            if _is_matching(h, combo):
                out.append(frozenset(combo))
    return out


def bf_extends(h: LabelledHypergraph, m: frozenset) -> bool:
    return any(e not in m and _is_matching(h, sorted(m | {e})) for e in h.edge_ids)


def bf_same_span(h: LabelledHypergraph, m: frozenset, matchings=None) -> list[frozenset]:
    key = bf_span_key(h.matroid, h.labels(m))
    pool = bf_independent_matchings(h) if matchings is None else matchings
    return [n for n in pool if len(n) == len(m) and bf_span_key(h.matroid, h.labels(n)) == key]


def bf_is_maximal(h: LabelledHypergraph, m: Iterable[int]) -> bool:
    m = frozenset(m)
    return not any(bf_extends(h, n) for n in bf_same_span(h, m))


def bf_min_meet(h: LabelledHypergraph, m: Iterable[int], e: int) -> int:
    """min |e meets N| over independent matchings N with the span of m."""
    ve = h.edge(e)
    return min(sum(1 for f in n if h.edge(f) & ve) for n in bf_same_span(h, frozenset(m)))


def bf_is_basis_of_residual(h: LabelledHypergraph, u: Iterable[int], m: Iterable[int]) -> bool:
    """m is an independent matching of H - U whose labels span everything H - U carries."""
    sub = h.delete_vertices(u)
    m = sorted(m)
    if any(e not in sub for e in m) or not _is_matching(sub, m):
        return False
    return bf_span_key(h.matroid, h.labels(m)) == bf_span_key(h.matroid, sub.labels())


def bf_partition_connected(h: LabelledHypergraph, x: Sequence[int]) -> bool:
    """Connectivity by checking every bipartition of V(X)."""
    vs = sorted(h.covered_vertices(x))
    edges = [h.edge(e) for e in x]
    for mask in range(1, 2 ** (len(vs) - 1)):
        a = {v for i, v in enumerate(vs) if mask >> i & 1}
        if not any(e & a and e - a for e in edges):
            return False
    return True


def bf_rainbow_matching(h: LabelledHypergraph) -> frozenset | None:
    """A matching using one edge of every colour 0..k-1 (free-matroid labels), if one exists."""
    k = h.matroid.size
    by_colour = [[e for e in h.edge_ids if h.label(e) == c] for c in range(k)]
    for choice in itertools.product(*by_colour):
        seen = set()
        for e in choice:
            if seen & h.edge(e):
                break
            seen |= h.edge(e)
        else:
            return frozenset(choice)
    return None
