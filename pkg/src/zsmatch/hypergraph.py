"""Multi-hypergraphs whose hyperedges carry matroid elements as labels."""

from __future__ import annotations

from typing import Iterable, Mapping

from .matroid import Matroid

Matching = frozenset  # of hyperedge ids


class _EdgeStore:
    """Edge data shared by a hypergraph and all of its vertex-deleted views."""

    __slots__ = ("verts", "labels")

    def __init__(self, verts: dict[int, frozenset], labels: dict[int, int]):
        self.verts = verts
        self.labels = labels


class LabelledHypergraph:
    """A multi-hypergraph H with a hyperedge labelling into ``matroid``.

    ``edges`` maps hyperedge id to ``(vertex collection, label)``; a plain
    sequence is accepted and numbered from 0. Set-valued answers come back
    in ascending id order. :meth:`delete_vertices` returns a view that
    shares edge data with its parent.
    """

    def __init__(self, vertices: Iterable[int], edges, matroid: Matroid, r: int | None = None):
        if isinstance(edges, Mapping):
            items = sorted(edges.items())
        else:
            items = list(enumerate(edges))
        vertices = frozenset(vertices)
        verts, labels = {}, {}
        for eid, (vs, label) in items:
            vs = frozenset(vs)
            if not vs:
                raise ValueError(f"edge {eid} is empty")
            if not vs <= vertices:
                raise ValueError(f"edge {eid} has endpoints outside the vertex set: {sorted(vs - vertices)}")
            if not (isinstance(label, int) and 0 <= label < matroid.size):
                raise ValueError(f"edge {eid} label {label!r} is not a matroid element")
            verts[eid] = vs
            labels[eid] = label
        max_size = max((len(v) for v in verts.values()), default=1)
        if r is None:
            r = max_size
        elif max_size > r:
            raise ValueError(f"an edge has {max_size} vertices but r = {r}")
        self._init_view(vertices, tuple(sorted(verts)), _EdgeStore(verts, labels), matroid, r)

    def _init_view(self, vertices, edge_ids, store, matroid, r):
        self.vertices = vertices
        self.edge_ids = edge_ids
        self._store = store
        self._ids = frozenset(edge_ids)
        self.matroid = matroid
        self.r = r

    @classmethod
    def _view(cls, parent: LabelledHypergraph, vertices, edge_ids) -> LabelledHypergraph:
        h = cls.__new__(cls)
        h._init_view(vertices, edge_ids, parent._store, parent.matroid, parent.r)
        return h

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __contains__(self, eid: int) -> bool:
        return eid in self._ids

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelledHypergraph):
            return NotImplemented
        return (self._store is other._store and self.vertices == other.vertices
                and self.edge_ids == other.edge_ids)

    def __hash__(self):
        return hash((id(self._store), self.vertices, self.edge_ids))

    def __repr__(self) -> str:
        return f"LabelledHypergraph(|V|={len(self.vertices)}, |E|={len(self.edge_ids)}, r={self.r})"

    def _require(self, eids: Iterable[int]) -> list[int]:
        eids = list(eids)
        for e in eids:
            if e not in self._ids:
                raise KeyError(f"hyperedge {e!r} is not in this hypergraph")
        return eids

    def edge(self, eid: int) -> frozenset:
        self._require([eid])
        return self._store.verts[eid]

    def label(self, eid: int) -> int:
        self._require([eid])
        return self._store.labels[eid]

    def labels(self, eids: Iterable[int] | None = None) -> list[int]:
        if eids is None:
            eids = self.edge_ids
        lab = self._store.labels
        return [lab[e] for e in self._require(eids)]

    def delete_vertices(self, u: Iterable[int]) -> LabelledHypergraph:
        """H - U: drop the vertices in u and every hyperedge meeting them."""
        u = frozenset(u)
        if not u <= self.vertices:
            raise KeyError(f"unknown vertices: {sorted(u - self.vertices)}")
        if not u:
            return self
        verts = self._store.verts
        kept = tuple(e for e in self.edge_ids if not verts[e] & u)
        return LabelledHypergraph._view(self, self.vertices - u, kept)

    def meets(self, e: int, m: Iterable[int]) -> list[int]:
        """The edges of m sharing a vertex with e."""
        ve = self.edge(e)
        verts = self._store.verts
        return sorted(f for f in self._require(m) if verts[f] & ve)

    def covered_vertices(self, x: Iterable[int]) -> frozenset:
        verts = self._store.verts
        out = frozenset()
        for e in self._require(x):
            out |= verts[e]
        return out

    def edge_set_connected(self, x: Iterable[int]) -> bool:
        """Whether the subhypergraph formed by x and V(x) is connected (union-find)."""
        x = self._require(x)
        if not x:
            raise ValueError("connectivity of an empty edge set is undefined")
        parent: dict[int, int] = {}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        verts = self._store.verts
        for e in x:
            vs = iter(verts[e])
            root = next(vs)
            parent.setdefault(root, root)
            root = find(root)
            for v in vs:
                parent.setdefault(v, v)
                rv = find(v)
                if rv != root:
                    parent[rv] = root
        return len({find(v) for v in parent}) == 1

    def is_matching(self, m: Iterable[int]) -> bool:
        """Pairwise vertex-disjoint with pairwise distinct labels."""
        m = self._require(m)
        seen_v, seen_l = set(), set()
        for e in m:
            vs = self._store.verts[e]
            lab = self._store.labels[e]
            if vs & seen_v or lab in seen_l:
                return False
            seen_v |= vs
            seen_l.add(lab)
        return True

    def is_independent_matching(self, m: Iterable[int]) -> bool:
        m = list(m)
        return self.is_matching(m) and self.matroid.is_independent(self.labels(m))

    def label_rank(self, eids: Iterable[int] | None = None) -> int:
        return self.matroid.rank_of(self.labels(eids))


def delete_vertices(h: LabelledHypergraph, u: Iterable[int]) -> LabelledHypergraph:
    return h.delete_vertices(u)


def meets(h: LabelledHypergraph, e: int, m: Iterable[int]) -> list[int]:
    return h.meets(e, m)


def edge_set_connected(h: LabelledHypergraph, x: Iterable[int]) -> bool:
    return h.edge_set_connected(x)


def covered_vertices(h: LabelledHypergraph, x: Iterable[int]) -> frozenset:
    return h.covered_vertices(x)
