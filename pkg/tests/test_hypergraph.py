import numpy as np
import pytest

from zsmatch.gf import FieldSpec
from zsmatch.hypergraph import LabelledHypergraph
from zsmatch.matroid import FreeMatroid, LinearMatroid
from zsmatch.oracles import bf_partition_connected
from zsmatch.stress import random_linear_hypergraph


@pytest.fixture
def path():
    # edges {1,2} {2,3} {4,5} {3,4}
    return LabelledHypergraph(range(1, 7), [({1, 2}, 0), ({2, 3}, 1), ({4, 5}, 2), ({3, 4}, 0)],
                              FreeMatroid(3))


def test_construction_validates():
    m = FreeMatroid(2)
    with pytest.raises(ValueError):
        LabelledHypergraph({1, 2}, [(set(), 0)], m)
    with pytest.raises(ValueError):
        LabelledHypergraph({1, 2}, [({1, 3}, 0)], m)
    with pytest.raises(ValueError):
        LabelledHypergraph({1, 2}, [({1, 2}, 5)], m)
    with pytest.raises(ValueError):
        LabelledHypergraph({1, 2, 3}, [({1, 2, 3}, 0)], m, r=2)


def test_multi_edges_allowed():
    h = LabelledHypergraph({1, 2}, [({1, 2}, 0), ({1, 2}, 0), ({1, 2}, 1)], FreeMatroid(2))
    assert h.edge_ids == (0, 1, 2)
    assert not h.is_matching([0, 1])


def test_delete_vertices_examples(path):
    assert path.delete_vertices(set()) == path
    empty = path.delete_vertices(path.vertices)
    assert empty.vertices == frozenset() and empty.edge_ids == ()
    h = path.delete_vertices({1})
    assert h.edge_ids == (1, 2, 3)
    assert h.label(3) == 0 and h.edge(3) == {3, 4}
    with pytest.raises(KeyError):
        path.delete_vertices({99})


def test_delete_vertices_composes():
    rng = np.random.default_rng(5)
    for _ in range(100):
        h = random_linear_hypergraph(rng)
        vs = sorted(h.vertices)
        a = set(rng.choice(vs, size=rng.integers(0, len(vs)), replace=False).tolist())
        rest = sorted(h.vertices - a)
        b = set(rng.choice(rest, size=rng.integers(0, len(rest) + 1), replace=False).tolist()) if rest else set()
        assert h.delete_vertices(a).delete_vertices(b).edge_ids == h.delete_vertices(a | b).edge_ids


def test_meets_examples(path):
    assert path.meets(2, [0]) == []
    assert path.meets(1, [1, 2]) == [1]
    h = LabelledHypergraph(range(1, 6), [({1, 2}, 0), ({2, 3}, 0), ({4, 5}, 0)], FreeMatroid(1))
    assert h.meets(0, [1, 2]) == [1]
    with pytest.raises(KeyError):
        h.meets(7, [1])


def test_edge_set_connected_examples(path):
    assert path.edge_set_connected([2])
    assert not path.edge_set_connected([0, 2])
    assert path.edge_set_connected([0, 1, 3, 2])
    with pytest.raises(ValueError):
        path.edge_set_connected([])


def test_edge_plus_its_meets_is_connected():
    rng = np.random.default_rng(6)
    for _ in range(200):
        h = random_linear_hypergraph(rng)
        e = int(rng.choice(h.edge_ids))
        m = [int(x) for x in rng.choice(h.edge_ids, size=rng.integers(0, len(h) + 1), replace=False)]
        assert h.edge_set_connected([e, *h.meets(e, m)])


def test_connectivity_matches_partition_check():
    rng = np.random.default_rng(7)
    for _ in range(300):
        h = random_linear_hypergraph(rng)
        k = int(rng.integers(1, min(6, len(h)) + 1))
        x = [int(e) for e in rng.choice(h.edge_ids, size=k, replace=False)]
        assert h.edge_set_connected(x) == bf_partition_connected(h, x)


def test_covered_vertices_examples(path):
    assert path.covered_vertices([]) == frozenset()
    assert path.covered_vertices([0, 1]) == {1, 2, 3}


def test_connected_sets_cover_few_vertices():
    rng = np.random.default_rng(8)
    seen = 0
    for _ in range(400):
        h = random_linear_hypergraph(rng)
        k = int(rng.integers(0, min(5, len(h))))
        x = [int(e) for e in rng.choice(h.edge_ids, size=k + 1, replace=False)]
        if h.edge_set_connected(x):
            seen += 1
            assert len(h.covered_vertices(x)) <= (h.r - 1) * k + h.r
    assert seen > 100


def test_matching_checks():
    spec = FieldSpec(2, 2)
    m = LinearMatroid.full_space(spec)
    h = LabelledHypergraph(range(6), [({0, 1}, 1), ({2, 3}, 2), ({4, 5}, 3), ({1, 2}, 2)], m)
    assert h.is_independent_matching([0, 1])
    assert not h.is_independent_matching([0, 1, 2])  # (0,1)+(1,0)+(1,1) dependent
    assert not h.is_matching([0, 3])
    sub = h.delete_vertices({4})
    assert sub.is_independent_matching([0, 1])
