import itertools

import numpy as np
import pytest

from zsmatch.errors import PipelineFailure, ResourceError
from zsmatch.gf import FieldSpec, is_additive_basis, span_of
from zsmatch.matching import EXACT, HEURISTIC
from zsmatch.zerosum import (LabelledDigraph, base_cycle, bf_zero_sum_cycle, count_linear_bases,
                             cycle_sum, default_m_schedule, find_zero_sum_cycle, gamma,
                             linear_bases, lower_bound_witness, probe_f, select_detours,
                             triple_hypergraph, verify_cycle)

F21 = FieldSpec(2, 1)
F22 = FieldSpec(2, 2)
F23 = FieldSpec(2, 3)
F31 = FieldSpec(3, 1)


def constant(spec, n, coords):
    w = np.zeros((n, n, spec.d), dtype=np.int64)
    w[:, :] = coords
    return LabelledDigraph(spec, w)


def test_digraph_validation():
    with pytest.raises(ValueError):
        LabelledDigraph(F22, np.zeros((3, 3, 1), dtype=int))
    with pytest.raises(ValueError):
        LabelledDigraph(F22, np.full((3, 3, 2), 2))
    dg = constant(F21, 3, [1])
    assert dg.w[0, 0, 0] == 0  # diagonal ignored
    with pytest.raises(ValueError):
        dg.arc(1, 1)
    with pytest.raises(ValueError):
        dg.w[0, 1, 0] = 0


def test_from_arcs_requires_every_arc():
    with pytest.raises(ValueError):
        LabelledDigraph.from_arcs(F21, 2, {(0, 1): (1,)})
    dg = LabelledDigraph.from_arcs(F21, 2, {(0, 1): (1,), (1, 0): (0,)})
    assert dg.arc(0, 1).coords == (1,) and dg.arc(1, 0).coords == (0,)


def test_verify_cycle_examples():
    dg = LabelledDigraph.from_arcs(F21, 2, {(0, 1): (1,), (1, 0): (1,)})
    assert verify_cycle(dg, [0, 1])
    odd = constant(F21, 3, [1])
    assert not verify_cycle(odd, [0, 1, 2])
    assert verify_cycle(odd, [0, 2])
    with pytest.raises(ValueError):
        verify_cycle(odd, [0, 1, 0])
    with pytest.raises(ValueError):
        verify_cycle(odd, [0])
    with pytest.raises(ValueError):
        verify_cycle(odd, [0, 3])


def test_triple_hypergraph_examples():
    zero = constant(F22, 3, [0, 0])
    th = triple_hypergraph(zero)
    assert len(th.hypergraph) == 6
    assert all(th.label(e).is_zero for e in th.hypergraph.edge_ids)
    rng = np.random.default_rng(3)
    dg = LabelledDigraph.random(F23, 4, rng)
    th = triple_hypergraph(dg)
    assert len(th.hypergraph) == 24 and th.hypergraph.r == 3
    for e, (x, y, z) in enumerate(th.triples):
        assert th.hypergraph.edge(e) == {x, y, z}
        assert th.label(e) == dg.arc(x, y) + dg.arc(y, z) - dg.arc(x, z)
    with pytest.raises(ValueError):
        triple_hypergraph(constant(F21, 2, [1]))


def test_triple_labels_match_gamma_on_random_instances():
    rng = np.random.default_rng(4)
    for p, d in [(3, 2), (5, 1)]:
        spec = FieldSpec(p, d)
        dg = LabelledDigraph.random(spec, 6, rng)
        th = triple_hypergraph(dg)
        for e, t in enumerate(th.triples):
            assert th.label(e) == gamma(dg, *t)


def test_detour_changes_sum_by_gamma():
    rng = np.random.default_rng(5)
    spec = FieldSpec(3, 2)
    for _ in range(200):
        dg = LabelledDigraph.random(spec, 7, rng)
        c = [int(v) for v in rng.permutation(7)[: rng.integers(3, 8)]]
        i = int(rng.integers(0, len(c) - 1))
        x, y, z = c[i], c[i + 1], c[(i + 2) % len(c)]
        short = c[: i + 1] + c[i + 2:]
        assert cycle_sum(dg, c) == cycle_sum(dg, short) + gamma(dg, x, y, z)


def test_base_cycle_single_triple():
    rng = np.random.default_rng(6)
    dg = LabelledDigraph.random(F22, 5, rng)
    b = base_cycle(dg, [(0, 1, 2)])
    assert b.vertices == (0, 2)
    assert b.a == dg.arc(0, 2) + dg.arc(2, 0)
    with pytest.raises(ValueError):
        base_cycle(dg, [])
    with pytest.raises(ValueError):
        base_cycle(dg, [(0, 1, 2), (2, 3, 4)])


def test_base_cycle_telescopes():
    rng = np.random.default_rng(7)
    spec = FieldSpec(5, 2)
    for _ in range(100):
        dg = LabelledDigraph.random(spec, 9, rng)
        k = int(rng.integers(1, 4))
        vs = [int(v) for v in rng.permutation(9)[: 3 * k]]
        triples = [tuple(vs[3 * i: 3 * i + 3]) for i in range(k)]
        b = base_cycle(dg, triples)  # raises if the identity fails
        assert b.a == cycle_sum(dg, b.vertices)


def test_select_detours_examples():
    assert select_detours([F22.vector((1, 0))], F22.zero()) == []
    labs = [F22.vector((1, 0)), F22.vector((0, 1))]
    assert select_detours(labs, F22.vector((1, 1))) == [0, 1]
    ones = [F31.vector((1,))] * 2
    assert select_detours(ones, F31.vector((2,))) == [0, 1]
    with pytest.raises(PipelineFailure):
        select_detours([F31.vector((1,))], F31.vector((2,)))


def test_select_detours_random():
    rng = np.random.default_rng(8)
    for p, d in [(2, 3), (3, 2), (5, 2)]:
        spec = FieldSpec(p, d)
        for _ in range(100):
            labs = [spec.vector(rng.integers(0, p, d)) for _ in range(int(rng.integers(1, 7)))]
            t = spec.vector(rng.integers(0, p, d))
            try:
                idx = select_detours(labs, t)
            except PipelineFailure:
                continue
            acc = spec.zero()
            for i in idx:
                acc = acc + labs[i]
            assert acc == t and len(set(idx)) == len(idx)


def test_all_three_vertex_z2_labellings_have_zero_cycle():
    for bits in itertools.product((0, 1), repeat=6):
        arcs = dict(zip(itertools.permutations(range(3), 2), ((b,) for b in bits)))
        dg = LabelledDigraph.from_arcs(F21, 3, arcs)
        found = bf_zero_sum_cycle(dg)
        assert found is not None and verify_cycle(dg, found.vertices)


def test_two_vertex_z2_counterexample():
    dg = LabelledDigraph.from_arcs(F21, 2, {(0, 1): (1,), (1, 0): (0,)})
    assert bf_zero_sum_cycle(dg) is None


def test_bf_zero_sum_cycle_order():
    dg = constant(F21, 4, [1])
    assert bf_zero_sum_cycle(dg).vertices == (0, 1)
    with pytest.raises(ResourceError):
        bf_zero_sum_cycle(constant(F21, 9, [0]))


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2)])
def test_lower_bound_witness_has_no_zero_cycle(p, d):
    spec = FieldSpec(p, d)
    dg = lower_bound_witness(spec)
    assert dg.n == (p - 1) * d
    assert bf_zero_sum_cycle(dg) is None


def test_default_m_schedule():
    assert default_m_schedule(F23, 15) == [1]
    assert default_m_schedule(F23, 30) == [1, 2]
    assert default_m_schedule(F31, 30) == [2, 3, 4, 5, 6]
    assert default_m_schedule(FieldSpec(3, 4), 10) == [5]


def test_pipeline_on_zero_labelling():
    dg = constant(F23, 6, [0, 0, 0])
    out = find_zero_sum_cycle(dg)
    assert out.route == "digon" and out.vertices == (0, 1) and out.sum.is_zero


def test_pipeline_all_ones_z2():
    dg = constant(F21, 5, [1])
    out = find_zero_sum_cycle(dg)
    assert verify_cycle(dg, out.vertices) and out.length % 2 == 0


@pytest.mark.parametrize("mode", [EXACT, HEURISTIC])
def test_pipeline_random_z2_cubed(mode):
    rng = np.random.default_rng(9)
    for _ in range(30):
        dg = LabelledDigraph.random(F23, 15, rng)
        out = find_zero_sum_cycle(dg, mode=mode)
        assert verify_cycle(dg, out.vertices)
        assert out.u_size <= 5 * (3 * out.m_used - 1)


def test_pipeline_odd_prime():
    rng = np.random.default_rng(10)
    for _ in range(5):
        dg = LabelledDigraph.random(F31, 30, rng)
        out = find_zero_sum_cycle(dg)
        assert verify_cycle(dg, out.vertices)


def test_pipeline_failure_names_m():
    dg = lower_bound_witness(F23)
    with pytest.raises(PipelineFailure, match="largest m attempted = 1"):
        find_zero_sum_cycle(dg)


def test_linear_bases_count():
    for p, d in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
        spec = FieldSpec(p, d)
        bases = linear_bases(spec)
        assert len(bases) == count_linear_bases(spec)
        assert all(span_of(b, spec).dimension == d for b in bases)


def test_single_basis_over_f2_is_additive():
    for b in linear_bases(F23):
        assert is_additive_basis(b, span_of(b))


def test_probe_f_small():
    assert probe_f(F31).value == 2 and probe_f(F31).exact
    assert probe_f(F22).value == 1
    with pytest.raises(ResourceError):
        probe_f(FieldSpec(3, 20))
