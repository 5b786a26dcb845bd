"""Randomised property suites for the matching lemmas.

Each trial draws its instance from ``numpy.random.default_rng(seed + trial)``
and is checked against the brute-force oracles in :mod:`zsmatch.oracles`.
A trial returns a CSV row, a list of violations, and a JSON-able instance
for replay.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import oracles
from .gf import FieldSpec
from .hypergraph import LabelledHypergraph
from .matching import (EXACT, disjoint_basis_matchings, exchange_reduce,
                       find_maximal_independent_matching, peel_step, spanning_matching)
from .matroid import FreeMatroid, LinearMatroid, Matroid
from .zerosum import probe_f

SUITES = ("haxell", "lemma31", "lemma32", "lemma33", "fprobe")


def random_linear_hypergraph(rng: np.random.Generator, max_vertices: int = 10, max_edges: int = 12,
                             max_r: int = 3, p: int = 2, max_d: int = 3) -> LabelledHypergraph:
    """Random hypergraph labelled in the full-space matroid of Z_p^d."""
    n = int(rng.integers(3, max_vertices + 1))
    n_edges = int(rng.integers(1, max_edges + 1))
    r = int(rng.integers(2, max_r + 1))
    d = int(rng.integers(1, max_d + 1))
    spec = FieldSpec(p, d)
    edges = []
    for _ in range(n_edges):
        size = int(rng.integers(1, r + 1))
        verts = rng.choice(n, size=size, replace=False).tolist()
        edges.append((verts, int(rng.integers(0, spec.size))))
    return LabelledHypergraph(range(n), edges, LinearMatroid.full_space(spec), r=r)


def random_coloured_hypergraph(rng: np.random.Generator, max_vertices: int = 12, max_edges: int = 14,
                               max_colours: int = 4) -> LabelledHypergraph:
    """Random 3-uniform hypergraph with colours 0..k-1 as free-matroid labels."""
    n = int(rng.integers(3, max_vertices + 1))
    k = int(rng.integers(1, max_colours + 1))
    n_edges = int(rng.integers(1, max_edges + 1))
    edges = [(rng.choice(n, size=3, replace=False).tolist(), int(rng.integers(0, k)))
             for _ in range(n_edges)]
    return LabelledHypergraph(range(n), edges, FreeMatroid(k), r=3)


def hypergraph_to_json(h: LabelledHypergraph) -> dict:
    m = h.matroid
    if isinstance(m, LinearMatroid):
        mat = {"kind": "linear", "p": m.spec.p, "d": m.spec.d}
    elif isinstance(m, FreeMatroid):
        mat = {"kind": "free", "size": m.size}
    else:
        raise TypeError(f"cannot serialise {type(m).__name__}")
    return {
        "vertices": sorted(h.vertices),
        "r": h.r,
        "matroid": mat,
        "edges": {str(e): [sorted(h.edge(e)), h.label(e)] for e in h.edge_ids},
    }


def hypergraph_from_json(data: dict) -> LabelledHypergraph:
    mat = data["matroid"]
    matroid: Matroid
    if mat["kind"] == "linear":
        matroid = LinearMatroid.full_space(FieldSpec(mat["p"], mat["d"]))
    else:
        matroid = FreeMatroid(mat["size"])
    edges = {int(e): (vs, lab) for e, (vs, lab) in data["edges"].items()}
    return LabelledHypergraph(data["vertices"], edges, matroid, r=data["r"])


@dataclass
class TrialResult:
    row: dict
    violations: list[str] = field(default_factory=list)
    instance: dict | None = None


def _base_row(suite: str, trial: int, seed: int, h: LabelledHypergraph) -> dict:
    return {"suite": suite, "trial": trial, "seed": seed, "vertices": len(h.vertices),
            "edges": len(h), "rank": h.matroid.rank, "r": h.r}


def check_spanning(h: LabelledHypergraph, res) -> list[str]:
    bad = []
    if res.degraded or not res.certified:
        bad.append("exact mode did not certify the result")
    if res.kind == "full-rank":
        if res.u or len(res.matching) != h.matroid.rank:
            bad.append("full-rank result without a rank-sized matching")
        if not oracles.bf_is_basis_of_residual(h, (), res.matching):
            bad.append("full-rank matching is not independent")
    else:
        k = res.lemma_k
        if k < 1:
            bad.append(f"deficient result with k = {k}")
        if len(res.u) > (2 * h.r - 1) * (k - 1):
            bad.append(f"|U| = {len(res.u)} > (2r-1)(k-1) = {(2 * h.r - 1) * (k - 1)}")
        if len(res.u) > (2 * h.r - 1) * res.a:
            bad.append(f"|U| = {len(res.u)} > (2r-1)a")
        if not oracles.bf_is_basis_of_residual(h, res.u, res.matching):
            bad.append("matching labels are not a basis of span(labels of H - U)")
    return bad


def trial_lemma32(trial: int, seed: int) -> TrialResult:
    h = random_linear_hypergraph(np.random.default_rng(seed + trial))
    res = spanning_matching(h, EXACT)
    row = _base_row("lemma32", trial, seed, h)
    row.update(kind=res.kind, u_size=len(res.u), a=res.a, k=res.lemma_k)
    return TrialResult(row, check_spanning(h, res), hypergraph_to_json(h))


def trial_lemma31(trial: int, seed: int, max_edges: int = 20, attempts: int = 50) -> TrialResult:
    rng = np.random.default_rng(seed + trial)
    for _ in range(attempts):
        h = random_linear_hypergraph(rng, max_vertices=10, max_edges=max_edges)
        mm = find_maximal_independent_matching(h, EXACT).matching
        b = h.matroid.independent_set()
        for lab in h.labels(mm):
            b.add(lab)
        witnesses = [e for e in h.edge_ids if not b.spans(h.label(e))]
        if witnesses:
            break
    else:
        row = {"suite": "lemma31", "trial": trial, "seed": seed, "kind": "skipped"}
        return TrialResult(row)
    e = witnesses[0]
    bad = []
    if not oracles.bf_is_maximal(h, mm):
        bad.append("starting matching is not maximal")
    trace: list = []
    m_star = exchange_reduce(h, mm, e, EXACT, trace=trace)
    if any(kind == "exchange" and after != before - 1 for kind, before, after in trace):
        bad.append(f"an exchange step did not remove exactly one edge: {trace}")
    if oracles.bf_span_key(h.matroid, h.labels(m_star)) != oracles.bf_span_key(h.matroid, h.labels(mm)):
        bad.append("exchange changed the span")
    best = oracles.bf_min_meet(h, mm, e)
    got = len(h.meets(e, m_star))
    if got != best:
        bad.append(f"|e meets M*| = {got}, brute-force minimum is {best}")
    peel = peel_step(h, mm, e, EXACT)
    vx = h.covered_vertices(peel.x)
    if len(peel.x) != peel.k + 1 or peel.k < 1:
        bad.append(f"|X| = {len(peel.x)} with k = {peel.k}")
    if not (h.edge_set_connected(peel.x) and oracles.bf_partition_connected(h, peel.x)):
        bad.append("X is not connected")
    if len(vx) > (h.r - 1) * peel.k + h.r:
        bad.append(f"|V(X)| = {len(vx)} > (r-1)k + r")
    if len(peel.residual_matching) != len(mm) - peel.k:
        bad.append("residual matching has the wrong size")
    if not peel.certified or not oracles.bf_is_maximal(h.delete_vertices(vx), peel.residual_matching):
        bad.append("residual matching is not maximal in H - V(X)")
    row = _base_row("lemma31", trial, seed, h)
    row.update(kind="exchange", ell=len(mm), k=peel.k, min_meet=best, steps=len(trace))
    return TrialResult(row, bad, hypergraph_to_json(h))


def trial_lemma33(trial: int, seed: int, m: int = 2) -> TrialResult:
    h = random_linear_hypergraph(np.random.default_rng(seed + trial))
    res = disjoint_basis_matchings(h, m, EXACT)
    d = h.matroid.rank
    bad = []
    if res.lifted.degraded or not res.lifted.certified:
        bad.append("exact mode did not certify the result")
    used: set = set()
    for mi in res.matchings:
        vs = h.covered_vertices(mi)
        if vs & used:
            bad.append("matchings are not pairwise vertex-disjoint")
        used |= vs
        if not oracles.bf_is_basis_of_residual(h, res.u, mi):
            bad.append(f"matching {sorted(mi)} is not a basis of span(labels of H - U)")
    bound = (2 * h.r - 1) * (d * m - 1)
    if len(res.u) > bound:
        bad.append(f"|U| = {len(res.u)} > (2r-1)(dm-1) = {bound}")
    if res.lifted.rank != d * m:
        bad.append("lifted matroid rank is not d*m")
    row = _base_row("lemma33", trial, seed, h)
    row.update(kind=res.lifted.kind, u_size=len(res.u), m=m)
    return TrialResult(row, bad, hypergraph_to_json(h))


def trial_haxell(trial: int, seed: int) -> TrialResult:
    h = random_coloured_hypergraph(np.random.default_rng(seed + trial))
    res = spanning_matching(h, EXACT)
    rainbow = oracles.bf_rainbow_matching(h)
    d = h.matroid.rank
    bad = check_spanning(h, res)
    if (res.kind == "full-rank") != (rainbow is not None):
        bad.append(f"verdict {res.kind} but brute-force rainbow matching = {rainbow}")
    if res.kind == "deficient":
        colours = set(h.delete_vertices(res.u).labels())
        if len(colours) > d - res.lemma_k:
            bad.append(f"{len(colours)} colours left in H - U, more than d - k = {d - res.lemma_k}")
    row = _base_row("haxell", trial, seed, h)
    row.update(kind=res.kind, u_size=len(res.u), k=res.lemma_k, rainbow=int(rainbow is not None))
    return TrialResult(row, bad, hypergraph_to_json(h))


TRIALS = {
    "haxell": trial_haxell,
    "lemma31": trial_lemma31,
    "lemma32": trial_lemma32,
    "lemma33": trial_lemma33,
}


def run_suite(suite: str, trials: int, seed: int) -> list[TrialResult]:
    if suite not in TRIALS:
        raise ValueError(f"unknown suite {suite!r}")
    fn = TRIALS[suite]
    return [fn(t, seed) for t in range(trials)]


def run_fprobe(p: int, d: int, trials: int, seed: int) -> TrialResult:
    spec = FieldSpec(p, d)
    res = probe_f(spec, trials, seed)
    row = {"suite": "fprobe", "p": p, "d": d, "value": res.value, "exact": int(res.exact),
           "tuples_checked": res.tuples_checked}
    return TrialResult(row)


def dump_instance(result: TrialResult) -> str:
    return json.dumps({"row": result.row, "violations": result.violations,
                       "instance": result.instance}, indent=1)
