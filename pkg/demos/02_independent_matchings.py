"""
Independent matchings in a labelled hypergraph
==============================================

"""

import numpy as np

from zsmatch.gf import FieldSpec
from zsmatch.hypergraph import LabelledHypergraph
from zsmatch.matching import (HEURISTIC, exchange_reduce, find_maximal_independent_matching,
                              greedy_extend, is_maximal, peel_step, spanning_matching)
from zsmatch.matroid import LinearMatroid
from zsmatch.stress import random_linear_hypergraph

# Labels are vectors of Z_2^2; the matroid is the whole space, element id = vector code
spec = FieldSpec(2, 2)
full = LinearMatroid.full_space(spec)
h = LabelledHypergraph({1, 2, 3}, [({1, 2}, spec.encode((1, 0))), ({2, 3}, spec.encode((0, 1)))], full)

# {a} cannot be extended, and no other matching spans <(1,0)>: it is maximal
res = find_maximal_independent_matching(h)
print("maximal:", sorted(res.matching), "certified:", res.certified)

# e = {2,3} carries a label outside the span, so it peels off X = {a, e}
peel = peel_step(h, res.matching, 1)
print("X =", peel.x, "k =", peel.k, "residual =", sorted(peel.residual_matching))

# Rank 2 is not reachable, so we get a small deletion set U instead
out = spanning_matching(h)
print(out.kind, "U =", sorted(out.u), "a =", out.a, "budget ok:", out.within_budget)

# Greedy is not enough: a same-span swap can make room for another edge
lm = LinearMatroid(spec, [(1, 0), (1, 0), (0, 1)])
g = LabelledHypergraph(range(5), [({0, 1}, 0), ({2, 3}, 1), ({0, 4}, 2)], lm)
print("greedy", sorted(greedy_extend(g)), "maximal?", is_maximal(g, greedy_extend(g)))
print("found", sorted(find_maximal_independent_matching(g).matching))

# The exchange loop on its own can stall above the minimum number of meets;
# exact mode finishes with a search over same-span matchings
f23 = FieldSpec(2, 3)
lm = LinearMatroid(f23, [(0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 0, 0), (0, 1, 0)])
s = LabelledHypergraph(range(1, 7), [({1, 2}, 0), ({1, 3}, 1), ({2, 4}, 2), ({1, 5}, 3), ({4, 6}, 4)], lm)
trace = []
print("heuristic", sorted(exchange_reduce(s, {1, 2}, 0, HEURISTIC)))
print("exact", sorted(exchange_reduce(s, {1, 2}, 0, trace=trace)), trace)

# On random instances the deletion set stays inside (2r-1)(k-1)
rng = np.random.default_rng(1)
for _ in range(5):
    h = random_linear_hypergraph(rng)
    r = spanning_matching(h)
    print(r.kind, "rank", r.rank, "|M|", len(r.matching), "|U|", len(r.u), "bound ok", r.within_lemma_bound)
