"""
Zero-sum cycles in Z_p^d-labelled complete digraphs
===================================================

"""

import numpy as np

from zsmatch.gf import FieldSpec
from zsmatch.zerosum import (LabelledDigraph, bf_zero_sum_cycle, find_zero_sum_cycle,
                             lower_bound_witness, probe_f, triple_hypergraph, verify_cycle)

# A random labelling of the complete digraph on 5d vertices
spec = FieldSpec(2, 3)
rng = np.random.default_rng(3)
dg = LabelledDigraph.random(spec, 15, rng)

# The triple hypergraph has one edge per ordered triple (x, y, z),
# labelled w(x,y) + w(y,z) - w(x,z): the change from detouring through y
th = triple_hypergraph(dg)
print(len(th.hypergraph), "triples")

wit = find_zero_sum_cycle(dg)
print("cycle", wit.vertices, "sum", wit.sum, "route", wit.route, "m", wit.m_used, "|U|", wit.u_size)
print("verified:", verify_cycle(dg, wit.vertices))

# Odd p needs several disjoint bases before their union is an additive basis
spec = FieldSpec(3, 1)
dg = LabelledDigraph.random(spec, 30, rng)
wit = find_zero_sum_cycle(dg)
print("Z_3:", wit.vertices, "m =", wit.m_used)
print("f(3,1) =", probe_f(spec).value, " f(3,2) <=", probe_f(FieldSpec(3, 2)).value)

# Blocks of p-1 vertices per coordinate give (p-1)d vertices and no zero-sum cycle
for p, d in [(2, 2), (2, 3), (3, 2)]:
    lb = lower_bound_witness(FieldSpec(p, d))
    print((p, d), lb.n, "vertices, zero-sum cycle:", bf_zero_sum_cycle(lb))
