"""
Vectors over Z_p^d, spans and subset sums
=========================================

"""

import numpy as np

from zsmatch.gf import FieldSpec, is_additive_basis, reachable_sums, span_of

# A field spec fixes p and d; vectors are immutable tuples of residues
spec = FieldSpec(3, 2)
a = spec.vector((1, 2))
b = spec.vector((2, 2))
print(a + b, -a, a - b)

# Spans are kept in reduced row-echelon form, so equal spans compare equal
s = span_of([a, b])
print("dimension", s.dimension, "basis", [v.coords for v in s.vectors])
print(span_of([a, a + b, b]) == s)

# coefficients() is a membership certificate over the echelon basis
print(s.coefficients(spec.vector((0, 1))))

# Subset sums: which vectors are a sum of a sub-multiset of the family?
family = [spec.unit(0), spec.unit(1)]
r = reachable_sums(family)
print(len(r), "of", spec.size, "vectors reachable")

# A linear basis of Z_3 is not an additive basis, two copies of it are
one = FieldSpec(3, 1).vector((1,))
full = span_of([one])
print(is_additive_basis([one], full), is_additive_basis([one, one], full))

# reconstruct() returns the indices used for a reachable target
rng = np.random.default_rng(0)
vs = [spec.vector(rng.integers(0, 3, 2)) for _ in range(6)]
sums = reachable_sums(vs)
target = max(sums.reachable, key=lambda v: v.code)
print(target, "=", [vs[i].coords for i in sums.reconstruct(target)])
