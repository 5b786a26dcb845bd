"""Independent matchings in matroid-labelled hypergraphs, and zero-sum cycles
in Z_p^d-labelled complete digraphs built on top of them."""

from .errors import InternalConsistencyError, PipelineFailure, ResourceError
from .gf import (FieldSpec, GroupVector, SpanBasis, SumReachability, in_span, is_additive_basis,
                 rank, reachable_sums, solve_representation, span_of, vec_add, vec_neg)
from .hypergraph import LabelledHypergraph
from .matching import (BasisMatchingsResult, PeelResult, SpanningMatchingResult,
                       bf_best_independent_matching, disjoint_basis_matchings, exchange_reduce,
                       extend_matching, find_maximal_independent_matching, peel_step,
                       spanning_matching)
from .matroid import (DirectSumMatroid, FreeMatroid, LinearMatroid, Matroid, direct_sum,
                      in_matroid_span, is_independent, matroid_rank)
from .zerosum import (CycleWitness, LabelledDigraph, bf_zero_sum_cycle, find_zero_sum_cycle,
                      lower_bound_witness, probe_f, triple_hypergraph, verify_cycle)

__version__ = "0.1.0"
