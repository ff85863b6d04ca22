"""Cost-based order, valuation and probability on small graphs and hypergraphs."""

__version__ = "0.1.0"

from .canon import canonical_form, is_isomorphic
from .cost import LOOPS, STRICT, collapse_cost, core, identify, source_set, weighted_collapse_cost
from .graph import Hyperedge, Hypergraph, Label, cycle, digraph, symmetric
from .homs import embeds_into, find_embedding, find_homomorphism, hom_exists
from .lattice import disjoint_union, exponential, tensor_product
from .order import Relation, cond_prob, cost_order, valuation

__all__ = [
    "Hyperedge", "Hypergraph", "Label", "LOOPS", "Relation", "STRICT",
    "canonical_form", "collapse_cost", "cond_prob", "core", "cost_order", "cycle", "digraph",
    "disjoint_union", "embeds_into", "exponential", "find_embedding", "find_homomorphism",
    "hom_exists", "identify", "is_isomorphic", "source_set", "symmetric", "tensor_product",
    "valuation", "weighted_collapse_cost",
]
