"""Lattice operations on hypergraphs: disjoint union (join), tensor
product (meet) and the exponential graph (implication)."""

from __future__ import annotations

import itertools

from .errors import MixedArityError, SizeBoundError, UnsupportedGraphError
from .graph import Hyperedge, Hypergraph

EXPONENTIAL_BOUND = 4096


def disjoint_union(g: Hypergraph, h: Hypergraph) -> Hypergraph:
    """Vertices of ``h`` are shifted past those of ``g``."""
    off = g.n
    new = tuple.__new__
    edges = set(g.edges)
    edges.update(new(Hyperedge, (tuple([x + off for x in e.endpoints]), e.label)) for e in h.edges)
    if g.costs is None and h.costs is None:
        costs = None
    else:
        costs = (g.costs or (None,) * g.n) + (h.costs or (None,) * h.n)
    return Hypergraph._trusted(g.n + h.n, frozenset(edges), g.vertex_labels + h.vertex_labels, costs)


def _uniform_arity(g: Hypergraph) -> int | None:
    ar = g.arities()
    if len(ar) > 1:
        raise MixedArityError(f"graph has edges of arities {sorted(ar)}")
    return next(iter(ar), None)


def tensor_product(g: Hypergraph, h: Hypergraph) -> Hypergraph:
    """Categorical product.  Vertex ``(u, v)`` is numbered ``u * |V(h)| + v``.

    Edges pair only when their labels are identical.  A product vertex keeps
    a vertex label only if both factors carry the same one; vertex costs are
    dropped.
    """
    ka, kb = _uniform_arity(g), _uniform_arity(h)
    if ka is not None and kb is not None and ka != kb:
        raise MixedArityError(f"cannot pair arity {ka} with arity {kb}")
    m = h.n
    by_label: dict = {}
    for f in h.edges:
        by_label.setdefault(f.label, []).append(f.endpoints)
    new = tuple.__new__
    edges = set()
    for e in g.edges:
        lab = e.label
        ends_h = by_label.get(lab)
        if not ends_h:
            continue
        if len(e.endpoints) == 2:
            a, b = e.endpoints[0] * m, e.endpoints[1] * m
            edges.update(new(Hyperedge, ((a + c, b + d), lab)) for c, d in ends_h)
        else:
            edges.update(
                new(Hyperedge, (tuple(u * m + v for u, v in zip(e.endpoints, ends)), lab))
                for ends in ends_h
            )
    labels = tuple(
        a if a == b else None for a in g.vertex_labels for b in h.vertex_labels
    )
    return Hypergraph._trusted(g.n * m, frozenset(edges), labels)


def exponential(g: Hypergraph, h: Hypergraph, max_vertices: int = EXPONENTIAL_BOUND) -> Hypergraph:
    """The exponential digraph ``h^g``.

    Vertices are all maps ``V(g) -> V(h)``, enumerated in lexicographic order
    of their value tuples; there is an arc ``f -> f'`` when every arc
    ``(u, v)`` of ``g`` has ``(f(u), f'(v))`` as an arc of ``h``.
    """
    for x in (g, h):
        if not x.is_digraph:
            raise UnsupportedGraphError("exponential is defined for digraphs only")
        if any(e.label is not None for e in x.edges) or any(lab is not None for lab in x.vertex_labels):
            raise UnsupportedGraphError("exponential is defined for unlabeled digraphs only")
    size = h.n ** g.n
    if size > max_vertices:
        raise SizeBoundError(f"exponential would have {size} vertices (bound {max_vertices})")
    maps = list(itertools.product(range(h.n), repeat=g.n))
    g_arcs = sorted(e.endpoints for e in g.edges)
    h_arcs = h.arcs()
    edges = []
    for i, f in enumerate(maps):
        for j, f2 in enumerate(maps):
            if all((f[u], f2[v]) in h_arcs for u, v in g_arcs):
                edges.append(Hyperedge((i, j)))
    return Hypergraph._trusted(size, frozenset(edges))
