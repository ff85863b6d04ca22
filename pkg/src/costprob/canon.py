"""Canonical forms and isomorphism tests.

Two canonicalizers share one encoding.  ``canonical_form_exhaustive`` takes
the minimum encoding over every vertex permutation and is the trusted
reference for small graphs.  ``canonical_form`` restricts the minimum to
orderings compatible with an isomorphism-invariant colour refinement,
branching by individualization where refinement stalls and skipping
branches that differ only by a vertex transposition that is an
automorphism.  The two produce different keys but the same equality
relation, which the test suite checks against each other.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import SizeBoundError
from .graph import Hypergraph, cost_key, label_key

EXHAUSTIVE_BOUND = 10
REFINE_BOUND = 96


@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: tuple

    @property
    def bytes(self) -> bytes:
        return repr(self.key).encode()

    def digest(self, length: int = 16) -> str:
        return hashlib.sha256(self.bytes).hexdigest()[:length]


def _vertex_attrs(g: Hypergraph) -> list[tuple]:
    return [
        (label_key(g.vertex_labels[v]), cost_key(g.cost(v)))
        for v in range(g.n)
    ]


def _encode(g: Hypergraph, order: Sequence[int], attrs: list[tuple]) -> tuple:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    edges = sorted(
        (tuple(pos[x] for x in e.endpoints), label_key(e.label)) for e in g.edges
    )
    return (g.n, tuple(attrs[v] for v in order), tuple(edges))


def canonical_form_exhaustive(g: Hypergraph, max_vertices: int = EXHAUSTIVE_BOUND) -> CanonicalForm:
    if g.n > max_vertices:
        raise SizeBoundError(f"exhaustive canonicalization limited to {max_vertices} vertices, got {g.n}")
    attrs = _vertex_attrs(g)
    best = min(_encode(g, perm, attrs) for perm in itertools.permutations(range(g.n)))
    return CanonicalForm(("x",) + best)


def _rank(values: list) -> list[int]:
    table = {v: i for i, v in enumerate(sorted(set(values)))}
    return [table[v] for v in values]


def _refine(g: Hypergraph, colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(g.n):
            occ = []
            for e in g.incident(v):
                ends = e.endpoints
                lk = label_key(e.label)
                cs = tuple(colors[x] for x in ends)
                for i, x in enumerate(ends):
                    if x == v:
                        occ.append((len(ends), i, lk, cs))
            occ.sort()
            sigs.append((colors[v], tuple(occ)))
        colors = _rank(sigs)
        k = len(set(colors))
        if k == ncolors:
            return colors
        ncolors = k


def _is_transposition_automorphism(g: Hypergraph, attrs, u: int, v: int) -> bool:
    if attrs[u] != attrs[v]:
        return False

    def swap(x):
        return v if x == u else u if x == v else x

    for e in g.incident(u):
        img = type(e)(tuple(swap(x) for x in e.endpoints), e.label)
        if img not in g.edges:
            return False
    for e in g.incident(v):
        img = type(e)(tuple(swap(x) for x in e.endpoints), e.label)
        if img not in g.edges:
            return False
    return True


def _search(g: Hypergraph, attrs, colors: list[int]) -> tuple:
    colors = _refine(g, colors)
    if len(set(colors)) == g.n:
        order = sorted(range(g.n), key=colors.__getitem__)
        return _encode(g, order, attrs)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target_color = min(c for c, vs in cells.items() if len(vs) > 1)
    cell = cells[target_color]
    reps: list[int] = []
    for v in cell:
        if not any(_is_transposition_automorphism(g, attrs, r, v) for r in reps):
            reps.append(v)
    best = None
    for v in reps:
        nc = [2 * c + 1 for c in colors]
        nc[v] = 2 * target_color
        enc = _search(g, attrs, nc)
        if best is None or enc < best:
            best = enc
    return best


@lru_cache(maxsize=200_000)
def _canonical_refined(g: Hypergraph) -> CanonicalForm:
    attrs = _vertex_attrs(g)
    return CanonicalForm(("r",) + _search(g, attrs, _rank(attrs)))


def canonical_form(g: Hypergraph, max_vertices: int = REFINE_BOUND, exhaustive: bool = False) -> CanonicalForm:
    """Encoding equal for two graphs exactly when they are isomorphic.

    Vertex labels, vertex costs and edge labels all take part in the
    comparison.  Keys from the exhaustive and the refined path are never
    mixed: compare forms produced the same way.
    """
    if exhaustive:
        return canonical_form_exhaustive(g, min(max_vertices, EXHAUSTIVE_BOUND))
    if g.n > max_vertices:
        raise SizeBoundError(f"canonicalization limited to {max_vertices} vertices, got {g.n}")
    return _canonical_refined(g)


def is_isomorphic(g: Hypergraph, h: Hypergraph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return canonical_form(g) == canonical_form(h)


def is_isomorphism(g: Hypergraph, h: Hypergraph, mapping: Sequence[int]) -> bool:
    """Check that ``mapping`` (indexed by vertices of ``g``) is an isomorphism onto ``h``."""
    if g.n != h.n or len(g.edges) != len(h.edges) or len(mapping) != g.n:
        return False
    if sorted(mapping) != list(range(h.n)):
        return False
    for v in range(g.n):
        if g.vertex_labels[v] != h.vertex_labels[mapping[v]] or g.cost(v) != h.cost(mapping[v]):
            return False
    return all(
        type(e)(tuple(mapping[x] for x in e.endpoints), e.label) in h.edges for e in g.edges
    )


def canonical_graph(g: Hypergraph) -> Hypergraph:
    """The graph rebuilt from its refined canonical key, i.e. a canonical
    representative numbering of ``g``."""
    from .graph import Hyperedge, Label
    from fractions import Fraction

    key = canonical_form(g).key
    _, n, attrs, edges = key

    def unkey(lk):
        if lk[0] == 0:
            return None
        return Label(lk[1] or None, Fraction(lk[3], lk[4]) if lk[2] else None)

    labels = tuple(unkey(a[0]) for a in attrs)
    costs = tuple(Fraction(a[1][1], a[1][2]) if a[1][0] else None for a in attrs)
    return Hypergraph(n, [Hyperedge(ends, unkey(lk)) for ends, lk in edges], labels, costs, g.name)
