"""Elementary identifications, collapse costs, cores and source sets.

A homomorphism is realized as a chain of identifications (each merges one
pair of vertices) followed by an injective embedding, and its cost counts
the identifications.  ``collapse_cost(g, h)`` is the least number of merges
turning ``g`` into a graph that embeds into ``h``.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .canon import canonical_form, is_isomorphic
from .errors import (
    AdjacentPairError,
    LabelConflictError,
    MissingNodeCostError,
    SizeBoundError,
    UnknownVertexError,
)
from .graph import Hyperedge, Hypergraph
from .homs import find_embedding, find_homomorphism, hom_exists

STRICT = "strict"
LOOPS = "loops"
MODES = (STRICT, LOOPS)

COLLAPSE_BOUND = 16


@dataclass(frozen=True)
class IdentificationStep:
    merged_pair: tuple[int, int]
    resulting_graph: Hypergraph
    step_cost: Fraction


@dataclass(frozen=True)
class CostResult:
    """``cost`` is None when no identification sequence reaches the target."""

    cost: Fraction | None
    steps: tuple[IdentificationStep, ...] = ()
    embedding: tuple[int, ...] | None = None
    reason: str = ""
    explored: int = 0

    @property
    def reachable(self) -> bool:
        return self.cost is not None


def identify(g: Hypergraph, u: int, v: int, mode: str = STRICT) -> Hypergraph:
    """Merge ``u`` and ``v`` into the vertex ``min(u, v)``; vertices above
    ``max(u, v)`` shift down by one.  Duplicate edges collapse.

    In strict mode the pair must be nonadjacent.  In loops mode an edge
    joining the pair turns into a loop on the merged vertex.  Vertex labels
    must agree; the merged vertex cost is the larger of the two.
    """
    if mode not in MODES:
        raise ValueError(f"unknown identification mode {mode!r}")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise UnknownVertexError(f"vertex pair ({u}, {v}) not in graph with {g.n} vertices")
    if u == v:
        raise AdjacentPairError("cannot identify a vertex with itself")
    if mode == STRICT and g.adjacent(u, v):
        raise AdjacentPairError(f"vertices {u} and {v} share an edge")
    if g.vertex_labels[u] != g.vertex_labels[v]:
        raise LabelConflictError(f"vertices {u} and {v} carry different labels")
    keep, gone = (u, v) if u < v else (v, u)

    def image(x):
        if x == gone:
            return keep
        return x - 1 if x > gone else x

    edges = frozenset(Hyperedge(tuple(image(x) for x in e.endpoints), e.label) for e in g.edges)
    labels = g.vertex_labels[:gone] + g.vertex_labels[gone + 1:]
    costs = None
    if g.costs is not None:
        cs = list(g.costs)
        a, b = cs[keep], cs[gone]
        cs[keep] = None if a is None or b is None else max(a, b)
        del cs[gone]
        costs = tuple(cs)
    return Hypergraph._trusted(g.n - 1, edges, labels, costs)


def quotient_map(n: int, u: int, v: int) -> tuple[int, ...]:
    """The vertex map ``identify`` induces on ``range(n)``."""
    keep, gone = (u, v) if u < v else (v, u)
    return tuple(keep if x == gone else (x - 1 if x > gone else x) for x in range(n))


def mergeable_pairs(g: Hypergraph, mode: str = STRICT):
    for u, v in itertools.combinations(range(g.n), 2):
        if mode == STRICT and g.adjacent(u, v):
            continue
        if g.vertex_labels[u] != g.vertex_labels[v]:
            continue
        yield u, v


def _check_size(g: Hypergraph, max_vertices: int):
    if g.n > max_vertices:
        raise SizeBoundError(f"collapse search limited to {max_vertices} vertices, got {g.n}")


def _finish(parents, key, state, h, explored) -> CostResult:
    steps = []
    k = key
    while parents[k] is not None:
        prev, pair, graph, step_cost = parents[k]
        steps.append(IdentificationStep(pair, graph, step_cost))
        k = prev
    steps.reverse()
    total = sum((s.step_cost for s in steps), Fraction(0))
    return CostResult(total, tuple(steps), find_embedding(state.strip_costs(), h), "", explored)


def collapse_cost(g: Hypergraph, h: Hypergraph, mode: str = STRICT,
                  max_vertices: int = COLLAPSE_BOUND) -> CostResult:
    """Breadth-first search over identification states, deduplicated by
    canonical form.  States with no homomorphism into ``h`` are pruned:
    every quotient of such a state would inherit the obstruction."""
    _check_size(g, max_vertices)
    g = g.strip_costs()
    h = h.strip_costs()
    if not hom_exists(g, h):
        return CostResult(None, reason="no homomorphism to target")
    start = canonical_form(g)
    parents = {start: None}
    queue = deque([(start, g)])
    explored = 0
    while queue:
        key, state = queue.popleft()
        explored += 1
        if state.n <= h.n and find_embedding(state, h) is not None:
            return _finish(parents, key, state, h, explored)
        for u, v in mergeable_pairs(state, mode):
            child = identify(state, u, v, mode)
            ck = canonical_form(child)
            if ck in parents:
                continue
            if not hom_exists(child, h):
                parents[ck] = False  # dead end, remember to skip
                continue
            parents[ck] = (key, (u, v), child, Fraction(1))
            queue.append((ck, child))
    return CostResult(None, reason=f"no identification sequence in {mode} mode", explored=explored)


def weighted_collapse_cost(g: Hypergraph, h: Hypergraph, mode: str = STRICT,
                           max_vertices: int = COLLAPSE_BOUND) -> CostResult:
    """Least-cost-first search; merging ``u, v`` costs ``cost(u) + cost(v)``."""
    _check_size(g, max_vertices)
    if g.costs is None or any(c is None for c in g.costs):
        missing = [v for v in range(g.n) if g.cost(v) is None]
        if g.n:
            raise MissingNodeCostError(f"vertices without a cost label: {missing}")
    h = h.strip_costs()
    if not hom_exists(g.strip_costs(), h):
        return CostResult(None, reason="no homomorphism to target")
    start = canonical_form(g)
    best = {start: Fraction(0)}
    parents = {start: None}
    graphs = {start: g}
    settled = set()
    counter = itertools.count()
    heap = [(Fraction(0), next(counter), start)]
    explored = 0
    while heap:
        dist, _, key = heapq.heappop(heap)
        if key in settled or dist != best[key]:
            continue
        settled.add(key)
        state = graphs[key]
        explored += 1
        if state.n <= h.n and find_embedding(state.strip_costs(), h) is not None:
            return _finish(parents, key, state, h, explored)
        for u, v in mergeable_pairs(state, mode):
            step = state.costs[u] + state.costs[v]
            child = identify(state, u, v, mode)
            ck = canonical_form(child)
            if ck in settled:
                continue
            nd = dist + step
            if ck in best and best[ck] <= nd:
                continue
            if ck not in best and not hom_exists(child.strip_costs(), h):
                best[ck] = Fraction(-1)  # pruned; never improvable
                continue
            best[ck] = nd
            parents[ck] = (key, (u, v), child, step)
            graphs[ck] = child
            heapq.heappush(heap, (nd, next(counter), ck))
    return CostResult(None, reason=f"no identification sequence in {mode} mode", explored=explored)


def replay(g: Hypergraph, result: CostResult, mode: str = STRICT) -> Hypergraph:
    """Apply the witness identifications to ``g`` and return the final graph."""
    state = g
    for step in result.steps:
        state = identify(state, *step.merged_pair, mode=mode)
    return state


@lru_cache(maxsize=50_000)
def core(g: Hypergraph) -> Hypergraph:
    """A smallest induced subgraph hom-equivalent to ``g``.

    Repeatedly looks for a homomorphism into the graph minus one vertex and
    shrinks to its image; a graph admitting no such map is a core.
    """
    g = g.strip_costs()
    keep = list(range(g.n))
    cur = g
    changed = True
    while changed:
        changed = False
        for v in range(cur.n):
            rest = [x for x in range(cur.n) if x != v]
            sub = cur.induced(rest)
            f = find_homomorphism(cur, sub)
            if f is not None:
                image = sorted({rest[x] for x in f})
                keep = [keep[x] for x in image]
                cur = cur.induced(image)
                changed = True
                break
    return g.induced(keep).with_name(f"core({g.name})" if g.name else "")


def source_set(g: Hypergraph) -> list[Hypergraph]:
    """Minimum-vertex graphs hom-equivalent to ``g``: the core, as a singleton."""
    return [core(g)]


def is_core(g: Hypergraph) -> bool:
    return core(g).n == g.n


def same_core(g: Hypergraph, h: Hypergraph) -> bool:
    return is_isomorphic(core(g), core(h))
