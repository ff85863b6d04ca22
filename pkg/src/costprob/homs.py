"""Backtracking search for homomorphisms and embeddings.

A homomorphism maps vertices so that every edge lands on an edge with the
same label, and vertex labels are preserved.  An embedding is an injective
homomorphism (not necessarily induced).  Vertex costs play no role here.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import SizeBoundError
from .graph import Hypergraph

HOM_BOUND = 128


class _Target:
    """Lookup tables over the codomain graph."""

    def __init__(self, h: Hypergraph):
        self.h = h
        self.edges: dict[tuple, set[tuple[int, ...]]] = {}
        self.by_pos: dict[tuple, list[tuple[int, ...]]] = {}
        for e in h.edges:
            key = (len(e.endpoints), e.label)
            self.edges.setdefault(key, set()).add(e.endpoints)
            for i, x in enumerate(e.endpoints):
                self.by_pos.setdefault((key, i, x), []).append(e.endpoints)


def _plan(g: Hypergraph):
    """Vertex order plus, per step, the edges completed by that step."""
    n = g.n
    placed: list[int] = []
    done = [False] * n
    degree = [len(g.incident(v)) for v in range(n)]
    links = [0] * n
    for _ in range(n):
        best = max((v for v in range(n) if not done[v]), key=lambda v: (links[v], degree[v], -v))
        done[best] = True
        placed.append(best)
        for e in g.incident(best):
            for x in set(e.endpoints):
                if not done[x]:
                    links[x] += 1
    position = {v: i for i, v in enumerate(placed)}
    checks: list[list] = [[] for _ in range(n)]
    for e in g.edges:
        last = max(position[x] for x in e.endpoints)
        checks[last].append(e)
    return placed, checks


def _search(g: Hypergraph, h: Hypergraph, injective: bool):
    if g.n > HOM_BOUND or h.n > HOM_BOUND:
        raise SizeBoundError(f"homomorphism search limited to {HOM_BOUND} vertices")
    if g.n == 0:
        return ()
    if h.n == 0 or (injective and g.n > h.n):
        return None
    tgt = _Target(h)
    # every edge of g needs a same-keyed edge in h
    for e in g.edges:
        if (len(e.endpoints), e.label) not in tgt.edges:
            return None
    order, checks = _plan(g)
    base = []
    for v in range(g.n):
        lab = g.vertex_labels[v]
        base.append([c for c in range(h.n) if h.vertex_labels[c] == lab])
    assign = [-1] * g.n
    used = [False] * h.n

    def candidates(step: int, v: int):
        cands = None
        for e in checks[step]:
            key = (len(e.endpoints), e.label)
            i = e.endpoints.index(v)
            anchor = next((j for j, x in enumerate(e.endpoints) if x != v), None)
            if anchor is None:
                allowed = {c for c in base[v] if (c,) * len(e.endpoints) in tgt.edges[key]}
            else:
                x = e.endpoints[anchor]
                allowed = {t[i] for t in tgt.by_pos.get((key, anchor, assign[x]), ())}
            cands = allowed if cands is None else cands & allowed
            if not cands:
                return []
        if cands is None:
            return base[v]
        return sorted(c for c in cands if c in base_sets[v])

    base_sets = [set(b) for b in base]

    def rec(step: int) -> bool:
        if step == g.n:
            return True
        v = order[step]
        for c in candidates(step, v):
            if injective and used[c]:
                continue
            assign[v] = c
            ok = True
            for e in checks[step]:
                if tuple(assign[x] for x in e.endpoints) not in tgt.edges[(len(e.endpoints), e.label)]:
                    ok = False
                    break
            if ok:
                used[c] = True
                if rec(step + 1):
                    return True
                used[c] = False
            assign[v] = -1
        return False

    return tuple(assign) if rec(0) else None


@lru_cache(maxsize=200_000)
def find_homomorphism(g: Hypergraph, h: Hypergraph) -> tuple[int, ...] | None:
    """A vertex map ``g -> h`` (tuple indexed by vertices of ``g``) or None."""
    return _search(g, h, injective=False)


def hom_exists(g: Hypergraph, h: Hypergraph) -> bool:
    return find_homomorphism(g, h) is not None


@lru_cache(maxsize=200_000)
def find_embedding(g: Hypergraph, h: Hypergraph) -> tuple[int, ...] | None:
    return _search(g, h, injective=True)


def embeds_into(g: Hypergraph, h: Hypergraph) -> bool:
    return find_embedding(g, h) is not None


def is_homomorphism(g: Hypergraph, h: Hypergraph, mapping) -> bool:
    if len(mapping) != g.n:
        return False
    if any(g.vertex_labels[v] != h.vertex_labels[mapping[v]] for v in range(g.n)):
        return False
    return all(
        type(e)(tuple(mapping[x] for x in e.endpoints), e.label) in h.edges for e in g.edges
    )
