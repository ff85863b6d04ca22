"""Immutable labeled hypergraphs.

Vertices are the integers ``0..n-1``.  Edges are ordered tuples of vertices
with an optional label; a digraph is the special case where every edge has
arity 2, and an arc ``(v, v)`` is a self-loop.  Undirected graphs are
encoded as symmetric digraphs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import CostProbError, UnknownVertexError


def as_fraction(value) -> Fraction:
    """Exact conversion; strings such as ``"0.8"`` become ``4/5``, never a float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # repr() is the shortest round-tripping decimal, so 0.8 -> 4/5
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Label:
    type_tag: str | None = None
    weight: Fraction | None = None

    def __post_init__(self):
        if self.weight is not None:
            w = as_fraction(self.weight)
            if not 0 <= w <= 1:
                raise CostProbError(f"label weight {w} outside [0, 1]")
            object.__setattr__(self, "weight", w)

    def key(self) -> tuple:
        w = self.weight
        if w is None:
            return (1, self.type_tag or "", 0, 0, 0)
        return (1, self.type_tag or "", 1, w.numerator, w.denominator)

    def __str__(self) -> str:
        parts = []
        if self.type_tag is not None:
            parts.append(self.type_tag)
        if self.weight is not None:
            parts.append(f"w={self.weight}")
        return ":".join(parts) if parts else "-"


NO_LABEL_KEY = (0, "", 0, 0, 0)


def label_key(label: Label | None) -> tuple:
    return NO_LABEL_KEY if label is None else label.key()


def cost_key(cost: Fraction | None) -> tuple:
    return (0, 0, 0) if cost is None else (1, cost.numerator, cost.denominator)


class Hyperedge(NamedTuple):
    endpoints: tuple[int, ...]
    label: Label | None = None

    @property
    def arity(self) -> int:
        return len(self.endpoints)


class Hypergraph:
    """A finite vertex-labeled, edge-labeled hypergraph without duplicate edges.

    Instances are treated as immutable values: equality and hashing are
    structural (same numbering), not up to isomorphism.  Use
    :func:`costprob.canon.is_isomorphic` for the latter.
    """

    __slots__ = ("n", "vertex_labels", "costs", "edges", "name", "_hash", "_adjacent", "_incidence")

    def __init__(
        self,
        n: int = 0,
        edges: Iterable = (),
        vertex_labels: Sequence[Label | None] | None = None,
        costs: Sequence | None = None,
        name: str = "",
    ):
        if n < 0:
            raise CostProbError("vertex count must be nonnegative")
        es = set()
        for e in edges:
            if not isinstance(e, Hyperedge):
                if len(e) == 2 and isinstance(e[0], tuple):
                    e = Hyperedge(tuple(e[0]), e[1])
                else:
                    e = Hyperedge(tuple(e))
            if e.label is not None and e.label.type_tag is None and e.label.weight is None:
                e = Hyperedge(e.endpoints, None)
            if not e.endpoints:
                raise CostProbError("edges need at least one endpoint")
            for v in e.endpoints:
                if not 0 <= v < n:
                    raise UnknownVertexError(f"edge {e.endpoints} refers to missing vertex {v}")
            es.add(e)
        if vertex_labels is None:
            vl = (None,) * n
        else:
            vl = tuple(None if lab is not None and lab.type_tag is None and lab.weight is None else lab
                       for lab in vertex_labels)
            if len(vl) != n:
                raise CostProbError("one vertex label slot per vertex is required")
        if costs is None or all(c is None for c in costs):
            cs = None
        else:
            cs = tuple(None if c is None else as_fraction(c) for c in costs)
            if len(cs) != n:
                raise CostProbError("one cost slot per vertex is required")
            if any(c is not None and c < 0 for c in cs):
                raise CostProbError("vertex costs must be nonnegative")
        self._init(n, frozenset(es), vl, cs, name)

    def _init(self, n, edges, vertex_labels, costs, name):
        self.n = n
        self.edges = edges
        self.vertex_labels = vertex_labels
        self.costs = costs
        self.name = name
        self._hash = None
        self._adjacent = None
        self._incidence = None

    @classmethod
    def _trusted(cls, n, edges, vertex_labels=None, costs=None, name="") -> "Hypergraph":
        # caller guarantees validity; used on hot paths
        g = cls.__new__(cls)
        g._init(n, edges if isinstance(edges, frozenset) else frozenset(edges),
                vertex_labels if vertex_labels is not None else (None,) * n, costs, name)
        return g

    # -- value semantics -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.vertex_labels == other.vertex_labels
            and self.costs == other.costs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges, self.vertex_labels, self.costs))
        return self._hash

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<Hypergraph{name} n={self.n} m={len(self.edges)}>"

    # -- basic queries ---------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def is_digraph(self) -> bool:
        return all(len(e.endpoints) == 2 for e in self.edges)

    def arities(self) -> set[int]:
        return {len(e.endpoints) for e in self.edges}

    def sorted_edges(self) -> list[Hyperedge]:
        return sorted(self.edges, key=lambda e: (e.endpoints, label_key(e.label)))

    def arcs(self) -> set[tuple[int, ...]]:
        """Endpoint tuples, ignoring labels."""
        return {e.endpoints for e in self.edges}

    def has_loop(self, v: int) -> bool:
        return any(all(x == v for x in e.endpoints) for e in self.edges)

    def adjacent(self, u: int, v: int) -> bool:
        """True when some edge contains both ``u`` and ``v`` (``u != v``)."""
        if self._adjacent is None:
            adj = set()
            for e in self.edges:
                ends = set(e.endpoints)
                if len(ends) > 1:
                    for a, b in itertools.combinations(sorted(ends), 2):
                        adj.add((a, b))
            self._adjacent = frozenset(adj)
        if u > v:
            u, v = v, u
        return (u, v) in self._adjacent

    def incident(self, v: int) -> list[Hyperedge]:
        if self._incidence is None:
            inc = [[] for _ in range(self.n)]
            for e in self.edges:
                for x in set(e.endpoints):
                    inc[x].append(e)
            self._incidence = inc
        return self._incidence[v]

    def cost(self, v: int) -> Fraction | None:
        return None if self.costs is None else self.costs[v]

    # -- derived graphs --------------------------------------------------
    def strip_costs(self) -> "Hypergraph":
        if self.costs is None:
            return self
        return Hypergraph._trusted(self.n, self.edges, self.vertex_labels, None, self.name)

    def with_costs(self, costs: Sequence) -> "Hypergraph":
        return Hypergraph(self.n, self.edges, self.vertex_labels, costs, self.name)

    def with_name(self, name: str) -> "Hypergraph":
        return Hypergraph._trusted(self.n, self.edges, self.vertex_labels, self.costs, name)

    def relabel(self, mapping: Mapping[int, int] | Sequence[int]) -> "Hypergraph":
        """Renumber vertices by a bijection ``old -> new``."""
        m = [mapping[v] for v in range(self.n)]
        if sorted(m) != list(range(self.n)):
            raise CostProbError("relabel needs a permutation of the vertices")
        labels = [None] * self.n
        costs = None if self.costs is None else [None] * self.n
        for old, new in enumerate(m):
            labels[new] = self.vertex_labels[old]
            if costs is not None:
                costs[new] = self.costs[old]
        edges = frozenset(Hyperedge(tuple(m[x] for x in e.endpoints), e.label) for e in self.edges)
        return Hypergraph._trusted(self.n, edges, tuple(labels),
                                   None if costs is None else tuple(costs), self.name)

    def induced(self, keep: Iterable[int]) -> "Hypergraph":
        """Induced subgraph on ``keep``, renumbered densely in increasing order."""
        keep = sorted(set(keep))
        index = {v: i for i, v in enumerate(keep)}
        edges = frozenset(
            Hyperedge(tuple(index[x] for x in e.endpoints), e.label)
            for e in self.edges
            if all(x in index for x in e.endpoints)
        )
        labels = tuple(self.vertex_labels[v] for v in keep)
        costs = None if self.costs is None else tuple(self.costs[v] for v in keep)
        return Hypergraph._trusted(len(keep), edges, labels, costs)

    def without_edges(self, drop: Iterable[Hyperedge]) -> "Hypergraph":
        return Hypergraph._trusted(self.n, self.edges - frozenset(drop), self.vertex_labels, self.costs, self.name)

    def components(self) -> list[list[int]]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            first = find(e.endpoints[0])
            for x in e.endpoints[1:]:
                r = find(x)
                if r != first:
                    parent[r] = first
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())


# ---------------------------------------------------------------------------
# Small named graphs used throughout the tests and the CLI.


def digraph(n: int, arcs: Iterable[tuple[int, int]], name: str = "") -> Hypergraph:
    return Hypergraph(n, [Hyperedge(tuple(a)) for a in arcs], name=name)


def symmetric(n: int, pairs: Iterable[tuple[int, int]], name: str = "") -> Hypergraph:
    arcs = set()
    for u, v in pairs:
        arcs.add((u, v))
        arcs.add((v, u))
    return digraph(n, arcs, name)


def empty_graph(n: int = 0) -> Hypergraph:
    return Hypergraph(n, name="Empty" if n == 0 else f"E{n}")


def loop_vertex() -> Hypergraph:
    return digraph(1, [(0, 0)], "K1_loop")


def cycle(n: int) -> Hypergraph:
    """Symmetric cycle; ``cycle(2)`` is a single undirected edge."""
    if n == 2:
        return symmetric(2, [(0, 1)], "C2sym")
    return symmetric(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}sym")


def directed_cycle(n: int) -> Hypergraph:
    return digraph(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}dir")


def path(n: int) -> Hypergraph:
    """Symmetric path on ``n`` vertices."""
    return symmetric(n, [(i, i + 1) for i in range(n - 1)], f"P{n}sym")


def complete(n: int) -> Hypergraph:
    return symmetric(n, itertools.combinations(range(n), 2), f"K{n}")


def all_digraphs(n: int, loops: bool = True) -> Iterator[Hypergraph]:
    """Every unlabeled digraph on exactly ``n`` numbered vertices."""
    slots = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    for mask in range(1 << len(slots)):
        yield digraph(n, [s for i, s in enumerate(slots) if mask >> i & 1])


def digraph_classes(max_vertices: int, loops: bool = True) -> list[Hypergraph]:
    """One representative per isomorphism class of digraphs with at most
    ``max_vertices`` vertices, in a deterministic order."""
    from .canon import canonical_form

    reps = []
    for n in range(max_vertices + 1):
        seen = set()
        for g in all_digraphs(n, loops):
            c = canonical_form(g)
            if c not in seen:
                seen.add(c)
                reps.append(g)
    return reps


def random_digraph(rng: random.Random, max_vertices: int, edge_prob: float = 0.5,
                   loop_prob: float = 0.1, min_vertices: int = 1) -> Hypergraph:
    """Sample from a fixed recipe driven by ``random.Random`` (Mersenne Twister),
    so a seed reproduces the same graphs on every platform."""
    n = rng.randint(min_vertices, max_vertices)
    arcs = []
    for u in range(n):
        for v in range(n):
            p = loop_prob if u == v else edge_prob
            if rng.random() < p:
                arcs.append((u, v))
    return digraph(n, arcs)
