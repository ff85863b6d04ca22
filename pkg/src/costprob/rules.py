"""Weighted rewrite rules on labeled hypergraphs.

A rule has a pattern (colour 0), output material (colour 1) and a cost.
It matches a host when the pattern maps injectively into it with every
host label inheriting from the corresponding pattern label.  Applying it
adds a fresh copy of the output vertices, the output edges and the
cross-links, with weights computed from the matched host labels.  Rules
never delete anything.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .canon import canonical_form
from .errors import (
    BoundExceeded,
    CyclicOntologyError,
    InvalidMatchError,
    InvalidRuleError,
    NoAxiomsError,
    UnknownTagError,
)
from .graph import Hyperedge, Hypergraph, Label
from .homs import embeds_into
from .order import OrderResult, Relation, Valuation


# ---------------------------------------------------------------------------
# Ontology


@dataclass(frozen=True)
class Ontology:
    tags: frozenset[str]
    pairs: frozenset[tuple[str, str]]
    ancestors: Mapping[str, frozenset[str]] = field(compare=False, repr=False, default=None)

    @classmethod
    def build(cls, pairs=(), tags=()) -> "Ontology":
        pairs = frozenset((c, p) for c, p in pairs)
        all_tags = set(tags)
        for c, p in pairs:
            all_tags.update((c, p))
        parents: dict[str, set[str]] = {t: set() for t in all_tags}
        for c, p in pairs:
            parents[c].add(p)
        ancestors = {}
        state: dict[str, int] = {}

        def visit(t, trail):
            if state.get(t) == 2:
                return ancestors[t]
            if state.get(t) == 1:
                raise CyclicOntologyError(f"subtype cycle through {' -> '.join(trail + [t])}")
            state[t] = 1
            acc = {t}
            for p in sorted(parents[t]):
                acc |= visit(p, trail + [t])
            state[t] = 2
            ancestors[t] = frozenset(acc)
            return ancestors[t]

        for t in sorted(all_tags):
            visit(t, [])
        return cls(frozenset(all_tags), pairs, ancestors)

    def inherits(self, child: str, parent: str) -> bool:
        """Reflexive-transitive subtype test; tags outside the ontology are
        only related to themselves."""
        if child == parent:
            return True
        anc = self.ancestors.get(child)
        return anc is not None and parent in anc


EMPTY_ONTOLOGY = Ontology.build()


def label_inherits(child: Label | None, parent: Label | None, o: Ontology) -> bool:
    """Type-tag inheritance; weights never matter.  An untyped parent
    accepts anything."""
    for lab in (child, parent):
        if lab is not None and lab.type_tag is not None and lab.type_tag not in o.tags:
            raise UnknownTagError(f"type tag {lab.type_tag!r} not in ontology")
    return _compatible(child, parent, o)


def _compatible(host: Label | None, pattern: Label | None, o: Ontology) -> bool:
    if pattern is None or pattern.type_tag is None:
        return True
    if host is None or host.type_tag is None:
        return False
    return o.inherits(host.type_tag, pattern.type_tag)


# ---------------------------------------------------------------------------
# Formulas


FORMULA_KINDS = ("const", "copy", "product", "min")


@dataclass(frozen=True)
class Formula:
    """Output weight as a function of matched weights.

    ``args`` holds a constant for ``const`` and pattern element names
    otherwise.
    """

    kind: str
    args: tuple

    def __post_init__(self):
        if self.kind not in FORMULA_KINDS:
            raise InvalidRuleError(f"unknown formula {self.kind!r}")
        arity = {"const": 1, "copy": 1, "product": 2, "min": 2}[self.kind]
        if len(self.args) != arity:
            raise InvalidRuleError(f"{self.kind} takes {arity} argument(s)")

    def references(self) -> tuple[str, ...]:
        return () if self.kind == "const" else self.args

    def evaluate(self, weights: Mapping[str, Fraction | None]) -> Fraction | None:
        if self.kind == "const":
            return Fraction(self.args[0])
        vals = [weights[a] for a in self.args]
        if any(v is None for v in vals):
            return None
        if self.kind == "copy":
            return vals[0]
        if self.kind == "product":
            return vals[0] * vals[1]
        return min(vals)

    def __str__(self):
        if self.kind == "const":
            from .io import exact_str

            return f"const({exact_str(Fraction(self.args[0]))})"
        return f"{self.kind}({', '.join(a + '.w' for a in self.args)})"


# ---------------------------------------------------------------------------
# Rules


@dataclass(frozen=True)
class OutputVertex:
    name: str
    type_tag: str | None = None
    formula: Formula | None = None


@dataclass(frozen=True)
class OutputEdge:
    """Endpoints are ``("r0", i)`` for pattern vertices and ``("r1", j)``
    for output vertices."""

    name: str
    endpoints: tuple[tuple[str, int], ...]
    type_tag: str | None = None
    formula: Formula | None = None

    @property
    def is_cross_link(self) -> bool:
        sides = {s for s, _ in self.endpoints}
        return sides == {"r0", "r1"}


@dataclass(frozen=True)
class Rule:
    name: str
    pattern: Hypergraph
    vertex_names: tuple[str, ...]
    pattern_edges: tuple[tuple[str, Hyperedge], ...]
    new_vertices: tuple[OutputVertex, ...]
    new_edges: tuple[OutputEdge, ...]
    cost: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cost", Fraction(self.cost))
        if self.pattern.n == 0:
            raise InvalidRuleError(f"rule {self.name}: pattern must be nonempty")
        if self.cost <= 0:
            raise InvalidRuleError(f"rule {self.name}: cost must be positive")
        if len(self.vertex_names) != self.pattern.n:
            raise InvalidRuleError(f"rule {self.name}: one name per pattern vertex")
        if set(e for _, e in self.pattern_edges) != set(self.pattern.edges) or \
                len(self.pattern_edges) != len(self.pattern.edges):
            raise InvalidRuleError(f"rule {self.name}: pattern edge list disagrees with pattern graph")
        known = set(self.vertex_names) | {n for n, _ in self.pattern_edges}
        for item in self.new_vertices + self.new_edges:
            if item.formula is not None:
                for ref in item.formula.references():
                    if ref not in known:
                        raise InvalidRuleError(
                            f"rule {self.name}: formula for {item.name} references {ref!r}, "
                            "which is not a pattern element")
        for e in self.new_edges:
            for side, i in e.endpoints:
                limit = self.pattern.n if side == "r0" else len(self.new_vertices)
                if side not in ("r0", "r1") or not 0 <= i < limit:
                    raise InvalidRuleError(f"rule {self.name}: bad endpoint {side}[{i}] in {e.name}")

    @property
    def output_edges(self) -> tuple[OutputEdge, ...]:
        return tuple(e for e in self.new_edges if not e.is_cross_link)

    @property
    def cross_links(self) -> tuple[OutputEdge, ...]:
        return tuple(e for e in self.new_edges if e.is_cross_link)

    @property
    def adds_material(self) -> bool:
        return bool(self.new_vertices or self.new_edges)


@dataclass(frozen=True, order=True)
class Match:
    """``vertex_map[i]`` is the host image of pattern vertex ``i``;
    ``edge_map[j]`` the host edge matched by pattern edge ``j``."""

    vertex_map: tuple[int, ...]
    edge_map: tuple[Hyperedge, ...] = field(compare=False)
    key: tuple = field(default=(), repr=False)


@dataclass(frozen=True)
class SearchBounds:
    max_vertices: int = 12
    max_edges: int = 24
    max_depth: int = 6
    max_cost: Fraction = Fraction(64)

    def __post_init__(self):
        object.__setattr__(self, "max_cost", Fraction(self.max_cost))
        if min(self.max_vertices, self.max_edges, self.max_depth) <= 0 or self.max_cost <= 0:
            raise ValueError("search bounds must be positive")

    def admits(self, g: Hypergraph) -> bool:
        return g.n <= self.max_vertices and len(g.edges) <= self.max_edges


@dataclass(frozen=True)
class RuleSystem:
    rules: tuple[Rule, ...]
    ontology: Ontology = EMPTY_ONTOLOGY
    bounds: SearchBounds = SearchBounds()

    def __post_init__(self):
        names = [r.name for r in self.rules]
        if len(set(names)) != len(names):
            raise InvalidRuleError("rule names must be unique")

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)


# ---------------------------------------------------------------------------
# Matching and application


def _edge_key(e: Hyperedge) -> tuple:
    from .graph import label_key

    return (e.endpoints, label_key(e.label))


def match_rule(r: Rule, host: Hypergraph, o: Ontology = EMPTY_ONTOLOGY) -> list[Match]:
    """Every injective, inheritance-respecting map of the pattern into
    ``host``, sorted by vertex images and then edge images."""
    pat = r.pattern
    if pat.n > host.n:
        return []
    by_ends: dict[tuple, list[Hyperedge]] = {}
    for e in host.edges:
        by_ends.setdefault(e.endpoints, []).append(e)
    for lst in by_ends.values():
        lst.sort(key=_edge_key)
    cand = [
        [c for c in range(host.n) if _compatible(host.vertex_labels[c], pat.vertex_labels[v], o)]
        for v in range(pat.n)
    ]
    edges = [e for _, e in r.pattern_edges]
    completes: list[list[int]] = [[] for _ in range(pat.n)]
    for j, e in enumerate(edges):
        completes[max(e.endpoints)].append(j)
    out: list[Match] = []
    assign = [-1] * pat.n
    used: set[int] = set()

    def edge_options(j):
        e = edges[j]
        ends = tuple(assign[x] for x in e.endpoints)
        return [f for f in by_ends.get(ends, ()) if _compatible(f.label, e.label, o)]

    def rec(v):
        if v == pat.n:
            options = [edge_options(j) for j in range(len(edges))]
            for combo in itertools.product(*options):
                if len(set(combo)) != len(combo):
                    continue
                vm = tuple(assign)
                out.append(Match(vm, tuple(combo), (vm, tuple(_edge_key(f) for f in combo))))
            return
        for c in cand[v]:
            if c in used:
                continue
            assign[v] = c
            if all(edge_options(j) for j in completes[v]):
                used.add(c)
                rec(v + 1)
                used.discard(c)
            assign[v] = -1

    rec(0)
    out.sort(key=lambda m: m.key)
    return out


def _weights(r: Rule, host: Hypergraph, m: Match) -> dict[str, Fraction | None]:
    w: dict[str, Fraction | None] = {}
    for i, name in enumerate(r.vertex_names):
        lab = host.vertex_labels[m.vertex_map[i]]
        w[name] = None if lab is None else lab.weight
    for (name, _), f in zip(r.pattern_edges, m.edge_map):
        w[name] = None if f.label is None else f.label.weight
    return w


def _label(type_tag, formula, weights) -> Label | None:
    weight = None if formula is None else formula.evaluate(weights)
    if type_tag is None and weight is None:
        return None
    return Label(type_tag, weight)


def _check_match(r: Rule, host: Hypergraph, m: Match, o: Ontology):
    vm = m.vertex_map
    if len(vm) != r.pattern.n or len(set(vm)) != len(vm) or any(not 0 <= x < host.n for x in vm):
        raise InvalidMatchError("vertex map is not an injection into the host")
    if len(m.edge_map) != len(r.pattern_edges) or len(set(m.edge_map)) != len(m.edge_map):
        raise InvalidMatchError("edge map must cover every pattern edge injectively")
    for i in range(r.pattern.n):
        if not _compatible(host.vertex_labels[vm[i]], r.pattern.vertex_labels[i], o):
            raise InvalidMatchError(f"host vertex {vm[i]} does not inherit from pattern vertex {i}")
    for (_, e), f in zip(r.pattern_edges, m.edge_map):
        if f not in host.edges or f.endpoints != tuple(vm[x] for x in e.endpoints):
            raise InvalidMatchError(f"pattern edge {e.endpoints} is not mapped onto a host edge")
        if not _compatible(f.label, e.label, o):
            raise InvalidMatchError(f"host edge {f.endpoints} does not inherit from its pattern edge")


def instantiate(r: Rule, host: Hypergraph, m: Match) -> tuple[list[Label | None], list[Hyperedge]]:
    """Labels of the new vertices and the edges an application would add
    (new vertices numbered from ``host.n``)."""
    weights = _weights(r, host, m)
    new_labels = [_label(v.type_tag, v.formula, weights) for v in r.new_vertices]

    def image(ref):
        side, i = ref
        return m.vertex_map[i] if side == "r0" else host.n + i

    new_edges = [
        Hyperedge(tuple(image(x) for x in e.endpoints), _label(e.type_tag, e.formula, weights))
        for e in r.new_edges
    ]
    return new_labels, new_edges


def apply_rule(r: Rule, host: Hypergraph, m: Match, o: Ontology = EMPTY_ONTOLOGY,
               bounds: SearchBounds | None = None) -> Hypergraph:
    _check_match(r, host, m, o)
    new_labels, new_edges = instantiate(r, host, m)
    out = Hypergraph(host.n + len(new_labels), list(host.edges) + new_edges,
                     host.vertex_labels + tuple(new_labels), None, host.name)
    if bounds is not None and not bounds.admits(out):
        raise BoundExceeded(
            f"result has {out.n} vertices / {len(out.edges)} edges "
            f"(bounds {bounds.max_vertices} / {bounds.max_edges})")
    return out


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    match: Match
    result: Hypergraph


@dataclass(frozen=True)
class Derivation:
    start: Hypergraph
    steps: tuple[DerivationStep, ...]
    total_cost: Fraction
    end: Hypergraph

    def replay(self, rs: RuleSystem) -> Hypergraph:
        g = self.start
        for s in self.steps:
            g = apply_rule(rs.rule(s.rule), g, s.match, rs.ontology)
        return g


@dataclass(frozen=True)
class Unreachable:
    reason: str
    explored: int = 0


EXACT = "exact"
CONTAINS = "contains"


def successors(g: Hypergraph, rs: RuleSystem) -> Iterator[tuple[Rule, Match, Hypergraph | None]]:
    """Every rule application on ``g``; the graph is None when it falls
    outside the bounds.  No-op applications are skipped."""
    for r in rs.rules:
        for m in match_rule(r, g, rs.ontology):
            child = apply_rule(r, g, m, rs.ontology)
            if child == g:
                continue
            yield r, m, (child if rs.bounds.admits(child) else None)


def _step_key(r: Rule, m: Match) -> tuple:
    return (r.name, m.key)


def _goal_test(mode: str, goal: Hypergraph):
    if mode == EXACT:
        target = canonical_form(goal)
        return lambda key, g: key == target
    if mode == CONTAINS:
        return lambda key, g: embeds_into(goal, g)
    raise ValueError(f"unknown derivation mode {mode!r}")


def derivation_cost(start: Hypergraph, goal: Hypergraph, rs: RuleSystem,
                    mode: str = EXACT) -> Derivation | Unreachable:
    """Uniform-cost search over canonically deduplicated states.

    Ties are broken by fewer steps, then by the lexicographically least
    sequence of (rule name, match) keys, so results are deterministic.
    """
    is_goal = _goal_test(mode, goal)
    b = rs.bounds
    if not b.admits(start):
        return Unreachable("start graph exceeds bounds")
    skey = canonical_form(start)
    counter = 0
    heap = [(Fraction(0), 0, (), counter, skey, start, None)]
    settled = set()
    explored = 0
    pruned = False
    while heap:
        cost, depth, seq, _, key, g, trail = heapq.heappop(heap)
        if key in settled:
            continue
        settled.add(key)
        explored += 1
        if is_goal(key, g):
            steps = []
            while trail is not None:
                trail, step = trail
                steps.append(step)
            steps.reverse()
            return Derivation(start, tuple(steps), cost, g)
        if depth >= b.max_depth:
            pruned = True
            continue
        for r, m, child in successors(g, rs):
            if child is None:
                pruned = True
                continue
            c2 = cost + r.cost
            if c2 > b.max_cost:
                pruned = True
                continue
            ck = canonical_form(child)
            if ck in settled:
                continue
            counter += 1
            heapq.heappush(heap, (c2, depth + 1, seq + (_step_key(r, m),), counter, ck, child,
                                  (trail, DerivationStep(r.name, m, child))))
    reason = "search space exhausted within bounds" if pruned else "search space exhausted"
    return Unreachable(reason, explored)


def closure(axioms, rs: RuleSystem) -> dict:
    """All states reachable from any axiom within bounds, keyed by canonical
    form, with the least derivation cost to each: ``key -> (cost, graph)``."""
    b = rs.bounds
    heap = []
    counter = 0
    for a in axioms:
        if b.admits(a):
            counter += 1
            heap.append((Fraction(0), 0, counter, canonical_form(a), a))
    heapq.heapify(heap)
    best: dict = {}
    while heap:
        cost, depth, _, key, g = heapq.heappop(heap)
        if key in best:
            continue
        best[key] = (cost, g)
        if depth >= b.max_depth:
            continue
        for r, m, child in successors(g, rs):
            if child is None or cost + r.cost > b.max_cost:
                continue
            ck = canonical_form(child)
            if ck not in best:
                counter += 1
                heapq.heappush(heap, (cost + r.cost, depth + 1, counter, ck, child))
    return best


# ---------------------------------------------------------------------------
# Last-step detection


@dataclass(frozen=True)
class LastStep:
    """``g`` equals ``previous`` plus one application of ``rule`` at ``match``."""

    rule: str
    match: Match
    previous: Hypergraph
    created_vertices: tuple[int, ...]
    created_edges: tuple[Hyperedge, ...]


def find_last_step(g: Hypergraph, rs: RuleSystem) -> LastStep | None:
    """Look for a rule whose full output occurs in ``g`` with formula-consistent
    weights and can be peeled off, leaving the premises intact."""
    for r in rs.rules:
        if not r.adds_material:
            continue
        for m in match_rule(r, g, rs.ontology):
            weights = _weights(r, g, m)
            new_labels = [_label(v.type_tag, v.formula, weights) for v in r.new_vertices]
            image_set = set(m.vertex_map)
            pool = [c for c in range(g.n) if c not in image_set]
            premise_edges = set(m.edge_map)
            for copy in itertools.permutations(pool, len(r.new_vertices)):
                if any(g.vertex_labels[c] != lab for c, lab in zip(copy, new_labels)):
                    continue

                def image(ref):
                    side, i = ref
                    return m.vertex_map[i] if side == "r0" else copy[i]

                created = {
                    Hyperedge(tuple(image(x) for x in e.endpoints), _label(e.type_tag, e.formula, weights))
                    for e in r.new_edges
                }
                if not created <= g.edges or created & premise_edges:
                    continue
                copy_set = set(copy)
                if any(x in copy_set for e in g.edges - created for x in e.endpoints):
                    continue
                keep = [v for v in range(g.n) if v not in copy_set]
                previous = g.without_edges(created).induced(keep)
                return LastStep(r.name, m, previous, tuple(copy),
                                tuple(sorted(created, key=_edge_key)))
    return None


def is_derivable(g: Hypergraph, rs: RuleSystem) -> bool:
    return find_last_step(g, rs) is not None


# ---------------------------------------------------------------------------
# Rule-relative valuation and order


def rule_valuation(g: Hypergraph, axioms, rs: RuleSystem, mode: str = EXACT) -> Valuation:
    """Cheapest derivation of ``g`` from any axiom; ``raw`` is None when no
    axiom reaches it within bounds."""
    axioms = list(axioms)
    if not axioms:
        raise NoAxiomsError("rule valuation needs at least one axiom")
    best = None
    for a in axioms:
        d = derivation_cost(a, g, rs, mode)
        if isinstance(d, Derivation) and (best is None or d.total_cost < best):
            best = d.total_cost
    return Valuation(best)


def rule_order(g: Hypergraph, h: Hypergraph, axioms, rs: RuleSystem) -> OrderResult:
    axioms = list(axioms)
    if not axioms:
        raise NoAxiomsError("rule order needs at least one axiom")
    if canonical_form(g) == canonical_form(h):
        return OrderResult(Relation.EQ, "isomorphic")
    vg = rule_valuation(g, axioms, rs).raw
    vh = rule_valuation(h, axioms, rs).raw
    details = {"valuations": (vg, vh)}
    if vg is None or vh is None:
        return OrderResult(Relation.INCOMPARABLE, "valuation unknown", details)
    if vg < vh and isinstance(derivation_cost(g, h, rs), Derivation):
        return OrderResult(Relation.LT, "derivation exists, smaller valuation", details)
    if vh < vg and isinstance(derivation_cost(h, g, rs), Derivation):
        return OrderResult(Relation.GT, "derivation exists, larger valuation", details)
    return OrderResult(Relation.INCOMPARABLE, "no derivation with a valuation gap", details)


# ---------------------------------------------------------------------------
# Theorem-space probability


@dataclass(frozen=True)
class Theorem:
    name: str
    graph: Hypergraph
    raw: Fraction
    normalized: Fraction
    is_axiom: bool

    def to_dict(self):
        from .io import graph_to_dict

        return {"name": self.name, "raw": self.raw, "normalized": self.normalized,
                "axiom": self.is_axiom, "graph": graph_to_dict(self.graph)}


@dataclass
class TheoremReport:
    """Rule-relative valuations over a bounded closure.

    ``statements`` are the single-edge facts occurring anywhere in the
    closure, valued by the cheapest state that contains them; ``states``
    are the closure states themselves, valued by their exact derivation
    cost.  Residuals of the sum and product rules are taken over statement
    pairs, with join and meet computed inside the universe.
    """

    statements: list[Theorem]
    states: list[Theorem]
    universe: Hypergraph
    universe_raw: Fraction
    residuals: list[dict]

    def valuations(self) -> list[Fraction]:
        return sorted(t.raw for t in self.statements)

    def to_dict(self):
        from .io import graph_to_dict

        return {
            "statements": [t.to_dict() for t in self.statements],
            "states": [t.to_dict() for t in self.states],
            "universe": graph_to_dict(self.universe),
            "universe_raw": self.universe_raw,
            "residuals": self.residuals,
        }


def _tag(label: Label | None) -> str:
    return "_" if label is None or label.type_tag is None else label.type_tag


def statement_name(g: Hypergraph, e: Hyperedge) -> str:
    from .io import exact_str

    ends = ",".join(_tag(g.vertex_labels[v]) for v in e.endpoints)
    w = "" if e.label is None or e.label.weight is None else f" w={exact_str(e.label.weight)}"
    return f"{_tag(e.label)}({ends}){w}"


def edge_subgraph(g: Hypergraph, edges) -> Hypergraph:
    """The subgraph formed by ``edges`` and their endpoints."""
    edges = set(edges)
    keep = sorted({v for e in edges for v in e.endpoints})
    return g.without_edges(g.edges - edges).induced(keep)


def theorem_prob_demo(axioms, rs: RuleSystem, universe: Hypergraph | None = None) -> TheoremReport:
    axioms = list(axioms)
    if not axioms:
        raise NoAxiomsError("the demo needs at least one axiom")
    for a in axioms:
        if not rs.bounds.admits(a):
            raise BoundExceeded(f"axiom {a.name or ''} exceeds the search bounds")
    axiom_keys = {canonical_form(a) for a in axioms}
    best = closure(axioms, rs)
    ordered = sorted(best.items(), key=lambda kv: (kv[1][0], kv[1][1].n + len(kv[1][1].edges), kv[0]))

    def contains_value(g):
        vals = [c for c, s in best.values() if embeds_into(g, s)]
        return min(vals) if vals else None

    if universe is None:
        universe = max((s for _, s in best.values()),
                       key=lambda s: (len(s.edges), s.n, canonical_form(s)))
    u_raw = contains_value(universe)
    if u_raw is None or u_raw == 0:
        from .errors import DegenerateUniverseError

        raise DegenerateUniverseError("universe must be derivable with positive cost")

    stmt: dict = {}
    for _, (_, s) in ordered:
        for e in s.sorted_edges():
            sub = edge_subgraph(s, [e])
            k = canonical_form(sub)
            if k not in stmt:
                stmt[k] = (statement_name(s, e), sub)
    statements = []
    for k, (name, sub) in stmt.items():
        raw = contains_value(sub)
        is_axiom = any(embeds_into(sub, a) for a in axioms)
        statements.append(Theorem(name, sub, raw, raw / u_raw, is_axiom))
    statements.sort(key=lambda t: (t.raw, t.name))
    states = [Theorem(f"state{i}", s, c, c / u_raw, k in axiom_keys)
              for i, (k, (c, s)) in enumerate(ordered)]

    # statements as edge sets of the universe
    from .homs import find_embedding

    placed = []
    for t in statements:
        emb = find_embedding(t.graph, universe)
        if emb is None:
            continue
        (e,) = t.graph.edges
        img = next(f for f in universe.edges
                   if f.endpoints == tuple(emb[x] for x in e.endpoints) and f.label == e.label)
        placed.append((t, frozenset([img])))
    residuals = []
    for i in range(len(placed)):
        for j in range(i + 1, len(placed)):
            (s, es), (t, et) = placed[i], placed[j]
            mj = contains_value(edge_subgraph(universe, es | et))
            mm = contains_value(edge_subgraph(universe, es & et))
            ps, pt, pj, pm = (x / u_raw for x in (s.raw, t.raw, mj, mm))
            for ident, res in (("sum_rule", pj - ps - pt + pm), ("product_rule", pm - ps * pt)):
                residuals.append({"identity": ident, "operands": [s.name, t.name], "residual": res,
                                  "verdict": "zero" if res == 0 else "nonzero"})
    return TheoremReport(statements, states, universe, u_raw, residuals)
