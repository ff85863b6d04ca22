"""Property suites behind ``costprob check``.

``lattice-laws``, ``residuation`` and ``monotonicity`` are assertions: any
violation is a bug and makes the command fail.  ``lemma1`` and
``ks-symmetries`` are measurements: they report what they find.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .canon import canonical_form, is_isomorphic, is_isomorphism
from .cost import COLLAPSE_BOUND, STRICT, core
from .graph import (
    Hypergraph,
    all_digraphs,
    complete,
    cycle,
    digraph_classes,
    directed_cycle,
    empty_graph,
    loop_vertex,
    random_digraph,
)
from .homs import hom_exists
from .io import graph_to_dict
from .lattice import disjoint_union, exponential, tensor_product
from .order import Relation, cost_order, raw_valuation
from .symmetry import SamplingSpec, symmetry_report

ASSERTION_SUITES = ("lattice-laws", "residuation", "monotonicity")
MEASUREMENT_SUITES = ("lemma1", "ks-symmetries")
SUITES = ASSERTION_SUITES + MEASUREMENT_SUITES


@dataclass
class SuiteReport:
    name: str
    config: dict
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    measurements: dict = field(default_factory=dict)
    expected_clean: bool = True

    def count(self, check: str, ok: bool, *operands: Hypergraph, **detail):
        c = self.checks.setdefault(check, {"checked": 0, "violations": 0})
        c["checked"] += 1
        if not ok:
            c["violations"] += 1
            self.violations.append({
                "check": check,
                "operands": [graph_to_dict(g) for g in operands],
                **detail,
            })

    @property
    def violation_count(self) -> int:
        return sum(c["violations"] for c in self.checks.values())

    @property
    def failed(self) -> bool:
        return self.expected_clean and self.violation_count > 0

    def to_dict(self):
        return {
            "suite": self.name,
            "config": self.config,
            "assertion": self.expected_clean,
            "checks": self.checks,
            "violations": self.violations,
            "measurements": self.measurements,
        }


def _same(a: Hypergraph, b: Hypergraph, witness=None) -> bool:
    """Isomorphism test that first tries an expected witness map."""
    if witness is None:
        if a == b:
            return True
    elif is_isomorphism(a, b, witness):
        return True
    return is_isomorphic(a, b)


def _swap_union(g: Hypergraph, h: Hypergraph) -> list[int]:
    return [v + h.n if v < g.n else v - g.n for v in range(g.n + h.n)]


def _swap_product(g: Hypergraph, h: Hypergraph) -> list[int]:
    return [j * g.n + i for i in range(g.n) for j in range(h.n)]


def _random_family(seed: int, count: int, max_vertices: int) -> list[Hypergraph]:
    rng = random.Random(seed)
    return [random_digraph(rng, max_vertices) for _ in range(count)]


def lattice_laws(max_vertices: int = 3, samples: int = 60, sample_vertices: int = 4,
                 seed: int = 7) -> SuiteReport:
    """Commutativity and associativity of union and product, and
    distributivity of product over union, up to isomorphism.

    Exhaustive over isomorphism classes of digraphs (loops allowed) with at
    most ``max_vertices`` vertices, then over seeded random triples of
    larger graphs.
    """
    rep = SuiteReport("lattice-laws", {"max_vertices": max_vertices, "samples": samples,
                                       "sample_vertices": sample_vertices, "seed": seed})
    classes = digraph_classes(max_vertices)
    rep.measurements["classes"] = len(classes)
    n = len(classes)
    union = [[disjoint_union(a, b) for b in classes] for a in classes]
    prod = [[tensor_product(a, b) for b in classes] for a in classes]
    for i, j in itertools.product(range(n), repeat=2):
        g, h = classes[i], classes[j]
        rep.count("union_commutative", _same(union[i][j], union[j][i], _swap_union(g, h)), g, h)
        rep.count("product_commutative", _same(prod[i][j], prod[j][i], _swap_product(g, h)), g, h)
    for i, j in itertools.product(range(n), repeat=2):
        g, h = classes[i], classes[j]
        uij, pij = union[i][j], prod[i][j]
        for k in range(n):
            c = classes[k]
            rep.count("union_associative",
                      _same(disjoint_union(uij, c), disjoint_union(g, union[j][k])), g, h, c)
            rep.count("product_associative",
                      _same(tensor_product(pij, c), tensor_product(g, prod[j][k])), g, h, c)
            rep.count("distributive",
                      _same(tensor_product(uij, c), disjoint_union(prod[i][k], prod[j][k])), g, h, c)
    fam = _random_family(seed, 3 * samples, sample_vertices)
    for t in range(samples):
        g, h, c = fam[3 * t: 3 * t + 3]
        rep.count("union_commutative", is_isomorphic(disjoint_union(g, h), disjoint_union(h, g)), g, h)
        rep.count("product_commutative", is_isomorphic(tensor_product(g, h), tensor_product(h, g)), g, h)
        rep.count("union_associative", is_isomorphic(disjoint_union(disjoint_union(g, h), c),
                                                     disjoint_union(g, disjoint_union(h, c))), g, h, c)
        rep.count("product_associative", is_isomorphic(tensor_product(tensor_product(g, h), c),
                                                       tensor_product(g, tensor_product(h, c))), g, h, c)
        rep.count("distributive", is_isomorphic(tensor_product(disjoint_union(g, h), c),
                                                disjoint_union(tensor_product(g, c), tensor_product(h, c))),
                  g, h, c)
    return rep


def residuation(max_vertices: int = 2, mode: str = STRICT) -> SuiteReport:
    """``hom(c x a, b)`` iff ``hom(c, b^a)`` over every digraph (not just
    every isomorphism class) with at most ``max_vertices`` vertices.

    Also measures (without asserting) whether the same adjunction holds when
    homomorphism is replaced by the cost-based order (LT or EQ).
    """
    rep = SuiteReport("residuation", {"max_vertices": max_vertices, "mode": mode})
    classes = [g for n in range(max_vertices + 1) for g in all_digraphs(n)]
    expo = {(i, j): exponential(a, b) for i, a in enumerate(classes) for j, b in enumerate(classes)}
    cost_agree = cost_disagree = 0
    disagreements = []

    def le(x, y):
        return cost_order(x, y, mode).relation in (Relation.LT, Relation.EQ)

    for (ia, a), (ib, b), c in itertools.product(enumerate(classes), enumerate(classes), classes):
        ab = expo[ia, ib]
        ca = tensor_product(c, a)
        left = hom_exists(ca, b)
        right = hom_exists(c, ab)
        rep.count("hom_residuation", left == right, a, b, c, left=left, right=right)
        if le(ca, b) == le(c, ab):
            cost_agree += 1
        else:
            cost_disagree += 1
            if len(disagreements) < 20:
                disagreements.append([graph_to_dict(x) for x in (a, b, c)])
    rep.measurements["cost_order_residuation"] = {
        "agree": cost_agree,
        "disagree": cost_disagree,
        "first_disagreements": disagreements,
    }
    return rep


def monotonicity(count: int = 500, max_vertices: int = 5, seed: int = 7, exhaustive_vertices: int = 3,
                 mode: str = STRICT, collapse_bound: int = COLLAPSE_BOUND) -> SuiteReport:
    """Over every pair of the family: LT implies strictly smaller valuation,
    LT is never mutual, and the order is consistent with its converse."""
    rep = SuiteReport("monotonicity", {"count": count, "max_vertices": max_vertices, "seed": seed,
                                       "exhaustive_vertices": exhaustive_vertices, "mode": mode})
    family = digraph_classes(exhaustive_vertices) + _random_family(seed, count, max_vertices)
    rep.measurements["family_size"] = len(family)
    relations: dict[str, int] = {}
    for g, h in itertools.combinations(family, 2):
        fwd = cost_order(g, h, mode, collapse_bound).relation
        back = cost_order(h, g, mode, collapse_bound).relation
        relations[fwd.value] = relations.get(fwd.value, 0) + 1
        if fwd is Relation.LT:
            vg, vh = raw_valuation(g, mode, collapse_bound), raw_valuation(h, mode, collapse_bound)
            rep.count("valuation_monotone", vg < vh, g, h)
        elif fwd is Relation.GT:
            vg, vh = raw_valuation(g, mode, collapse_bound), raw_valuation(h, mode, collapse_bound)
            rep.count("valuation_monotone", vh < vg, g, h)
        rep.count("antisymmetric", not (fwd is Relation.LT and back is Relation.LT), g, h)
        rep.count("converse_consistent", back is fwd.converse(), g, h)
        if fwd is Relation.LT:
            rep.count("lt_implies_hom_and_core", hom_exists(g, h) and
                      canonical_form(core(g)) == canonical_form(core(h)), g, h)
    rep.measurements["relations"] = dict(sorted(relations.items()))
    return rep


def curated_lemma1_triples() -> list[tuple[str, Hypergraph, Hypergraph, Hypergraph]]:
    c2, c4 = cycle(2), cycle(4)
    return [
        ("C2<C4 plus directed 3-cycle", c2, c4, directed_cycle(3)),
        ("C2<C4 plus isolated vertex", c2, c4, empty_graph(1)),
        ("C2<C4 plus loop vertex", c2, c4, loop_vertex()),
        ("C2<C4 plus C4", c2, c4, c4),
        ("C2<C4 plus K3", c2, c4, complete(3)),
        ("K1<2K1 plus C2", empty_graph(1), empty_graph(2), c2),
    ]


def lemma1_triples(count: int = 200, seed: int = 7, max_vertices: int = 3) -> list[tuple[Hypergraph, Hypergraph, Hypergraph]]:
    """Seeded triples ``(g, h, a)``.  Odd-indexed triples take ``h = g + x``
    with ``x`` a random subgraph of ``g``, which makes ``g < h`` likely so
    the implication is exercised and not just vacuous."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        g = random_digraph(rng, max_vertices, loop_prob=0.05)
        a = random_digraph(rng, max_vertices, loop_prob=0.05)
        if i % 2:
            keep = [v for v in range(g.n) if rng.random() < 0.7] or [0]
            sub = g.induced(keep)
            sub = sub.without_edges([e for e in sub.sorted_edges() if rng.random() < 0.3])
            h = disjoint_union(g, sub)
        else:
            h = random_digraph(rng, max_vertices, loop_prob=0.05)
        out.append((g, h, a))
    return out


def lemma1_verdict(g: Hypergraph, h: Hypergraph, a: Hypergraph, mode: str = STRICT,
                   collapse_bound: int = COLLAPSE_BOUND) -> dict:
    rel = cost_order(g, h, mode, collapse_bound).relation
    out = {"relation": rel.value}
    if rel is not Relation.LT:
        out["verdict"] = "vacuous"
        return out
    rel2 = cost_order(disjoint_union(g, a), disjoint_union(h, a), mode, collapse_bound)
    out["joined_relation"] = rel2.relation.value
    out["joined_reason"] = rel2.reason
    out["verdict"] = "holds" if rel2.relation is Relation.LT else "violated"
    return out


def lemma1(count: int = 200, seed: int = 7, max_vertices: int = 3, mode: str = STRICT) -> SuiteReport:
    """Does ``g < h`` imply ``g + a < h + a``?  Counts holds / violated /
    vacuous over curated and seeded triples."""
    rep = SuiteReport("lemma1", {"count": count, "seed": seed, "max_vertices": max_vertices, "mode": mode},
                      expected_clean=False)
    curated = []
    for name, g, h, a in curated_lemma1_triples():
        v = lemma1_verdict(g, h, a, mode)
        curated.append({"name": name, **v})
    tally: dict[str, int] = {}
    rows = []
    for i, (g, h, a) in enumerate(lemma1_triples(count, seed, max_vertices)):
        v = lemma1_verdict(g, h, a, mode)
        tally[v["verdict"]] = tally.get(v["verdict"], 0) + 1
        rows.append({"index": i, **v})
        if v["verdict"] == "violated":
            rep.violations.append({"check": "lemma1", "index": i,
                                   "operands": [graph_to_dict(x) for x in (g, h, a)], **v})
    rep.checks["lemma1"] = {"checked": count, "violations": tally.get("violated", 0)}
    rep.measurements = {"curated": curated, "tally": dict(sorted(tally.items())), "triples": rows}
    return rep


def ks_symmetries(samples: int = 200, seed: int = 7, max_vertices: int = 3, universe: Hypergraph | None = None,
                  mode: str = STRICT, workers: int = 1):
    universe = universe if universe is not None else cycle(8)
    spec = SamplingSpec(count=samples, max_vertices=max_vertices, seed=seed)
    report = symmetry_report(spec, universe, mode=mode, workers=workers)
    rep = SuiteReport("ks-symmetries", {"samples": samples, "seed": seed, "max_vertices": max_vertices,
                                        "mode": mode, "universe": canonical_form(universe).digest()},
                      expected_clean=False)
    for ident, stats in report.summary().items():
        bad = stats["counts"].get("violated", 0) + stats["counts"].get("nonzero", 0)
        rep.checks[ident] = {"checked": sum(stats["counts"].values()), "violations": bad}
    rep.measurements = report.to_dict()
    return rep, report
