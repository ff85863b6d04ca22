"""Measure how the cost-based valuation behaves under the inference
symmetries: order monotonicity, join/order compatibility, and the sum,
product and chain rules.  Everything is evaluated exactly; the identities
are treated as hypotheses and every residual is reported.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .canon import canonical_form
from .cost import COLLAPSE_BOUND, STRICT
from .errors import DegenerateObservations, SizeBoundError
from .graph import Hypergraph, random_digraph
from .homs import hom_exists
from .io import graph_to_dict
from .lattice import disjoint_union, tensor_product
from .order import Relation, cost_order, raw_valuation

IDENTITIES = ("monotonicity", "join_order", "sum_rule", "product_rule", "chain_rule")


@dataclass(frozen=True)
class SamplingSpec:
    count: int = 200
    max_vertices: int = 3
    seed: int = 7
    edge_prob: float = 0.5
    loop_prob: float = 0.1

    def sample(self) -> list[tuple[Hypergraph, Hypergraph, Hypergraph]]:
        """``count`` triples drawn from ``random.Random(seed)``."""
        rng = random.Random(self.seed)
        out = []
        for _ in range(self.count):
            out.append(tuple(
                random_digraph(rng, self.max_vertices, self.edge_prob, self.loop_prob)
                for _ in range(3)
            ))
        return out

    def describe(self) -> str:
        return (f"{self.count} triples of random digraphs, 1..{self.max_vertices} vertices, "
                f"arc p={self.edge_prob}, loop p={self.loop_prob}, random.Random({self.seed})")


@dataclass
class TupleRecord:
    identity: str
    index: int
    operands: tuple[str, ...]
    residual: Fraction | None
    verdict: str
    in_universe: bool = True
    raw: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "identity": self.identity,
            "index": self.index,
            "operands": list(self.operands),
            "residual": self.residual,
            "verdict": self.verdict,
            "in_universe": self.in_universe,
            "raw": self.raw,
        }


@dataclass
class SymmetryReport:
    family: str
    universe: str
    universe_raw: Fraction
    mode: str
    records: list[TupleRecord]
    operands: dict[str, dict]

    def by_identity(self, identity: str) -> list[TupleRecord]:
        return [r for r in self.records if r.identity == identity]

    def summary(self) -> dict:
        out = {}
        for ident in IDENTITIES:
            rows = self.by_identity(ident)
            counts: dict[str, int] = {}
            for r in rows:
                counts[r.verdict] = counts.get(r.verdict, 0) + 1
            residuals = [r.residual for r in rows if r.residual is not None]
            stats = {"counts": dict(sorted(counts.items())), "evaluated": len(residuals)}
            if residuals:
                stats["min"] = min(residuals)
                stats["max"] = max(residuals)
                stats["mean"] = sum(residuals, Fraction(0)) / len(residuals)
                stats["mean_abs"] = sum((abs(x) for x in residuals), Fraction(0)) / len(residuals)
            out[ident] = stats
        return out

    def counterexamples(self) -> list[TupleRecord]:
        return [r for r in self.records if r.verdict in ("violated", "nonzero")]

    def to_dict(self):
        return {
            "family": self.family,
            "universe": self.universe,
            "universe_raw": self.universe_raw,
            "mode": self.mode,
            "summary": self.summary(),
            "records": [r.to_dict() for r in self.records],
            "counterexamples": [
                {"identity": r.identity, "index": r.index, "operands": list(r.operands)}
                for r in self.counterexamples()
            ],
            "operands": self.operands,
        }

    def csv_rows(self) -> list[list]:
        return [
            [r.identity, r.index, " ".join(r.operands), r.residual, r.verdict]
            for r in self.records
        ]


CSV_HEADER = ["identity", "index", "operands", "residual", "verdict"]


def _digest(g: Hypergraph) -> str:
    return canonical_form(g).digest()


def _val(g: Hypergraph, mode: str, max_vertices: int):
    """Raw valuation, or a string marker when it cannot be evaluated."""
    try:
        v = raw_valuation(g, mode, max_vertices)
    except SizeBoundError:
        return "size"
    return "unknown" if v is None else v


def _verdict_for(values) -> str | None:
    if any(v == "size" for v in values):
        return "skipped"
    if any(v == "unknown" for v in values):
        return "unknown"
    return None


def evaluate_triple(index: int, g: Hypergraph, h: Hypergraph, k: Hypergraph, universe_value: Fraction,
                    mode: str = STRICT, max_vertices: int = COLLAPSE_BOUND) -> list[TupleRecord]:
    """All five identity checks for one sampled triple ``(g, h, k)``.

    ``k`` plays the added component in the join/order check and the outer
    condition in the chain rule.
    """
    dg, dh, dk = _digest(g), _digest(h), _digest(k)
    records = []
    rel = cost_order(g, h, mode, max_vertices).relation
    vg, vh, vk = (_val(x, mode, max_vertices) for x in (g, h, k))

    def inside(*vals):
        return all(v <= universe_value for v in vals)

    # monotonicity
    if rel in (Relation.LT, Relation.GT):
        lo, hi = (vg, vh) if rel is Relation.LT else (vh, vg)
        verdict = "holds" if lo < hi else "violated"
    else:
        verdict = "vacuous"
    records.append(TupleRecord("monotonicity", index, (dg, dh), None, verdict,
                               raw={"relation": rel.value, "g": vg, "h": vh}))

    # join/order: g < h  =>  g + k < h + k
    if rel is Relation.LT:
        rel2 = cost_order(disjoint_union(g, k), disjoint_union(h, k), mode, max_vertices).relation
        verdict = "holds" if rel2 is Relation.LT else "violated"
        raw = {"relation": rel.value, "joined_relation": rel2.value}
    else:
        verdict = "vacuous"
        raw = {"relation": rel.value}
    records.append(TupleRecord("join_order", index, (dg, dh, dk), None, verdict, raw=raw))

    # sum rule: m(g+h) = m(g) + m(h) - m(g x h)
    vj = _val(disjoint_union(g, h), mode, max_vertices)
    vm = _val(tensor_product(g, h), mode, max_vertices)
    bad = _verdict_for((vg, vh, vj, vm))
    raw = {"g": vg, "h": vh, "join": vj, "meet": vm}
    if bad:
        records.append(TupleRecord("sum_rule", index, (dg, dh), None, bad, raw=raw))
    else:
        res = (vj - vg - vh + vm) / universe_value
        records.append(TupleRecord("sum_rule", index, (dg, dh), res, "zero" if res == 0 else "nonzero",
                                   inside(vg, vh, vj, vm), raw))

    # product rule on incomparable pairs: m(g x h) = m(g) m(h)
    if rel is Relation.INCOMPARABLE:
        bad = _verdict_for((vg, vh, vm))
        raw = {"g": vg, "h": vh, "meet": vm, "relation": rel.value}
        if bad:
            records.append(TupleRecord("product_rule", index, (dg, dh), None, bad, raw=raw))
        else:
            u = universe_value
            res = vm / u - (vg / u) * (vh / u)
            records.append(TupleRecord("product_rule", index, (dg, dh), res,
                                       "zero" if res == 0 else "nonzero", inside(vg, vh, vm), raw))
    else:
        records.append(TupleRecord("product_rule", index, (dg, dh), None, "n/a",
                                   raw={"relation": rel.value}))

    # chain rule on hom-nested triples: p(g|h) p(h|k) = p(g x h | k)
    if hom_exists(g, h) and hom_exists(h, k):
        gh = tensor_product(g, h)
        vgh = vm
        vhk = _val(tensor_product(h, k), mode, max_vertices)
        try:
            ghk = tensor_product(gh, k)
            vghk = _val(ghk, mode, max_vertices) if ghk.n <= max_vertices else "size"
        except SizeBoundError:
            vghk = "size"
        raw = {"h": vh, "k": vk, "gh": vgh, "hk": vhk, "ghk": vghk}
        bad = _verdict_for((vh, vk, vgh, vhk, vghk))
        if bad:
            records.append(TupleRecord("chain_rule", index, (dg, dh, dk), None, bad, raw=raw))
        elif vh == 0 or vk == 0:
            records.append(TupleRecord("chain_rule", index, (dg, dh, dk), None, "undefined", raw=raw))
        else:
            res = (vgh / vh) * (vhk / vk) - vghk / vk
            records.append(TupleRecord("chain_rule", index, (dg, dh, dk), res,
                                       "zero" if res == 0 else "nonzero",
                                       inside(vh, vk, vgh, vhk, vghk), raw))
    else:
        records.append(TupleRecord("chain_rule", index, (dg, dh, dk), None, "n/a"))
    return records


def _evaluate_star(args):
    return evaluate_triple(*args)


def symmetry_report(family: SamplingSpec, universe: Hypergraph, mode: str = STRICT,
                    max_vertices: int = COLLAPSE_BOUND, workers: int = 1) -> SymmetryReport:
    """Evaluate every identity on every sampled triple.

    With ``workers > 1`` triples are spread over processes; results are
    merged in sample order, so the report does not depend on the worker count.
    """
    from .order import universe_raw

    u = universe_raw(universe, mode, max_vertices)
    triples = family.sample()
    jobs = [(i, g, h, k, u, mode, max_vertices) for i, (g, h, k) in enumerate(triples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_evaluate_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        chunks = [_evaluate_star(j) for j in jobs]
    records = [r for chunk in chunks for r in chunk]
    operands = {}
    for g, h, k in triples:
        for x in (g, h, k):
            operands.setdefault(_digest(x), graph_to_dict(x))
    return SymmetryReport(family.describe(), _digest(universe), u, mode, records,
                          dict(sorted(operands.items())))


# ---------------------------------------------------------------------------
# Monotone rescaling fit


@dataclass(frozen=True)
class RescalingFit:
    family: str
    parameters: dict
    residual: Fraction
    candidates: tuple = ()

    def to_dict(self):
        return {
            "family": self.family,
            "parameters": self.parameters,
            "residual": self.residual,
            "candidates": [
                {"family": f, "parameters": p, "residual": r} for f, p, r in self.candidates
            ],
            "note": "least-squares compromise; residual measures how far the identities remain from exact",
        }


def observations(report: SymmetryReport):
    """(sum observations, product observations) as tuples of raw valuations."""
    sums = []
    prods = []
    for r in report.records:
        if r.identity == "sum_rule" and r.residual is not None:
            sums.append((r.raw["g"], r.raw["h"], r.raw["join"], r.raw["meet"]))
        elif r.identity == "product_rule" and r.residual is not None:
            prods.append((r.raw["g"], r.raw["h"], r.raw["meet"]))
    return sums, prods


def fit_objective(family: str, params: dict, sums, prods, scale: Fraction):
    """Sum of squared sum- and product-rule residuals of ``f(raw)``,
    divided by ``f(scale)`` so that the overall size of ``f`` cannot
    shrink the residuals towards zero."""
    if family == "linear":
        s = params["slope"]

        def f(x):
            return s * x
    else:
        a, b = float(params["a"]), float(params["b"])

        def f(x):
            return a * b ** float(x)
    norm = f(scale)
    total = 0
    for x, y, u, z in sums:
        total += ((f(u) - f(x) - f(y) + f(z)) / norm) ** 2
    for x, y, z in prods:
        total += ((f(z) - f(x) * f(y)) / norm) ** 2
    return total


def rescaling_fit(report: SymmetryReport) -> RescalingFit:
    """Fit ``f(x) = slope * x`` and ``f(x) = a * b**x`` (``b > 1``) to the
    observed raw valuations; returns the family with the smaller residual."""
    from scipy.optimize import minimize_scalar

    sums, prods = observations(report)
    raws = {v for obs in sums for v in obs} | {v for obs in prods for v in obs}
    if len(raws) <= 1:
        raise DegenerateObservations("all observed raw valuations are equal")
    if len(raws) < 3:
        raise DegenerateObservations(f"need at least 3 distinct raw valuations, got {len(raws)}")
    scale = max(raws)

    # linear: the sum-rule part does not depend on the slope, the product
    # part is quadratic in it
    num = sum((z * x * y for x, y, z in prods), Fraction(0))
    den = sum(((x * y) ** 2 for x, y, z in prods), Fraction(0))
    slope = num / den if den else Fraction(1)
    if slope <= 0:
        slope = Fraction(1, 1000)
    lin_params = {"slope": slope}
    lin_res = fit_objective("linear", lin_params, sums, prods, scale)

    # exponential: for fixed b the best a is a least-squares ratio
    def best_a(b: float) -> float:
        top = sum(b ** float(z) * b ** float(x + y) for x, y, z in prods)
        bottom = sum(b ** float(2 * (x + y)) for x, y, z in prods)
        return top / bottom if bottom else 1.0

    def objective(logb: float) -> float:
        b = math.exp(logb)
        return fit_objective("exponential", {"a": best_a(b), "b": b}, sums, prods, scale)

    # the objective is not unimodal in b: scan, then refine around the best point
    lo, hi = 1e-6, math.log(16.0)
    grid = [lo + (hi - lo) * i / 400 for i in range(401)]
    i = min(range(len(grid)), key=lambda k: objective(grid[k]))
    bracket = (grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)])
    opt = minimize_scalar(objective, bounds=bracket, method="bounded", options={"xatol": 1e-12})
    if objective(grid[i]) < opt.fun:
        opt.x = grid[i]
    b = math.exp(opt.x)
    exp_params = {"a": Fraction(best_a(b)), "b": Fraction(b)}
    exp_res = Fraction(objective(opt.x))

    candidates = (("linear", lin_params, Fraction(lin_res)), ("exponential", exp_params, exp_res))
    best = min(candidates, key=lambda c: (c[2], c[0] != "linear"))
    return RescalingFit(best[0], best[1], best[2], candidates)
