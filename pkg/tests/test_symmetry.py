import itertools
import math
from fractions import Fraction

import pytest

import oracles as O
from costprob.errors import DegenerateObservations
from costprob.graph import complete, cycle, digraph, directed_cycle, empty_graph, path
from costprob.lattice import disjoint_union
from costprob.symmetry import (
    SamplingSpec,
    SymmetryReport,
    TupleRecord,
    evaluate_triple,
    fit_objective,
    observations,
    rescaling_fit,
    symmetry_report,
)

C2, C4, U8 = cycle(2), cycle(4), cycle(8)


def test_sum_rule_residual_for_c2_c2():
    recs = evaluate_triple(0, C2, C2, C2, Fraction(6))
    rec = next(r for r in recs if r.identity == "sum_rule")
    p = O.plain(C2)
    vals = [O.valuation(x) for x in (p, p, O.union(p, p), O.product(p, p))]
    assert vals == [0, 0, 2, 2]
    assert rec.residual == Fraction(vals[2] - vals[0] - vals[1] + vals[3], 6) == Fraction(2, 3)
    assert rec.verdict == "nonzero"


def test_curated_join_order_triple():
    recs = evaluate_triple(0, C2, C4, directed_cycle(3), Fraction(6))
    rec = next(r for r in recs if r.identity == "join_order")
    g, h, a = O.plain(C2), O.plain(C4), O.plain(directed_cycle(3))
    want = "holds" if O.order_is_lt(O.union(g, a), O.union(h, a)) else "violated"
    assert rec.verdict == want


def test_report_is_deterministic_and_exact():
    spec = SamplingSpec(count=30, seed=3)
    a = symmetry_report(spec, U8)
    b = symmetry_report(spec, U8)
    assert a.to_dict() == b.to_dict()
    assert a.csv_rows() == b.csv_rows()
    assert all(isinstance(r.residual, Fraction) for r in a.records if r.residual is not None)
    assert len(a.records) == 5 * 30
    for r in a.counterexamples():
        assert r.verdict in ("violated", "nonzero")


def _fake(sums, prods):
    recs = []
    for i, (x, y, u, z) in enumerate(sums):
        recs.append(TupleRecord("sum_rule", i, (), Fraction(0), "zero", True,
                                {"g": x, "h": y, "join": u, "meet": z}))
    for i, (x, y, z) in enumerate(prods):
        recs.append(TupleRecord("product_rule", i, (), Fraction(0), "zero", True,
                                {"g": x, "h": y, "meet": z}))
    return SymmetryReport("fake", "u", Fraction(6), "strict", recs, {})


def test_fit_already_satisfied_is_linear_identity():
    rep = _fake([(1, 2, 3, 0), (2, 2, 4, 0), (0, 3, 3, 0)], [(1, 2, 2), (2, 2, 4), (1, 3, 3)])
    fit = rescaling_fit(rep)
    assert fit.family == "linear"
    assert fit.parameters["slope"] == 1
    assert fit.residual == 0


def test_fit_degenerate():
    with pytest.raises(DegenerateObservations):
        rescaling_fit(_fake([(1, 1, 1, 1)], [(1, 1, 1)]))
    with pytest.raises(DegenerateObservations):
        rescaling_fit(_fake([(1, 2, 1, 2)], [(1, 2, 2)]))


CURATED_FAMILY = [C2, path(3), complete(3), empty_graph(1), empty_graph(2), empty_graph(3),
                  directed_cycle(3), digraph(3, [(0, 1), (1, 2)]), digraph(2, [(0, 1)]),
                  digraph(3, [(0, 1), (2, 1)])]


def test_fit_against_grid_oracle():
    records = []
    for i, (g, h) in enumerate(itertools.combinations(CURATED_FAMILY, 2)):
        records.extend(evaluate_triple(i, g, h, g, Fraction(6)))
    rep = SymmetryReport("curated", "u8", Fraction(6), "strict", records, {})
    sums, prods = observations(rep)
    raws = {v for o in sums for v in o} | {v for o in prods for v in o}
    scale = max(raws)
    fit = rescaling_fit(rep)
    cand = {f: (p, r) for f, p, r in fit.candidates}

    lin_grid = min(fit_objective("linear", {"slope": Fraction(k, 100)}, sums, prods, scale)
                   for k in range(1, 1001))
    assert cand["linear"][1] <= lin_grid
    exp_grid = min(
        fit_objective("exponential", {"a": math.exp(la / 20), "b": 1 + kb / 20}, sums, prods, scale)
        for la in range(-60, 61) for kb in range(1, 301)
    )
    assert float(cand["exponential"][1]) <= exp_grid * (1 + 1e-9) + 1e-12
    best = min(lin_grid, exp_grid)
    assert float(fit.residual) <= best * (1 + 1e-9) + 1e-12
    # the fitted map is strictly increasing on the observed range
    p = fit.parameters
    if fit.family == "linear":
        assert p["slope"] > 0
    else:
        assert p["a"] > 0 and p["b"] > 1
