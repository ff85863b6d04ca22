import random
from fractions import Fraction

import pytest

import oracles as O
from costprob.errors import DegenerateUniverseError, UniverseSmallerThanQuery, UnknownValuation, ZeroConditionMeasure
from costprob.graph import complete, cycle, empty_graph, loop_vertex, path, random_digraph
from costprob.lattice import disjoint_union, tensor_product
from costprob.order import Relation, cond_prob, cost_order, normalize, raw_valuation, universe_raw, valuation

C2, C4, U8 = cycle(2), cycle(4), cycle(8)


def test_order_examples():
    r = cost_order(C2, C4)
    assert r.relation is Relation.LT
    assert r.details["valuations"] == (0, 2)
    assert cost_order(C4, C2).relation is Relation.GT
    assert cost_order(C4, C4).relation is Relation.EQ
    r = cost_order(C2, complete(3))
    assert r.relation is Relation.INCOMPARABLE and r.reason == "cores differ"


def test_valuation_examples():
    assert valuation(C4).raw == 2
    assert valuation(C2).raw == 0
    assert valuation(empty_graph(0)).raw == 0
    v = valuation(C4, universe=U8)
    assert v.normalized == Fraction(1, 3)


def test_unknown_valuation_in_strict_mode():
    g = disjoint_union(loop_vertex(), C2)
    assert raw_valuation(g) is None
    assert raw_valuation(g, mode="loops") == 2
    assert cost_order(g, disjoint_union(g, C2)).relation is Relation.INCOMPARABLE


def test_normalization_errors():
    with pytest.raises(UniverseSmallerThanQuery):
        valuation(cycle(8), universe=C4)
    with pytest.raises(DegenerateUniverseError):
        universe_raw(C2)
    with pytest.raises(UniverseSmallerThanQuery):
        normalize(Fraction(3), Fraction(2))


def test_cond_prob():
    # raw m(C2 x C4) = 6, m(C4) = 2: the ratio is reported even above 1
    assert cond_prob(C2, C4, U8) == 3
    with pytest.raises(ZeroConditionMeasure):
        cond_prob(C4, C2, U8)
    assert cond_prob(empty_graph(0), C4, U8) == 0
    assert cond_prob(empty_graph(1), C4, U8) == Fraction(3, 2)
    with pytest.raises(UnknownValuation):
        cond_prob(C2, disjoint_union(loop_vertex(), C2), U8)


def test_cond_prob_matches_oracle_ratio():
    p = O.product(O.plain(C2), O.plain(C4))
    assert cond_prob(C2, C4, U8) == Fraction(O.valuation(p), O.valuation(O.plain(C4)))


def test_cond_prob_is_invariant_under_universe_choice():
    assert cond_prob(C2, C4, U8) == cond_prob(C2, C4, cycle(10))


def test_monotonicity_and_antisymmetry_on_random_pairs():
    rng = random.Random(41)
    gs = [random_digraph(rng, 4) for _ in range(40)]
    for g in gs:
        for h in gs:
            r = cost_order(g, h).relation
            assert cost_order(h, g).relation is r.converse()
            if r is Relation.LT:
                assert raw_valuation(g) < raw_valuation(h)


def test_order_matches_brute_oracle():
    rng = random.Random(43)
    for _ in range(150):
        g, h = random_digraph(rng, 4), random_digraph(rng, 5)
        lt = cost_order(g, h).relation is Relation.LT
        assert lt == O.order_is_lt(O.plain(g), O.plain(h))


def test_transitivity_on_even_cycles_and_paths():
    family = [C2, C4, cycle(6), path(3), path(4), disjoint_union(C2, C2), disjoint_union(C2, C4)]
    for a in family:
        for b in family:
            for c in family:
                if cost_order(a, b).relation is Relation.LT and cost_order(b, c).relation is Relation.LT:
                    assert cost_order(a, c).relation is Relation.LT
