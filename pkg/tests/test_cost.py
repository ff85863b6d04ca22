import itertools
import random
from fractions import Fraction

import pytest

import oracles as O
from costprob.canon import is_isomorphic
from costprob.cost import (
    LOOPS,
    STRICT,
    collapse_cost,
    core,
    identify,
    is_core,
    mergeable_pairs,
    quotient_map,
    replay,
    same_core,
    source_set,
    weighted_collapse_cost,
)
from costprob.errors import (
    AdjacentPairError,
    LabelConflictError,
    MissingNodeCostError,
    SizeBoundError,
    UnknownVertexError,
)
from costprob.graph import Hypergraph, Label, all_digraphs, complete, cycle, digraph, empty_graph, loop_vertex, path, random_digraph
from costprob.homs import embeds_into, hom_exists, is_homomorphism
from costprob.lattice import disjoint_union

C2, C4 = cycle(2), cycle(4)


def test_identify_examples():
    assert is_isomorphic(identify(path(3), 0, 2), C2)
    assert is_isomorphic(identify(C4, 1, 3), path(3))
    with pytest.raises(AdjacentPairError):
        identify(C2, 0, 1)
    with pytest.raises(UnknownVertexError):
        identify(C4, 0, 9)
    looped = identify(C2, 0, 1, mode=LOOPS)
    assert looped == loop_vertex()


def test_identify_label_conflict():
    g = Hypergraph(2, [], [Label("A"), Label("B")])
    with pytest.raises(LabelConflictError):
        identify(g, 0, 1)


def test_identify_is_a_homomorphic_quotient():
    rng = random.Random(2)
    for _ in range(200):
        g = random_digraph(rng, 6)
        for u, v in mergeable_pairs(g):
            q = identify(g, u, v)
            assert q.n == g.n - 1
            assert is_homomorphism(g, q, quotient_map(g.n, u, v))
            assert q == (lambda p: digraph(*p))(O.identify(O.plain(g), u, v))


def test_collapse_cost_examples():
    r = collapse_cost(C4, C2)
    assert r.cost == 2 and len(r.steps) == 2
    assert embeds_into(replay(C4, r), C2)
    for g in (C4, path(3), complete(3), empty_graph(0)):
        assert collapse_cost(g, g).cost == 0
    assert collapse_cost(C2, C4).cost == 0


def test_unreachable_and_bounds():
    r = collapse_cost(C2, empty_graph(1))
    assert r.cost is None and not r.reachable
    assert collapse_cost(C2, loop_vertex()).cost is None
    assert collapse_cost(C2, loop_vertex(), mode=LOOPS).cost == 1
    with pytest.raises(SizeBoundError):
        collapse_cost(empty_graph(20), empty_graph(1))


def test_collapse_cost_matches_sequence_oracle():
    rng = random.Random(17)
    for _ in range(120):
        g, h = random_digraph(rng, 5), random_digraph(rng, 4)
        for mode in (STRICT, LOOPS):
            got = collapse_cost(g, h, mode).cost
            want = O.sequence_cost(O.plain(g), O.plain(h), mode)
            assert got == want, (g, h, mode)


def test_cost_invariants():
    rng = random.Random(23)
    for _ in range(150):
        g, h = random_digraph(rng, 5), random_digraph(rng, 5)
        r = collapse_cost(g, h)
        assert (r.cost == 0) == embeds_into(g, h)
        if r.reachable:
            assert r.cost <= max(g.n - 1, 0)
            assert len(r.steps) == r.cost
            assert embeds_into(replay(g, r), h)


def test_triangle_on_witness():
    rng = random.Random(29)
    for _ in range(80):
        g, k = random_digraph(rng, 5), random_digraph(rng, 3)
        r = collapse_cost(g, k)
        if not r.steps:
            continue
        mid = r.steps[0].resulting_graph
        assert r.cost <= 1 + collapse_cost(mid, k).cost


def test_weighted_examples():
    g = C4.with_costs([1, 5, 1, 5])
    r = weighted_collapse_cost(g, C2)
    assert r.cost == 12
    assert r.steps[0].step_cost in (2, 10)
    assert weighted_collapse_cost(C4.with_costs([0] * 4), C2).cost == 0
    with pytest.raises(MissingNodeCostError):
        weighted_collapse_cost(C4, C2)


def test_weighted_matches_oracle():
    rng = random.Random(31)
    for _ in range(60):
        g, h = random_digraph(rng, 5), random_digraph(rng, 3)
        costs = [Fraction(rng.randint(0, 4), rng.choice([1, 2])) for _ in range(g.n)]
        got = weighted_collapse_cost(g.with_costs(costs), h).cost
        assert got == O.weighted_sequence_cost(O.plain(g), costs, O.plain(h))


def test_core_examples():
    assert is_isomorphic(core(C4), C2)
    assert is_isomorphic(core(C2), C2)
    assert core(disjoint_union(loop_vertex(), C2)) == loop_vertex()
    assert [is_isomorphic(s, C2) for s in source_set(C4)] == [True]
    assert source_set(empty_graph(0)) == [empty_graph(0)]
    assert is_isomorphic(source_set(disjoint_union(C2, C4))[0], C2)
    assert is_core(C2) and not is_core(C4)
    assert same_core(C4, cycle(6))


def test_core_matches_retract_oracle():
    rng = random.Random(37)
    for _ in range(150):
        g = random_digraph(rng, 6)
        c = core(g)
        pc = O.core(O.plain(g))
        assert O.isomorphic(O.plain(c), pc)
        assert hom_exists(g, c) and hom_exists(c, g)
        assert is_isomorphic(core(c), c)
