import random
from fractions import Fraction

import pytest

import oracles as O
from costprob.errors import CostProbError, UnknownVertexError
from costprob.graph import (
    Hyperedge,
    Hypergraph,
    Label,
    all_digraphs,
    as_fraction,
    complete,
    cycle,
    digraph,
    digraph_classes,
    directed_cycle,
    empty_graph,
    loop_vertex,
    path,
    random_digraph,
    symmetric,
)


def test_float_weights_are_read_through_their_decimal_repr():
    assert as_fraction(0.8) == Fraction(4, 5)
    assert Label("Inh", 0.8).weight * Label("Inh", 0.5).weight == Fraction(2, 5)


@pytest.mark.parametrize("w", [-1, Fraction(3, 2)])
def test_weight_outside_unit_interval_rejected(w):
    with pytest.raises(CostProbError):
        Label("Inh", w)


def test_edges_are_a_set():
    g = Hypergraph(2, [(0, 1), (0, 1), (1, 0)])
    assert len(g.edges) == 2


def test_unknown_endpoint_rejected():
    with pytest.raises(UnknownVertexError):
        Hypergraph(2, [(0, 2)])


def test_equality_ignores_name_but_not_labels():
    a = digraph(2, [(0, 1)], name="a")
    b = digraph(2, [(0, 1)], name="b")
    assert a == b and hash(a) == hash(b)
    c = Hypergraph(2, [Hyperedge((0, 1), Label("Inh"))])
    assert a != c
    assert Hypergraph(1, [Hyperedge((0, 0), Label())], [Label()]) == digraph(1, [(0, 0)])


def test_builders():
    assert cycle(2) == symmetric(2, [(0, 1)])
    assert len(cycle(4).edges) == 8
    assert len(directed_cycle(3).edges) == 3
    assert len(path(3).edges) == 4
    assert len(complete(3).edges) == 6
    assert loop_vertex().has_loop(0)
    assert empty_graph(0).n == 0


def test_mixed_arity_hypergraph_is_not_a_digraph():
    g = Hypergraph(3, [(0, 1, 2), (0, 1)])
    assert not g.is_digraph
    assert digraph(2, [(0, 1)]).is_digraph
    assert g.arities() == {2, 3}


def test_components_and_induced():
    g = digraph(5, [(0, 1), (2, 3), (3, 3)])
    assert sorted(map(sorted, g.components())) == [[0, 1], [2, 3], [4]]
    sub = g.induced([2, 3])
    assert sub == digraph(2, [(0, 1), (1, 1)])


def test_enumeration_counts_match_oracle():
    assert sum(1 for _ in all_digraphs(2)) == sum(1 for _ in O.all_digraphs(2)) == 16
    # isomorphism classes of digraphs with loops on 0..3 vertices: 1 + 2 + 10 + 104
    assert len(digraph_classes(3)) == 117


def test_random_digraph_is_seeded():
    a = [random_digraph(random.Random(3), 5) for _ in range(3)]
    b = [random_digraph(random.Random(3), 5) for _ in range(3)]
    assert a == b
    assert all(1 <= g.n <= 5 for g in a)
