import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from costprob.canon import (
    canonical_form,
    canonical_form_exhaustive,
    canonical_graph,
    is_isomorphic,
    is_isomorphism,
)
from costprob.errors import SizeBoundError
from costprob.graph import Hyperedge, Hypergraph, Label, all_digraphs, cycle, empty_graph, path, random_digraph


def test_examples():
    c4 = cycle(4)
    assert canonical_form(c4) == canonical_form(c4.relabel([2, 0, 3, 1]))
    assert canonical_form(c4) != canonical_form(path(4))
    assert canonical_form_exhaustive(c4) != canonical_form_exhaustive(path(4))
    assert canonical_form(empty_graph(0)) == canonical_form(Hypergraph(0, []))
    assert canonical_form(empty_graph(0)) != canonical_form(empty_graph(1))


def test_refined_agrees_with_exhaustive_on_all_three_vertex_digraphs():
    graphs = [g for n in range(4) for g in all_digraphs(n)]
    by_refined = {}
    by_exhaustive = {}
    for g in graphs:
        by_refined.setdefault(canonical_form(g), []).append(g)
        by_exhaustive.setdefault(canonical_form_exhaustive(g), []).append(g)
    assert len(by_refined) == len(by_exhaustive) == 117
    assert sorted(map(len, by_refined.values())) == sorted(map(len, by_exhaustive.values()))


def test_refined_agrees_with_brute_isomorphism_on_random_pairs():
    rng = random.Random(11)
    for _ in range(300):
        g = random_digraph(rng, 5, min_vertices=4)
        h = random_digraph(rng, 5, min_vertices=4)
        same = canonical_form(g) == canonical_form(h)
        assert same == O.isomorphic(O.plain(g), O.plain(h))
        assert same == (canonical_form_exhaustive(g) == canonical_form_exhaustive(h))


def test_regular_graphs_with_symmetry():
    # two non-isomorphic 3-regular graphs on 6 vertices: prism and K3,3
    prism = Hypergraph(6, [(u, v) for u, v in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                                               (0, 3), (1, 4), (2, 5)]] +
                          [(v, u) for u, v in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                                               (0, 3), (1, 4), (2, 5)]])
    k33 = Hypergraph(6, [(u, v) for u in range(3) for v in range(3, 6)] +
                        [(v, u) for u in range(3) for v in range(3, 6)])
    assert canonical_form(prism) != canonical_form(k33)
    assert canonical_form(prism) == canonical_form(prism.relabel([5, 3, 1, 0, 2, 4]))


def test_labels_and_hyperedges_are_part_of_the_form():
    a = Hypergraph(2, [Hyperedge((0, 1), Label("Inh", 0.5))])
    b = Hypergraph(2, [Hyperedge((0, 1), Label("Inh", 0.4))])
    assert canonical_form(a) != canonical_form(b)
    h1 = Hypergraph(3, [(0, 1, 2)])
    h2 = Hypergraph(3, [(2, 0, 1)])
    assert canonical_form(h1) == canonical_form(h2)


def test_bounds():
    with pytest.raises(SizeBoundError):
        canonical_form_exhaustive(empty_graph(11))
    with pytest.raises(SizeBoundError):
        canonical_form(empty_graph(20), max_vertices=10)


def test_isomorphism_witness():
    g = cycle(4)
    assert is_isomorphism(g, g.relabel([1, 2, 3, 0]), [1, 2, 3, 0])
    assert not is_isomorphism(g, path(4), [0, 1, 2, 3])
    assert is_isomorphic(canonical_graph(g), g)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.randoms(use_true_random=False))
def test_relabel_invariance(seed, rnd):
    g = random_digraph(random.Random(seed), 7)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)
