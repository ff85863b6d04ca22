import itertools
import random

import oracles as O
from costprob.graph import Hyperedge, Hypergraph, Label, all_digraphs, cycle, empty_graph, path, random_digraph
from costprob.homs import embeds_into, find_embedding, find_homomorphism, hom_exists, is_homomorphism


def test_examples():
    c2, c4 = cycle(2), cycle(4)
    assert hom_exists(c4, c2) and hom_exists(c2, c4)
    assert not hom_exists(c2, empty_graph(1))
    assert embeds_into(c2, c4)
    assert not embeds_into(path(3), c2)
    assert not embeds_into(cycle(3), c4)
    assert is_homomorphism(c4, c2, find_homomorphism(c4, c2))


def test_agrees_with_oracle_on_all_two_vertex_pairs():
    small = [g for n in range(3) for g in all_digraphs(n)]
    for g, h in itertools.product(small, repeat=2):
        pg, ph = O.plain(g), O.plain(h)
        assert hom_exists(g, h) == (O.hom(pg, ph) is not None)
        assert embeds_into(g, h) == O.embeds(pg, ph)


def test_agrees_with_oracle_on_random_pairs():
    rng = random.Random(5)
    for _ in range(400):
        g, h = random_digraph(rng, 5), random_digraph(rng, 4)
        pg, ph = O.plain(g), O.plain(h)
        f = find_homomorphism(g, h)
        assert (f is not None) == (O.hom(pg, ph) is not None)
        if f is not None:
            assert is_homomorphism(g, h, f)
        e = find_embedding(g, h)
        assert (e is not None) == O.embeds(pg, ph)
        if e is not None:
            assert len(set(e)) == len(e) and is_homomorphism(g, h, e)


def test_labels_must_match():
    g = Hypergraph(2, [Hyperedge((0, 1), Label("Inh"))], [Label("A"), None])
    h = Hypergraph(2, [Hyperedge((0, 1), Label("Inh"))], [Label("A"), None])
    h2 = Hypergraph(2, [Hyperedge((0, 1), Label("Sim"))], [Label("A"), None])
    h3 = Hypergraph(2, [Hyperedge((0, 1), Label("Inh"))], [Label("B"), None])
    assert hom_exists(g, h)
    assert not hom_exists(g, h2)
    assert not hom_exists(g, h3)


def test_hyperedges():
    g = Hypergraph(3, [(0, 1, 2)])
    h = Hypergraph(2, [(0, 1, 0)])
    assert hom_exists(g, h)
    assert not hom_exists(h, Hypergraph(2, [(0, 1, 1)]))
