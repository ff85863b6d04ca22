import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costprob.canon import is_isomorphic
from costprob.errors import ParseError
from costprob.graph import Hyperedge, Hypergraph, Label
from costprob.io import (
    exact_str,
    format_graph,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    load_graphs,
    parse_graphs,
    save_graphs,
)

TEXT = """
# two graphs
graph first
v 10 type=Concept w=0.5 cost=2
v 3
e 3 10 type=Inheritance w=4/5
e 10 10
graph second
v 0
end
"""


def test_parse_renumbers_and_reads_exact_values():
    first, second = parse_graphs(TEXT)
    assert first.name == "first" and first.n == 2
    assert first.vertex_labels[1] == Label("Concept", Fraction(1, 2))
    assert first.cost(1) == 2 and first.cost(0) is None
    assert Hyperedge((0, 1), Label("Inheritance", Fraction(4, 5))) in first.edges
    assert Hyperedge((1, 1), None) in first.edges
    assert second.n == 1


@pytest.mark.parametrize("text,line", [
    ("graph g\nv 0\ne 0 1\n", 3),
    ("graph g\nv 0 w=abc\n", 2),
    ("v 0\n", 1),
    ("graph g\nv 0\nv 0\n", 3),
    ("graph g\nq 1\n", 2),
    ("graph g\nv 0 colour=red\n", 2),
    ("graph g\nv 0 w=2\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graphs(text, "x.g")
    assert exc.value.line == line
    assert f"x.g:{line}:" in str(exc.value)


def test_exact_str():
    assert exact_str(Fraction(2, 5)) == "0.4"
    assert exact_str(Fraction(1, 3)) == "1/3"
    assert exact_str(Fraction(-9, 20)) == "-0.45"
    assert exact_str(Fraction(7)) == "7"


def test_text_and_json_round_trip(tmp_path):
    g = parse_graphs(TEXT)[0]
    assert parse_graphs(format_graph(g))[0] == g
    assert graph_from_dict(json.loads(json.dumps(graph_to_dict(g)))) == g
    save_graphs([g], tmp_path / "g.json")
    assert load_graph(tmp_path / "g.json") == g
    save_graphs([g, g], tmp_path / "gs.g")
    assert load_graphs(tmp_path / "gs.g") == [g, g]


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_graph(tmp_path / "nope.g")


def test_empty_file_rejected(tmp_path):
    (tmp_path / "e.g").write_text("# nothing\n")
    with pytest.raises(ParseError):
        load_graphs(tmp_path / "e.g")


weights = st.sampled_from([None, Fraction(0), Fraction(1, 3), Fraction(9, 20), Fraction(1)])
tags = st.sampled_from([None, "A", "Inh"])


@st.composite
def labeled_graphs(draw):
    n = draw(st.integers(0, 5))
    labels = [draw(st.one_of(st.none(), st.builds(Label, tags, weights))) for _ in range(n)]
    edges = []
    if n:
        for _ in range(draw(st.integers(0, 6))):
            k = draw(st.integers(1, 3))
            ends = tuple(draw(st.integers(0, n - 1)) for _ in range(k))
            edges.append(Hyperedge(ends, draw(st.one_of(st.none(), st.builds(Label, tags, weights)))))
    return Hypergraph(n, edges, labels, name="h")


@settings(max_examples=80, deadline=None)
@given(labeled_graphs())
def test_round_trip_property(g):
    back = parse_graphs(format_graph(g))[0]
    assert back == g and is_isomorphic(back, g)
    assert graph_from_dict(graph_to_dict(g)) == g
