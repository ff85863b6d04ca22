"""Graph files.

Text format, one or more blocks per file::

    graph C4sym
    v 0
    v 1 type=Concept w=0.5 cost=2
    e 0 1 type=Inheritance w=0.8
    end

Vertex ids are arbitrary nonnegative integers and are renumbered densely
in increasing order.  ``end`` is optional before the next ``graph`` line
or the end of the file.  ``#`` starts a comment.  Numbers are read as exact
rationals (``0.8`` or ``4/5``).

A ``.json`` file holds the structured encoding: one object per graph, or a
list of them, as produced by :func:`graph_to_dict`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import CostProbError, ParseError
from .graph import Hyperedge, Hypergraph, Label


def exact_str(q: Fraction) -> str:
    """Shortest exact rendering: a terminating decimal when there is one."""
    q = Fraction(q)
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    if q.denominator == 1:
        return str(q.numerator)
    digits = 0
    scaled = q
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


def _number(text: str, line: int, source: str | None) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {text!r}", line, source) from None


def _attrs(tokens: list[str], allowed: set[str], line: int, source: str | None) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", line, source)
        k, v = tok.split("=", 1)
        if k not in allowed:
            raise ParseError(f"unknown attribute {k!r}", line, source)
        out[k] = v if k == "type" else _number(v, line, source)
    return out


def _make_label(attrs: dict, line: int, source: str | None) -> Label | None:
    if "type" not in attrs and "w" not in attrs:
        return None
    try:
        return Label(attrs.get("type"), attrs.get("w"))
    except CostProbError as exc:
        raise ParseError(str(exc), line, source) from None


class _Block:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.vertices: dict[int, tuple[Label | None, Fraction | None]] = {}
        self.edges: list[tuple[tuple[int, ...], Label | None, int]] = []

    def build(self, source) -> Hypergraph:
        ids = sorted(self.vertices)
        index = {v: i for i, v in enumerate(ids)}
        edges = []
        for ends, label, line in self.edges:
            for v in ends:
                if v not in index:
                    raise ParseError(f"edge refers to undeclared vertex {v}", line, source)
            edges.append(Hyperedge(tuple(index[v] for v in ends), label))
        labels = [self.vertices[v][0] for v in ids]
        costs = [self.vertices[v][1] for v in ids]
        return Hypergraph(len(ids), edges, labels, costs, self.name)


def parse_graphs(text: str, source: str | None = None) -> list[Hypergraph]:
    graphs: list[Hypergraph] = []
    block: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "graph":
            if block is not None:
                graphs.append(block.build(source))
            block = _Block(" ".join(tokens[1:]), lineno)
        elif head == "end":
            if block is None:
                raise ParseError("'end' without 'graph'", lineno, source)
            graphs.append(block.build(source))
            block = None
        elif head in ("v", "e"):
            if block is None:
                raise ParseError(f"{head!r} record outside a graph block", lineno, source)
            ids = []
            rest = []
            for tok in tokens[1:]:
                if "=" in tok:
                    rest.append(tok)
                elif rest:
                    raise ParseError("vertex ids must precede attributes", lineno, source)
                else:
                    try:
                        vid = int(tok)
                    except ValueError:
                        raise ParseError(f"bad vertex id {tok!r}", lineno, source) from None
                    if vid < 0:
                        raise ParseError(f"negative vertex id {vid}", lineno, source)
                    ids.append(vid)
            if head == "v":
                if len(ids) != 1:
                    raise ParseError("a vertex record takes exactly one id", lineno, source)
                if ids[0] in block.vertices:
                    raise ParseError(f"vertex {ids[0]} declared twice", lineno, source)
                attrs = _attrs(rest, {"type", "w", "cost"}, lineno, source)
                block.vertices[ids[0]] = (_make_label(attrs, lineno, source), attrs.get("cost"))
            else:
                if not ids:
                    raise ParseError("an edge record needs at least one endpoint", lineno, source)
                attrs = _attrs(rest, {"type", "w"}, lineno, source)
                block.edges.append((tuple(ids), _make_label(attrs, lineno, source), lineno))
        else:
            raise ParseError(f"unknown record {head!r}", lineno, source)
    if block is not None:
        graphs.append(block.build(source))
    return graphs


def _label_attrs(label: Label | None) -> list[str]:
    if label is None:
        return []
    out = []
    if label.type_tag is not None:
        out.append(f"type={label.type_tag}")
    if label.weight is not None:
        out.append(f"w={exact_str(label.weight)}")
    return out


def format_graph(g: Hypergraph, name: str | None = None) -> str:
    lines = [f"graph {name if name is not None else (g.name or 'G')}"]
    for v in range(g.n):
        parts = ["v", str(v)] + _label_attrs(g.vertex_labels[v])
        if g.cost(v) is not None:
            parts.append(f"cost={exact_str(g.cost(v))}")
        lines.append(" ".join(parts))
    for e in g.sorted_edges():
        lines.append(" ".join(["e"] + [str(x) for x in e.endpoints] + _label_attrs(e.label)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_graphs(graphs) -> str:
    return "".join(format_graph(g) for g in graphs)


def graph_to_dict(g: Hypergraph) -> dict:
    def lab(label):
        d = {}
        if label is not None:
            if label.type_tag is not None:
                d["type"] = label.type_tag
            if label.weight is not None:
                d["w"] = exact_str(label.weight)
        return d

    vertices = []
    for v in range(g.n):
        d = {"id": v, **lab(g.vertex_labels[v])}
        if g.cost(v) is not None:
            d["cost"] = exact_str(g.cost(v))
        vertices.append(d)
    edges = [{"ends": list(e.endpoints), **lab(e.label)} for e in g.sorted_edges()]
    return {"name": g.name, "vertices": vertices, "edges": edges}


def graph_from_dict(d: dict) -> Hypergraph:
    try:
        ids = sorted(int(v["id"]) for v in d["vertices"])
        index = {v: i for i, v in enumerate(ids)}
        labels = [None] * len(ids)
        costs = [None] * len(ids)
        for v in d["vertices"]:
            i = index[int(v["id"])]
            if "type" in v or "w" in v:
                labels[i] = Label(v.get("type"), Fraction(v["w"]) if "w" in v else None)
            if "cost" in v:
                costs[i] = Fraction(v["cost"])
        edges = []
        for e in d.get("edges", []):
            label = None
            if "type" in e or "w" in e:
                label = Label(e.get("type"), Fraction(e["w"]) if "w" in e else None)
            edges.append(Hyperedge(tuple(index[int(x)] for x in e["ends"]), label))
        return Hypergraph(len(ids), edges, labels, costs, d.get("name", ""))
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"malformed graph object: {exc}") from None


def load_graphs(path) -> list[Hypergraph]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, str(path)) from None
        items = data if isinstance(data, list) else [data]
        return [graph_from_dict(d) for d in items]
    graphs = parse_graphs(text, str(path))
    if not graphs:
        raise ParseError("no graph blocks found", None, str(path))
    return graphs


def load_graph(path) -> Hypergraph:
    graphs = load_graphs(path)
    if len(graphs) != 1:
        raise ParseError(f"expected one graph, found {len(graphs)}", None, str(path))
    return graphs[0]


def save_graphs(graphs, path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        data = [graph_to_dict(g) for g in graphs]
        path.write_text(json.dumps(data[0] if len(data) == 1 else data, indent=2, sort_keys=True) + "\n")
    else:
        path.write_text(format_graphs(graphs), encoding="utf-8")
