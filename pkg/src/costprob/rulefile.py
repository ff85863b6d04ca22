"""Rule files.

::

    ontology
    tag Inheritance
    subtype Cat Animal
    end

    rule deduction
    r0.v a type=Concept
    r0.v b type=Concept
    r0.v c type=Concept
    r0.e e1 a b type=Inheritance
    r0.e e2 b c type=Inheritance
    r1.e out a c type=Inheritance
    w_out = product(e1.w, e2.w)
    cost 1
    end

    bounds vertices=12 edges=24 depth=6 cost=64

``r1.v`` declares an output vertex, ``r1.e`` an output edge whose endpoints
may name pattern or output vertices, and ``cross`` is an output edge that
must join one of each.  ``w_<element> = f(...)`` binds a weight formula to
an output element, with ``f`` one of ``const(x)``, ``copy(e.w)``,
``product(e1.w, e2.w)`` and ``min(e1.w, e2.w)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .errors import CostProbError, InvalidRuleError, ParseError
from .graph import Hyperedge, Hypergraph, Label
from .rules import Formula, Ontology, OutputEdge, OutputVertex, Rule, RuleSystem, SearchBounds

_FORMULA = re.compile(r"^w_(\w+)\s*=\s*(\w+)\s*\((.*)\)\s*$")
_BOUND_KEYS = {"vertices": "max_vertices", "edges": "max_edges", "depth": "max_depth", "cost": "max_cost"}


def _kv(tokens, allowed, line, source):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", line, source)
        k, v = tok.split("=", 1)
        if k not in allowed:
            raise ParseError(f"unknown attribute {k!r}", line, source)
        out[k] = v
    return out


class _RuleBlock:
    def __init__(self, name, line):
        self.name = name
        self.line = line
        self.r0v: list[tuple[str, str | None]] = []
        self.r0e: list[tuple[str, tuple[str, ...], str | None]] = []
        self.r1v: list[tuple[str, str | None]] = []
        self.r1e: list[tuple[str, tuple[str, ...], str | None, bool, int]] = []
        self.formulas: dict[str, tuple[Formula, int]] = {}
        self.cost: Fraction | None = None

    def names(self):
        return [n for n, _ in self.r0v] + [n for n, *_ in self.r0e] + [n for n, _ in self.r1v] + \
            [n for n, *_ in self.r1e]

    def build(self, source) -> Rule:
        if self.cost is None:
            raise ParseError(f"rule {self.name} has no cost line", self.line, source)
        r0 = {n: i for i, (n, _) in enumerate(self.r0v)}
        r1 = {n: i for i, (n, _) in enumerate(self.r1v)}
        outputs = {n for n, _ in self.r1v} | {n for n, *_ in self.r1e}
        for target, (_, line) in self.formulas.items():
            if target not in outputs:
                raise ParseError(f"formula target {target!r} is not an output element", line, source)
        pattern_edges = []
        for name, ends, tag in self.r0e:
            for x in ends:
                if x not in r0:
                    raise ParseError(f"pattern edge {name} uses unknown vertex {x!r}", self.line, source)
            pattern_edges.append((name, Hyperedge(tuple(r0[x] for x in ends), Label(tag) if tag else None)))
        new_edges = []
        for name, ends, tag, cross, line in self.r1e:
            refs = []
            for x in ends:
                if x in r0:
                    refs.append(("r0", r0[x]))
                elif x in r1:
                    refs.append(("r1", r1[x]))
                else:
                    raise ParseError(f"edge {name} uses unknown vertex {x!r}", line, source)
            e = OutputEdge(name, tuple(refs), tag, self.formulas.get(name, (None,))[0])
            if cross and not e.is_cross_link:
                raise ParseError(f"cross-link {name} must join a pattern and an output vertex", line, source)
            new_edges.append(e)
        new_vertices = [OutputVertex(n, tag, self.formulas.get(n, (None,))[0]) for n, tag in self.r1v]
        try:
            pattern = Hypergraph(len(self.r0v), [e for _, e in pattern_edges],
                                 [Label(t) if t else None for _, t in self.r0v])
            return Rule(self.name, pattern, tuple(n for n, _ in self.r0v), tuple(pattern_edges),
                        tuple(new_vertices), tuple(new_edges), self.cost)
        except CostProbError as exc:
            raise ParseError(str(exc), self.line, source) from None


def _parse_formula(kind: str, body: str, line, source) -> Formula:
    args = [a.strip() for a in body.split(",") if a.strip()]
    try:
        if kind == "const":
            if len(args) != 1:
                raise ParseError("const takes one number", line, source)
            return Formula("const", (Fraction(args[0]),))
        refs = []
        for a in args:
            if not a.endswith(".w"):
                raise ParseError(f"formula argument {a!r} must look like <element>.w", line, source)
            refs.append(a[:-2])
        return Formula(kind, tuple(refs))
    except ValueError:
        raise ParseError(f"bad constant in {kind}({body})", line, source) from None
    except CostProbError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), line, source) from None


def parse_rules(text: str, source: str | None = None) -> RuleSystem:
    pairs: list[tuple[str, str]] = []
    tags: list[str] = []
    rules: list[Rule] = []
    bounds = {}
    block = None
    in_ontology = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if in_ontology:
            if head == "end":
                in_ontology = False
            elif head == "subtype" and len(tokens) == 3:
                pairs.append((tokens[1], tokens[2]))
            elif head == "tag" and len(tokens) >= 2:
                tags.extend(tokens[1:])
            else:
                raise ParseError(f"bad ontology line {line!r}", lineno, source)
            continue
        if block is None:
            if head == "ontology":
                in_ontology = True
            elif head == "rule":
                if len(tokens) != 2:
                    raise ParseError("expected 'rule <name>'", lineno, source)
                block = _RuleBlock(tokens[1], lineno)
            elif head == "bounds":
                for k, v in _kv(tokens[1:], set(_BOUND_KEYS), lineno, source).items():
                    try:
                        bounds[_BOUND_KEYS[k]] = Fraction(v) if k == "cost" else int(v)
                    except ValueError:
                        raise ParseError(f"bad bound {k}={v}", lineno, source) from None
            else:
                raise ParseError(f"unexpected {head!r} outside a rule block", lineno, source)
            continue
        m = _FORMULA.match(line)
        if m:
            target, kind, body = m.groups()
            if target in block.formulas:
                raise ParseError(f"second formula for {target!r}", lineno, source)
            block.formulas[target] = (_parse_formula(kind, body, lineno, source), lineno)
        elif head == "end":
            rules.append(block.build(source))
            block = None
        elif head == "cost":
            if len(tokens) != 2:
                raise ParseError("expected 'cost <number>'", lineno, source)
            try:
                block.cost = Fraction(tokens[1])
            except ValueError:
                raise ParseError(f"bad cost {tokens[1]!r}", lineno, source) from None
        elif head in ("r0.v", "r1.v"):
            if len(tokens) < 2:
                raise ParseError("vertex needs a name", lineno, source)
            name = tokens[1]
            if name in block.names():
                raise ParseError(f"duplicate element name {name!r}", lineno, source)
            tag = _kv(tokens[2:], {"type"}, lineno, source).get("type")
            (block.r0v if head == "r0.v" else block.r1v).append((name, tag))
        elif head in ("r0.e", "r1.e", "cross"):
            if len(tokens) < 3:
                raise ParseError("edge needs a name and at least one endpoint", lineno, source)
            name = tokens[1]
            if name in block.names():
                raise ParseError(f"duplicate element name {name!r}", lineno, source)
            ends = tuple(t for t in tokens[2:] if "=" not in t)
            if any("=" in t for t in tokens[2:2 + len(ends)]) or not ends:
                raise ParseError("endpoints must precede attributes", lineno, source)
            tag = _kv(tokens[2 + len(ends):], {"type"}, lineno, source).get("type")
            if head == "r0.e":
                block.r0e.append((name, ends, tag))
            else:
                block.r1e.append((name, ends, tag, head == "cross", lineno))
        else:
            raise ParseError(f"unknown rule line {line!r}", lineno, source)
    if in_ontology:
        raise ParseError("unterminated ontology block", None, source)
    if block is not None:
        raise ParseError(f"rule {block.name} is missing 'end'", block.line, source)
    try:
        return RuleSystem(tuple(rules), Ontology.build(pairs, tags), SearchBounds(**bounds))
    except InvalidRuleError as exc:
        raise ParseError(str(exc), None, source) from None
    except ValueError as exc:
        raise ParseError(str(exc), None, source) from None


def load_rules(path) -> RuleSystem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_rules(text, str(path))
