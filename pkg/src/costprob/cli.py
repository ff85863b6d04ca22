"""``costprob`` command line.

Exit codes: 0 success or measurement, 1 parse error, 2 size bound,
3 assertion-suite violation, 4 unreachable target or unknown valuation,
5 other domain error, 6 bad command line.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .cost import LOOPS, STRICT, collapse_cost, core, weighted_collapse_cost
from .errors import (
    CostProbError,
    DegenerateObservations,
    ParseError,
    SizeBoundError,
    UnknownValuation,
)
from .io import format_graph, graph_to_dict, load_graph, load_graphs, save_graphs
from .lattice import disjoint_union, exponential, tensor_product
from .order import cond_prob, cost_order, universe_raw, valuation
from .report import csv_text, dumps, fmt, table

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_BOUNDS = 2
EXIT_VIOLATION = 3
EXIT_UNKNOWN = 4
EXIT_DOMAIN = 5
EXIT_USAGE = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _UsageError(Exception):
    pass


def data_path(name: str) -> Path:
    return Path(str(resources.files("costprob") / "data" / name))


def _emit(args, document: dict, text: str) -> None:
    if args.out:
        Path(args.out).write_text(dumps(document), encoding="utf-8")
    if args.json:
        sys.stdout.write(dumps(document))
    else:
        print(text)


def _config(args, **extra) -> dict:
    # worker count is left out so reports agree byte for byte across pool sizes
    keys = ("mode", "max_vertices", "max_edges", "max_depth", "max_cost", "seed", "samples", "universe")
    cfg = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    if "max_cost" in cfg:
        cfg["max_cost"] = Fraction(cfg["max_cost"])
    cfg.update(extra)
    return cfg


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# ---------------------------------------------------------------------------
# lattice


def cmd_lattice(args) -> int:
    a, b = load_graph(args.a), load_graph(args.b)
    if args.op == "union":
        g = disjoint_union(a, b)
    elif args.op == "product":
        g = tensor_product(a, b)
    else:
        g = exponential(a, b, max_vertices=args.max_vertices or 4096)
    g = g.with_name(f"{args.op}({a.name or Path(args.a).stem},{b.name or Path(args.b).stem})")
    comps = len(g.components())
    summary = f"{args.op}: {g.n} vertices, {len(g.edges)} edges, {comps} components"
    if args.out:
        save_graphs([g], args.out)
        print(summary)
    else:
        sys.stdout.write(format_graph(g))
        print(summary, file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# measure


def _steps_rows(result):
    return [[i + 1, f"{s.merged_pair[0]}~{s.merged_pair[1]}", s.step_cost, s.resulting_graph.n]
            for i, s in enumerate(result.steps)]


def cmd_measure(args) -> int:
    mode = args.mode
    bound = args.max_vertices or 16
    g = load_graph(args.graph)
    doc = {"command": f"measure {args.what}", "config": _config(args), "results": {}, "violations": []}
    res = doc["results"]
    status = EXIT_OK
    if args.what == "cost":
        h = load_graph(args.other)
        if args.weighted:
            r = weighted_collapse_cost(g, h, mode, bound)
        else:
            r = collapse_cost(g, h, mode, bound)
        res.update({"cost": r.cost, "reason": r.reason, "explored": r.explored,
                    "steps": [{"merged": list(s.merged_pair), "step_cost": s.step_cost,
                               "vertices": s.resulting_graph.n} for s in r.steps],
                    "embedding": list(r.embedding) if r.embedding is not None else None})
        if r.reachable:
            text = f"cost: {fmt(r.cost)}\n" + table(["step", "merged", "cost", "vertices"], _steps_rows(r))
        else:
            text = f"cost: unreachable ({r.reason})"
            status = EXIT_UNKNOWN
    elif args.what == "core":
        c = core(g)
        res.update({"core": graph_to_dict(c), "vertices": c.n, "edges": len(c.edges)})
        text = format_graph(c, name=f"core({g.name or Path(args.graph).stem})").rstrip()
    elif args.what == "order":
        h = load_graph(args.other)
        r = cost_order(g, h, mode, bound)
        res.update({"relation": r.relation, "reason": r.reason, **r.details})
        text = f"{r.relation.value} ({r.reason})"
    elif args.what == "valuation":
        u = load_graph(args.universe) if args.universe else None
        v = valuation(g, u, mode, bound)
        res.update({"raw": v.raw, "normalized": v.normalized})
        if v.raw is None:
            text = "valuation: unknown (core not reachable by identifications in this mode)"
            status = EXIT_UNKNOWN
        else:
            text = f"valuation: {fmt(v.raw)}"
            if v.normalized is not None:
                text += f"\nnormalized: {fmt(v.normalized)}"
    else:
        h = load_graph(args.other)
        if not args.universe:
            raise _UsageError("measure prob needs --universe")
        u = load_graph(args.universe)
        try:
            p = cond_prob(g, h, u, mode, bound)
        except UnknownValuation as exc:
            res.update({"cond_prob": None, "reason": str(exc)})
            _emit(args, doc, f"cond_prob: unknown ({exc})")
            return EXIT_UNKNOWN
        res.update({"cond_prob": p, "universe_raw": universe_raw(u, mode, bound)})
        text = f"cond_prob: {fmt(p)}"
    _emit(args, doc, text)
    return status


# ---------------------------------------------------------------------------
# check


SUITE_DEFAULTS = {
    "lattice-laws": {"max_vertices": 3, "samples": 60},
    "residuation": {"max_vertices": 2},
    "monotonicity": {"max_vertices": 5, "samples": 500},
    "ks-symmetries": {"max_vertices": 3, "samples": 200},
    "lemma1": {"max_vertices": 3, "samples": 200},
}


def run_suite(args):
    from . import suites

    d = SUITE_DEFAULTS[args.suite]
    mv = args.max_vertices or d["max_vertices"]
    samples = args.samples or d.get("samples")
    seed = args.seed
    csv_doc = None
    sym = None
    if args.suite == "lattice-laws":
        rep = suites.lattice_laws(max_vertices=mv, samples=samples, seed=seed)
    elif args.suite == "residuation":
        rep = suites.residuation(max_vertices=mv, mode=args.mode)
    elif args.suite == "monotonicity":
        rep = suites.monotonicity(count=samples, max_vertices=mv, seed=seed, mode=args.mode)
    elif args.suite == "lemma1":
        rep = suites.lemma1(count=samples, seed=seed, max_vertices=mv, mode=args.mode)
    else:
        from .symmetry import CSV_HEADER, rescaling_fit

        u = load_graph(args.universe) if args.universe else None
        rep, sym = suites.ks_symmetries(samples=samples, seed=seed, max_vertices=mv, universe=u,
                                        mode=args.mode, workers=args.workers)
        try:
            rep.measurements["fit"] = rescaling_fit(sym).to_dict()
        except DegenerateObservations as exc:
            rep.measurements["fit"] = {"family": None, "reason": str(exc)}
        csv_doc = csv_text(CSV_HEADER, sym.csv_rows())
    return rep, csv_doc, sym


def _suite_text(rep, sym=None) -> str:
    rows = [[k, v["checked"], v["violations"]] for k, v in rep.checks.items()]
    head = "violations" if rep.expected_clean else "violations/nonzero"
    lines = [f"suite {rep.name}: " + ("FAIL" if rep.failed else "ok"),
             table(["check", "checked", head], rows)]
    if sym is not None:
        srows = []
        for ident, stats in sym.summary().items():
            counts = " ".join(f"{k}={v}" for k, v in stats["counts"].items())
            mean_abs = stats.get("mean_abs")
            srows.append([ident, counts, stats["evaluated"], "" if mean_abs is None else fmt(mean_abs)])
        lines.append(table(["identity", "verdicts", "residuals", "mean |residual|"], srows))
        fit = rep.measurements.get("fit", {})
        if fit.get("family"):
            lines.append(f"rescaling fit: {fit['family']} residual {fmt(fit['residual'])}")
    if rep.name == "lemma1":
        tally = rep.measurements["tally"]
        lines.append("verdicts: " + " ".join(f"{k}={v}" for k, v in tally.items()))
        lines.append(table(["curated triple", "verdict"],
                           [[c["name"], c["verdict"]] for c in rep.measurements["curated"]]))
    return "\n".join(lines)


def cmd_check(args) -> int:
    rep, csv_doc, sym = run_suite(args)
    doc = {"command": f"check {args.suite}", "config": _config(args), "results": rep.to_dict(),
           "violations": rep.violations}
    if args.csv:
        if csv_doc is None:
            csv_doc = csv_text(["check", "checked", "violations"],
                           [[k, v["checked"], v["violations"]] for k, v in rep.checks.items()])
        Path(args.csv).write_text(csv_doc, encoding="utf-8")
    _emit(args, doc, _suite_text(rep, sym))
    return EXIT_VIOLATION if rep.failed else EXIT_OK


# ---------------------------------------------------------------------------
# rules


def _rule_system(args):
    from dataclasses import replace

    from .rulefile import load_rules
    from .rules import SearchBounds

    rs = load_rules(args.rules)
    b = rs.bounds
    over = {k: getattr(args, k) for k in ("max_vertices", "max_edges", "max_depth", "max_cost")
            if getattr(args, k, None) is not None}
    if over:
        rs = replace(rs, bounds=SearchBounds(**{**b.__dict__, **over}))
    if getattr(args, "rule", None):
        rs = replace(rs, rules=(rs.rule(args.rule),))
    return rs


def _derivation_doc(d):
    return {
        "cost": d.total_cost,
        "steps": [{"rule": s.rule, "vertex_map": list(s.match.vertex_map),
                   "edges_after": len(s.result.edges)} for s in d.steps],
        "end": graph_to_dict(d.end),
    }


def cmd_rules(args) -> int:
    from .rules import Derivation, apply_rule, derivation_cost, match_rule, rule_valuation, theorem_prob_demo

    doc = {"command": f"rules {args.what}", "config": _config(args), "results": {}, "violations": []}
    res = doc["results"]
    if args.what == "demo":
        args.rules = args.rules or str(data_path("pln.r"))
        args.axioms = args.axioms or str(data_path("pln-axioms.g"))
    rs = _rule_system(args)
    status = EXIT_OK
    if args.what in ("match", "apply"):
        host = load_graph(args.host)
        rows = []
        all_matches = []
        for r in rs.rules:
            for m in match_rule(r, host, rs.ontology):
                all_matches.append((r, m))
                rows.append([len(rows), r.name, " ".join(map(str, m.vertex_map))])
        res["matches"] = [{"index": i, "rule": r.name, "vertex_map": list(m.vertex_map)}
                          for i, (r, m) in enumerate(all_matches)]
        if args.what == "match":
            res["count"] = len(all_matches)
            text = f"{len(all_matches)} match(es)\n" + table(["#", "rule", "vertex map"], rows)
        else:
            if not 0 <= args.index < len(all_matches):
                raise _UsageError(f"match index {args.index} out of range ({len(all_matches)} matches)")
            r, m = all_matches[args.index]
            g = apply_rule(r, host, m, rs.ontology, rs.bounds)
            res["result"] = graph_to_dict(g)
            if args.graph_out:
                save_graphs([g], args.graph_out)
            text = format_graph(g).rstrip()
    elif args.what == "derive":
        start = load_graphs(args.axioms)
        goal = load_graph(args.goal)
        best = None
        for a in start:
            d = derivation_cost(a, goal, rs, args.mode)
            if isinstance(d, Derivation) and (best is None or d.total_cost < best.total_cost):
                best = d
        if best is None:
            res.update({"reachable": False, "reason": d.reason})
            text = f"unreachable: {d.reason}"
            status = EXIT_UNKNOWN
        else:
            res.update({"reachable": True, **_derivation_doc(best)})
            rows = [[i + 1, s.rule, " ".join(map(str, s.match.vertex_map))] for i, s in enumerate(best.steps)]
            text = f"cost: {fmt(best.total_cost)}\n" + table(["step", "rule", "vertex map"], rows)
    elif args.what == "valuation":
        g = load_graph(args.graph)
        v = rule_valuation(g, load_graphs(args.axioms), rs, args.mode)
        res["raw"] = v.raw
        if v.raw is None:
            text = "valuation: unknown (not derivable within bounds)"
            status = EXIT_UNKNOWN
        else:
            text = f"valuation: {fmt(v.raw)}"
    else:
        u = load_graph(args.universe) if args.universe else None
        rep = theorem_prob_demo(load_graphs(args.axioms), rs, u)
        res.update(rep.to_dict())
        rows = [[t.name, "yes" if t.is_axiom else "", fmt(t.raw), fmt(t.normalized)] for t in rep.statements]
        nz = sum(1 for r in rep.residuals if r["residual"] != 0)
        text = "\n".join([
            table(["theorem", "axiom", "valuation", "normalized"], rows),
            f"closure states: {len(rep.states)}; universe valuation {fmt(rep.universe_raw)}",
            f"residuals: {len(rep.residuals)} computed, {nz} nonzero",
        ])
        if args.csv:
            Path(args.csv).write_text(csv_text(["identity", "left", "right", "residual", "verdict"], [
                [r["identity"], r["operands"][0], r["operands"][1], r["residual"], r["verdict"]]
                for r in rep.residuals]), encoding="utf-8")
    _emit(args, doc, text)
    return status


# ---------------------------------------------------------------------------
# parser


def _common(p, bounds=True):
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    if bounds:
        p.add_argument("--max-vertices", type=_positive)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="costprob", description="Cost-based order and probability on small graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lattice", help="disjoint union, tensor product or exponential of two graphs")
    p.add_argument("op", choices=["union", "product", "exponential"])
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out", help="write the resulting graph here (.g or .json)")
    p.add_argument("--max-vertices", type=_positive, help="vertex bound for the exponential")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("measure", help="collapse cost, core, order, valuation, conditional probability")
    p.add_argument("what", choices=["cost", "core", "order", "valuation", "prob"])
    p.add_argument("graph")
    p.add_argument("other", nargs="?")
    p.add_argument("--mode", choices=[STRICT, LOOPS], default=STRICT)
    p.add_argument("--universe")
    p.add_argument("--weighted", action="store_true", help="use node costs (measure cost only)")
    _common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("check", help="run a property or measurement suite")
    p.add_argument("suite", choices=sorted(SUITE_DEFAULTS))
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--samples", type=_positive)
    p.add_argument("--universe")
    p.add_argument("--mode", choices=[STRICT, LOOPS], default=STRICT)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--csv", help="write tabular residuals here")
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rules", help="rule matching, application, derivations and the theorem demo")
    rsub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)

    def rules_common(q):
        q.add_argument("--rule", help="restrict to one rule by name")
        q.add_argument("--max-edges", type=_positive)
        q.add_argument("--max-depth", type=_positive)
        q.add_argument("--max-cost", type=_positive_fraction)
        _common(q)

    q = rsub.add_parser("match")
    q.add_argument("rules")
    q.add_argument("host")
    rules_common(q)
    q = rsub.add_parser("apply")
    q.add_argument("rules")
    q.add_argument("host")
    q.add_argument("--index", type=int, default=0, help="which match to apply (see 'rules match')")
    q.add_argument("--graph-out", help="write the resulting graph here")
    rules_common(q)
    q = rsub.add_parser("derive")
    q.add_argument("axioms")
    q.add_argument("goal")
    q.add_argument("rules")
    q.add_argument("--mode", choices=["exact", "contains"], default="exact")
    rules_common(q)
    q = rsub.add_parser("valuation")
    q.add_argument("graph")
    q.add_argument("axioms")
    q.add_argument("rules")
    q.add_argument("--mode", choices=["exact", "contains"], default="exact")
    rules_common(q)
    q = rsub.add_parser("demo")
    q.add_argument("rules", nargs="?")
    q.add_argument("axioms", nargs="?")
    q.add_argument("--universe")
    q.add_argument("--csv", help="write the residual table here")
    rules_common(q)
    for q in rsub.choices.values():
        q.set_defaults(func=cmd_rules)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "measure" and args.what in ("cost", "order", "prob") and not args.other:
        parser.error(f"measure {args.what} needs two graphs")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeBoundError as exc:
        print(f"size bound: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except UnknownValuation as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except _UsageError as exc:
        print(f"costprob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CostProbError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
