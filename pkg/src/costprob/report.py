"""Deterministic JSON and CSV emission with exact rationals."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, is_dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

DECIMAL_DIGITS = 20


def decimal_str(q: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return format(d.normalize(), "f") if d == d.to_integral() else format(d, "f")


def rational(q) -> dict | None:
    if q is None:
        return None
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator, "decimal": decimal_str(q)}


def to_jsonable(obj):
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, float):
        return rational(Fraction(obj))
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(document) -> str:
    return json.dumps(to_jsonable(document), sort_keys=True, indent=2) + "\n"


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (str(v) if not isinstance(v, Fraction) else f"{v.numerator}/{v.denominator}") for v in row])
    return buf.getvalue()


def fmt(q) -> str:
    """Short human rendering: ``2/5 (0.4)``."""
    if q is None:
        return "unknown"
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator} ({decimal_str(q)})"


def table(header: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
