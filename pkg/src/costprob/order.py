"""Cost-based order, cost-based valuation and conditional probability."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .canon import canonical_form
from .cost import COLLAPSE_BOUND, STRICT, collapse_cost, core
from .errors import (
    DegenerateUniverseError,
    UniverseSmallerThanQuery,
    UnknownValuation,
    ZeroConditionMeasure,
)
from .graph import Hypergraph
from .homs import hom_exists
from .lattice import tensor_product


class Relation(str, enum.Enum):
    LT = "LT"
    GT = "GT"
    EQ = "EQ"
    INCOMPARABLE = "INCOMPARABLE"

    def converse(self) -> "Relation":
        return {Relation.LT: Relation.GT, Relation.GT: Relation.LT}.get(self, self)


@dataclass(frozen=True)
class OrderResult:
    relation: Relation
    reason: str
    details: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Valuation:
    """``raw`` is the cost-based valuation; None means the core is not
    reachable by identifications in the active mode."""

    raw: Fraction | None
    normalized: Fraction | None = None

    @property
    def known(self) -> bool:
        return self.raw is not None


@lru_cache(maxsize=100_000)
def raw_valuation(g: Hypergraph, mode: str = STRICT, max_vertices: int = COLLAPSE_BOUND) -> Fraction | None:
    return collapse_cost(g, core(g), mode=mode, max_vertices=max_vertices).cost


def valuation(g: Hypergraph, universe: Hypergraph | None = None, mode: str = STRICT,
              max_vertices: int = COLLAPSE_BOUND) -> Valuation:
    """Least identification cost from ``g`` down to its core, optionally
    normalized linearly against the valuation of ``universe``."""
    raw = raw_valuation(g, mode, max_vertices)
    if universe is None or raw is None:
        return Valuation(raw)
    return Valuation(raw, normalize(raw, universe_raw(universe, mode, max_vertices)))


def universe_raw(universe: Hypergraph, mode: str = STRICT, max_vertices: int = COLLAPSE_BOUND) -> Fraction:
    u = raw_valuation(universe, mode, max_vertices)
    if not u:
        raise DegenerateUniverseError("universe valuation is zero or unknown; cannot normalize")
    return u


def normalize(raw: Fraction, universe_value: Fraction) -> Fraction:
    if raw > universe_value:
        raise UniverseSmallerThanQuery(f"raw valuation {raw} exceeds universe valuation {universe_value}")
    return raw / universe_value


def cost_order(g: Hypergraph, h: Hypergraph, mode: str = STRICT,
               max_vertices: int = COLLAPSE_BOUND) -> OrderResult:
    """``g < h`` when a homomorphism ``g -> h`` exists, the two share a core
    and ``g`` has the strictly smaller valuation.  EQ is isomorphism."""
    if canonical_form(g) == canonical_form(h):
        return OrderResult(Relation.EQ, "isomorphic")
    if canonical_form(core(g)) != canonical_form(core(h)):
        return OrderResult(Relation.INCOMPARABLE, "cores differ")
    vg = raw_valuation(g, mode, max_vertices)
    vh = raw_valuation(h, mode, max_vertices)
    details = {"valuations": (vg, vh)}
    if vg is None or vh is None:
        return OrderResult(Relation.INCOMPARABLE, "valuation unknown", details)
    if vg == vh:
        return OrderResult(Relation.INCOMPARABLE, "valuations equal", details)
    if vg < vh:
        if hom_exists(g, h):
            return OrderResult(Relation.LT, "hom exists, shared core, smaller valuation", details)
        return OrderResult(Relation.INCOMPARABLE, "hom missing", details)
    if hom_exists(h, g):
        return OrderResult(Relation.GT, "hom exists, shared core, larger valuation", details)
    return OrderResult(Relation.INCOMPARABLE, "hom missing", details)


def cond_prob(g: Hypergraph, h: Hypergraph, universe: Hypergraph, mode: str = STRICT,
              max_vertices: int = COLLAPSE_BOUND) -> Fraction:
    """``m(g x h) / m(h)`` with ``m`` normalized against ``universe``.

    The universe scale cancels, but it still has to dominate both terms.
    """
    u = universe_raw(universe, mode, max_vertices)
    mh = raw_valuation(h, mode, max_vertices)
    if mh is None:
        raise UnknownValuation("condition valuation is unknown")
    mh = normalize(mh, u)
    if mh == 0:
        raise ZeroConditionMeasure("condition has measure zero")
    meet = raw_valuation(tensor_product(g, h), mode, max_vertices)
    if meet is None:
        raise UnknownValuation("valuation of the meet is unknown")
    return normalize(meet, u) / mh
