"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CostProbError(Exception):
    """Base class for all domain errors."""


class ParseError(CostProbError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class SizeBoundError(CostProbError):
    """A configured size bound would be exceeded."""


class BoundExceeded(SizeBoundError):
    """A rule application produced a graph outside the rule-system bounds."""


class MixedArityError(CostProbError):
    pass


class UnsupportedGraphError(CostProbError):
    pass


class UnknownVertexError(CostProbError):
    pass


class AdjacentPairError(CostProbError):
    pass


class LabelConflictError(CostProbError):
    pass


class MissingNodeCostError(CostProbError):
    pass


class UniverseSmallerThanQuery(CostProbError):
    pass


class DegenerateUniverseError(CostProbError):
    pass


class ZeroConditionMeasure(CostProbError):
    pass


class DegenerateObservations(CostProbError):
    pass


class UnknownTagError(CostProbError):
    pass


class CyclicOntologyError(CostProbError):
    pass


class InvalidRuleError(CostProbError):
    pass


class InvalidMatchError(CostProbError):
    pass


class NoAxiomsError(CostProbError):
    pass


class UnknownValuation(CostProbError):
    """A valuation needed by the computation is not reachable within bounds."""
