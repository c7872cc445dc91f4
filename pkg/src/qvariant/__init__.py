"""Exact verification engine for a degree-two variant of the q-hypergeometric equation
and its four confluent degenerations."""

from .equations import (
    ConstraintError,
    Family,
    ParamSet,
    ThreeTermOperator,
    apply_operator,
    build_operator,
    check_constraints,
)
from .solutions import CATALOG, SeriesSolution, SolutionId, construct, list_catalog

__all__ = [
    "CATALOG",
    "ConstraintError",
    "Family",
    "ParamSet",
    "SeriesSolution",
    "SolutionId",
    "ThreeTermOperator",
    "apply_operator",
    "build_operator",
    "check_constraints",
    "construct",
    "list_catalog",
]
