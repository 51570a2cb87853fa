"""Доменные типы: семейства, значения, отчёты."""

from .family import FAMILY_SYMBOLS, FamilySpec, FamilyTag, Interval, TruncationPolicy, as_integer
from .values import (
    CanonicalForm,
    CanonicalKind,
    CoincidenceValue,
    EvalRequest,
    LegendreArgument,
    Method,
    QuadratureRule,
)
from .entropy_point import EntropyBounds, EntropyPoint
from .inequality import (
    GridDescription,
    InequalityDescriptor,
    PointMargin,
    StatementKind,
    VerificationReport,
)
from .identity import IdentityReport
from .output import SCHEMA_VERSION, VALUE_COLUMNS, OutputRecord

__all__ = [
    "FAMILY_SYMBOLS",
    "SCHEMA_VERSION",
    "VALUE_COLUMNS",
    "CanonicalForm",
    "CanonicalKind",
    "CoincidenceValue",
    "EntropyBounds",
    "EntropyPoint",
    "EvalRequest",
    "FamilySpec",
    "FamilyTag",
    "GridDescription",
    "IdentityReport",
    "InequalityDescriptor",
    "Interval",
    "LegendreArgument",
    "Method",
    "OutputRecord",
    "PointMargin",
    "QuadratureRule",
    "StatementKind",
    "TruncationPolicy",
    "VerificationReport",
    "as_integer",
]
