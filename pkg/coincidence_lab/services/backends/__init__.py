"""Методы вычисления индекса совпадения."""

from .base import BaseBackend, has_integer_canonical_order, resolve_general
from .closed_form import ClosedFormBackend, SeriesValue
from .direct import DirectBackend
from .legendre_chart import LegendreBackend
from .quadrature import QuadratureBackend, chebyshev_gauss_rule, integrand_for
from .recurrence import RecurrenceBackend

__all__ = [
    "BaseBackend",
    "ClosedFormBackend",
    "DirectBackend",
    "LegendreBackend",
    "QuadratureBackend",
    "RecurrenceBackend",
    "SeriesValue",
    "chebyshev_gauss_rule",
    "has_integer_canonical_order",
    "integrand_for",
    "resolve_general",
]
