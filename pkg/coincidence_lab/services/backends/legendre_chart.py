"""Индексы совпадения через многочлены Лежандра."""

from __future__ import annotations

import logging
import math
import sys
from typing import Optional, Tuple

from ...errors import DomainError
from ...models import FamilySpec, FamilyTag, Method
from ..legendre import legendre_argument, legendre_damped, legendre_eval, legendre_map, legendre_scaled
from .base import BaseBackend, has_integer_canonical_order, resolve_general


logger = logging.getLogger(__name__)

_EPS = sys.float_info.epsilon


def chart_binomial(n: int, x: float) -> float:
    """F_n(x) = (1-2x)^n P_n(t) на [0, 1/2); F_n(x) = F_n(1-x) за серединой.

    В самой точке 1/2 берётся предел (1-2x)^n P_n(t) = C(2n, n)/4^n.
    """

    if not 0.0 <= x <= 1.0:
        raise DomainError(f"карта Лежандра для F_n определена на [0, 1], получено x={x!r}")
    point = min(x, 1.0 - x)
    if point == 0.5:
        return math.comb(2 * n, n) / 4**n
    argument = legendre_argument(point)
    value = legendre_eval(n, argument.t) * (1.0 - 2.0 * point) ** n
    if not math.isfinite(value):
        logger.debug("P_%d(%r) переполняет float, используется масштабированная рекуррента", n, argument.t)
        value = legendre_scaled(n, point)
    return value


def chart_negbinomial(n: int, y: float) -> float:
    """G_n(y) = (1+2y)^{-n} P_{n-1}(t(-y))."""

    if y < 0.0:
        raise DomainError(f"карта Лежандра для G_n определена при y >= 0, получено {y!r}")
    scale = 1.0 + 2.0 * y
    try:
        value = legendre_eval(n - 1, legendre_map(-y)) / scale**n
    except OverflowError:
        value = math.nan
    if not math.isfinite(value):
        logger.debug("(1+2y)^%d переполняет float, используется затухающая рекуррента", n)
        value = legendre_damped(n - 1, y) / scale
    return value


def chart_bbh(n: int, y: float) -> float:
    """U_n(y) = F_n(y/(1+y)); при y > 1 используется точка 1/(1+y)."""

    if y < 0.0:
        raise DomainError(f"карта Лежандра для U_n определена при y >= 0, получено {y!r}")
    if math.isinf(y):
        raise DomainError("U_n не вычисляется в бесконечности")
    point = y / (1.0 + y) if y <= 1.0 else 1.0 / (1.0 + y)
    return chart_binomial(n, point)


def chart_mkz(n: int, y: float) -> float:
    """J_n(y) = ((1-y)/(1+y)) U_n(y)."""

    if not 0.0 <= y < 1.0:
        raise DomainError(f"карта Лежандра для J_n определена на [0, 1), получено {y!r}")
    return (1.0 - y) / (1.0 + y) * chart_bbh(n, y)


_CHARTS = {
    FamilyTag.BINOMIAL: chart_binomial,
    FamilyTag.NEG_BINOMIAL: chart_negbinomial,
    FamilyTag.BBH: chart_bbh,
    FamilyTag.MKZ: chart_mkz,
}


class LegendreBackend(BaseBackend):
    """F, G, U, J как масштабированные значения P_n в точке t(x)."""

    method = Method.LEGENDRE

    def supports(self, family: FamilySpec) -> bool:
        return family.family_c != 0 and has_integer_canonical_order(family)

    def unsupported_reason(self, family: FamilySpec) -> str:
        if family.family_c == 0:
            return "для распределения Пуассона карта Лежандра не определена"
        return f"карта Лежандра требует целого порядка, а у {family.describe()} он дробный"

    def _evaluate(self, family: FamilySpec, x: float, nodes: Optional[int]) -> Tuple[float, float]:
        canonical, y = resolve_general(family, x)
        order = canonical.integer_order
        value = _CHARTS[canonical.tag](order, y)
        return value, 4.0 * (order + 1) * _EPS * abs(value)
