"""Трёхчленные рекуррентные соотношения по порядку n."""

from __future__ import annotations

import sys
from typing import Optional, Tuple

from ...errors import DomainError, ParameterError
from ...models import FamilySpec, FamilyTag, Method, as_integer
from .base import BaseBackend, has_integer_canonical_order, resolve_general


_EPS = sys.float_info.epsilon


def _order(n: int, minimum: int, symbol: str) -> int:
    order = as_integer(n)
    if order is None or order < minimum:
        raise ParameterError(f"рекуррента {symbol}_n требует целого n >= {minimum}, получено {n!r}")
    return order


def recurrence_binomial(n: int, x: float) -> float:
    """F_n(x) от F_0 = 1, F_1 = 1 - 2x + 2x^2.

    2(k+1) F_{k+1} = (2k+1)(1+a) F_k - 2k a F_{k-1}, a = (1-2x)^2.
    """

    order = _order(n, 0, "F")
    a = (1.0 - 2.0 * x) ** 2
    previous, current = 1.0, 1.0 - 2.0 * x + 2.0 * x * x
    if order == 0:
        return previous
    for k in range(1, order):
        previous, current = current, (
            (2 * k + 1) * (1.0 + a) * current - 2 * k * a * previous
        ) / (2 * (k + 1))
    return current


def recurrence_negbinomial(n: int, x: float) -> float:
    """G_n(x) от G_1 = 1/(2x+1), G_2 = (1+2x+2x^2)/(2x+1)^3.

    k (1+2x)^2 G_{k+1} = (2k-1)(1+2x+2x^2) G_k - (k-1) G_{k-1}, k >= 2.
    """

    order = _order(n, 1, "G")
    base = 1.0 + 2.0 * x
    if base == 0.0:
        raise DomainError("рекуррента G_n вырождается при x = -1/2")
    quadratic = 1.0 + 2.0 * x + 2.0 * x * x
    previous, current = 1.0 / base, quadratic / base**3
    if order == 1:
        return previous
    for k in range(2, order):
        previous, current = current, (
            (2 * k - 1) * quadratic * current - (k - 1) * previous
        ) / (k * base * base)
    return current


def _bbh_like(order: int, x: float, first: float, second: float) -> float:
    # (k+1)(1+x)^2 X_{k+1} = (2k+1)(1+x^2) X_k - k (1-x)^2 X_{k-1}
    if x == -1.0:
        raise DomainError("рекуррента U_n, J_n вырождается при x = -1")
    denominator = (1.0 + x) ** 2
    square = 1.0 + x * x
    falling = (1.0 - x) ** 2
    previous, current = first, second
    if order == 0:
        return previous
    for k in range(1, order):
        previous, current = current, (
            (2 * k + 1) * square * current - k * falling * previous
        ) / ((k + 1) * denominator)
    return current


def recurrence_bbh(n: int, x: float) -> float:
    """U_n(x) от U_0 = 1, U_1 = (1+x^2)/(1+x)^2."""

    order = _order(n, 0, "U")
    return _bbh_like(order, x, 1.0, (1.0 + x * x) / (1.0 + x) ** 2)


def recurrence_mkz(n: int, x: float) -> float:
    """J_n(x) от J_0 = (1-x)/(1+x), J_1 = (1-x)(1+x^2)/(1+x)^3; рекуррента та же, что у U_n."""

    order = _order(n, 0, "J")
    if x == -1.0:
        raise DomainError("рекуррента J_n вырождается при x = -1")
    ratio = (1.0 - x) / (1.0 + x)
    return _bbh_like(order, x, ratio, ratio * (1.0 + x * x) / (1.0 + x) ** 2)


_RECURRENCES = {
    FamilyTag.BINOMIAL: recurrence_binomial,
    FamilyTag.NEG_BINOMIAL: recurrence_negbinomial,
    FamilyTag.BBH: recurrence_bbh,
    FamilyTag.MKZ: recurrence_mkz,
}


class RecurrenceBackend(BaseBackend):
    """Прямой ход рекуррент от двух начальных значений."""

    method = Method.RECURRENCE

    def supports(self, family: FamilySpec) -> bool:
        return family.family_c != 0 and has_integer_canonical_order(family)

    def unsupported_reason(self, family: FamilySpec) -> str:
        if family.family_c == 0:
            return "для распределения Пуассона рекуррента по n не применяется"
        return f"рекуррента требует целого порядка, а у {family.describe()} он дробный"

    def _evaluate(self, family: FamilySpec, x: float, nodes: Optional[int]) -> Tuple[float, float]:
        canonical, y = resolve_general(family, x)
        order = canonical.integer_order
        value = _RECURRENCES[canonical.tag](order, y)
        return value, 4.0 * (order + 1) * _EPS * abs(value)
