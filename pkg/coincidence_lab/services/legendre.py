"""Многочлены Лежандра и отображение x -> t, связывающее их с F_n."""

from __future__ import annotations

from typing import List

from ..errors import DomainError, ParameterError
from ..models import LegendreArgument


def _check_degree(n: int) -> None:
    if n < 0 or int(n) != n:
        raise ParameterError(f"степень n должна быть неотрицательным целым, получено {n!r}")


def legendre_sequence(n: int, t: float) -> List[float]:
    """P_0(t), ..., P_n(t) прямой трёхчленной рекуррентой.

    (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}, P_0 = 1, P_1 = t.
    """

    _check_degree(n)
    values = [1.0]
    if n == 0:
        return values
    values.append(t)
    for k in range(1, int(n)):
        values.append(((2 * k + 1) * t * values[k] - k * values[k - 1]) / (k + 1))
    return values


def legendre_eval(n: int, t: float) -> float:
    """P_n(t) по рекурренте; при t >= 1 это доминирующее решение, масштабирование не нужно."""

    _check_degree(n)
    if n == 0:
        return 1.0
    previous, current = 1.0, t
    for k in range(1, int(n)):
        previous, current = current, ((2 * k + 1) * t * current - k * previous) / (k + 1)
    return current


# NOTE[agent]: Отображение определено при любом x < 1/2; отрицательные x нужны карте для G_n.
def legendre_map(x: float) -> float:
    """t = (1 - 2x + 2x^2)/(1 - 2x) без проверки принадлежности [0, 1/2)."""

    denominator = 1.0 - 2.0 * x
    if denominator <= 0.0:
        raise DomainError(f"отображение x -> t не определено при x={x!r} >= 1/2")
    return (denominator + 2.0 * x * x) / denominator


def legendre_argument(x: float) -> LegendreArgument:
    """Аргумент Лежандра для точки x из [0, 1/2)."""

    if not (0.0 <= x < 0.5):
        raise DomainError(f"x={x!r} вне карты Лежандра [0, 1/2)")
    return LegendreArgument(t=legendre_map(x), x=x)


def legendre_scaled(n: int, x: float) -> float:
    """(1-2x)^n P_n(t(x)) без вычисления t.

    Рекуррента записана для Q_k = s^k P_k(t), s = 1 - 2x, где ts = 1 - 2x + 2x^2
    конечно при любом x, поэтому формула остаётся устойчивой у полюса x = 1/2.
    """

    _check_degree(n)
    s = 1.0 - 2.0 * x
    ts = s + 2.0 * x * x
    if n == 0:
        return 1.0
    previous, current = 1.0, ts
    for k in range(1, int(n)):
        previous, current = current, ((2 * k + 1) * ts * current - k * s * s * previous) / (k + 1)
    return current


def legendre_damped(n: int, y: float) -> float:
    """(1+2y)^{-n} P_n(t(-y)) при y >= 0 без вычисления степеней.

    Рекуррента для Q_k = s^{-k} P_k(t), s = 1 + 2y: отношение t/s не превосходит 1,
    поэтому значения остаются ограниченными при больших n и y.
    """

    _check_degree(n)
    if y < 0.0:
        raise DomainError(f"затухающая форма определена при y >= 0, получено {y!r}")
    s = 1.0 + 2.0 * y
    ratio = 1.0 / s + 2.0 * (y / s) ** 2
    damping = (1.0 / s) ** 2
    if n == 0:
        return 1.0
    previous, current = 1.0, ratio
    for k in range(1, int(n)):
        previous, current = current, ((2 * k + 1) * ratio * current - k * damping * previous) / (k + 1)
    return current
