"""Энтропии Реньи и Цаллиса второго порядка."""

from __future__ import annotations

import logging
import math
from typing import Iterable, List, Optional

from ..errors import CoincidenceLabError, DomainError, ParameterError
from ..models import EntropyBounds, EntropyPoint, FamilySpec, Method
from .coincidence import CoincidenceService
from .inequality_lab import family_for, lookup, two_sided_coefficients


logger = logging.getLogger(__name__)


def _check_index(s: float) -> None:
    if not (0.0 < s <= 1.0):
        raise DomainError(f"индекс совпадения {s!r} вне промежутка (0, 1]")


def renyi_entropy(s: float, base: float = math.e) -> float:
    """-log S; по умолчанию в натах, base=2 даёт биты."""

    _check_index(s)
    if not (base > 0.0 and base != 1.0):
        raise ParameterError(f"основание логарифма {base!r} недопустимо")
    if s == 1.0:
        return 0.0
    return -math.log(s) / math.log(base)


def tsallis_entropy(s: float) -> float:
    """1 - S."""

    _check_index(s)
    return 1.0 - s


# NOTE[agent]: Номер точки сетки переносится в исключение, чтобы вызывающий код мог его показать.
def entropy_profile(
    family: FamilySpec,
    grid: Iterable[float],
    *,
    service: Optional[CoincidenceService] = None,
    base: float = math.e,
    method: Method = Method.AUTO,
) -> List[EntropyPoint]:
    """Точки (x, S, R, T) для каждой точки сетки; по умолчанию S считается методом auto.

    Raises:
        CoincidenceLabError: ошибка в точке сетки, с номером этой точки.
    """

    service = service or CoincidenceService()
    points: List[EntropyPoint] = []
    for index, x in enumerate(grid):
        try:
            value = service.evaluate(family, x, method)
            points.append(
                EntropyPoint(
                    x=x,
                    s=value.value,
                    renyi=renyi_entropy(value.value, base),
                    tsallis=tsallis_entropy(value.value),
                    method=value.method,
                    err_estimate=value.err_estimate,
                )
            )
        except CoincidenceLabError as exc:
            raise exc.at_grid_index(index) from exc
    logger.debug("Профиль %s: %d точек", family.describe(), len(points))
    return points


def entropy_bounds(
    inequality_id: str,
    n: int,
    x: float,
    *,
    service: Optional[CoincidenceService] = None,
) -> EntropyBounds:
    """Вилка для энтропий индекса порядка n+1 по двусторонней оценке a S_n <= S_{n+1} <= b S_n.

    Реньи: [R(S_n) - log b, R(S_n) - log a]; Цаллис: [1 - b S_n, 1 - a S_n].
    """

    descriptor = lookup(inequality_id)
    lower, upper = two_sided_coefficients(descriptor.id, n, x)
    service = service or CoincidenceService()
    family = family_for(descriptor, n)
    current = service.auto(family, x).value
    following = service.auto(family.with_order(family.n + 1), x).value
    base_renyi = renyi_entropy(current)
    return EntropyBounds(
        inequality_id=descriptor.id,
        n=n,
        x=x,
        renyi_lower=base_renyi - math.log(upper),
        renyi_upper=base_renyi - math.log(lower),
        renyi_actual=renyi_entropy(following),
        tsallis_lower=1.0 - upper * current,
        tsallis_upper=1.0 - lower * current,
        tsallis_actual=tsallis_entropy(following),
    )
