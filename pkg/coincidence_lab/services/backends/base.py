"""Базовая абстракция методов вычисления индекса совпадения."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Optional, Tuple

from ...errors import ParameterError, UnsupportedMethodError
from ...models import CoincidenceValue, FamilySpec, FamilyTag, Method, TruncationPolicy, as_integer
from ..pmf import reduce_family


logger = logging.getLogger(__name__)


# NOTE[agent]: Базовый класс задаёт общий порядок проверок для всех методов.
class BaseBackend(ABC):
    """Контракт метода вычисления S_{n,c}(x).

    Наследник объявляет ``method``, сообщает о применимости через
    ``supports`` и реализует ``_evaluate``, который возвращает пару
    (значение, оценка погрешности). Проверка области, отказ для
    неподдерживаемых семейств и вырожденная точка x = 0 обрабатываются
    здесь, один раз для всех методов.
    """

    method: Method

    def __init__(self, policy: TruncationPolicy = TruncationPolicy()) -> None:
        self._policy = policy

    @property
    def policy(self) -> TruncationPolicy:
        """Политика усечения бесконечных рядов."""

        return self._policy

    def supports(self, family: FamilySpec) -> bool:
        """True, если метод применим к семейству и его порядку."""

        return True

    def unsupported_reason(self, family: FamilySpec) -> str:
        """Текст диагностики для неподдерживаемого семейства."""

        return f"метод {self.method.value} неприменим к {family.describe()}"

    # NOTE[agent]: Шаблонный метод: наследники не повторяют общие проверки.
    def evaluate(self, family: FamilySpec, x: float, *, nodes: Optional[int] = None) -> CoincidenceValue:
        """Вычисляет индекс совпадения семейства в точке x.

        Raises:
            DomainError: x вне области семейства.
            UnsupportedMethodError: метод неприменим к семейству.
            ParameterError: число узлов задано не для квадратуры.
        """

        family.require_in_domain(x)
        if not self.supports(family):
            raise UnsupportedMethodError(self.unsupported_reason(family))
        if nodes is not None and self.method is not Method.QUADRATURE:
            raise ParameterError("число узлов задаётся только для метода quadrature")
        if x == 0.0:
            return CoincidenceValue(value=1.0, method=self.method, err_estimate=0.0)
        logger.debug("Метод %s: %s при x=%r", self.method.value, family.describe(), x)
        value, err_estimate = self._evaluate(family, x, nodes)
        return CoincidenceValue(value=value, method=self.method, err_estimate=err_estimate)

    @abstractmethod
    def _evaluate(self, family: FamilySpec, x: float, nodes: Optional[int]) -> Tuple[float, float]:
        """Возвращает значение и эвристическую оценку погрешности."""


def resolve_general(family: FamilySpec, x: float) -> Tuple[FamilySpec, float]:
    """Заменяет общее семейство каноническим с пересчитанной точкой.

    Семейства с фиксированным c, BBH и MKZ возвращаются без изменений.
    """

    if family.tag is not FamilyTag.GENERAL:
        return family, x
    form = reduce_family(family, x)
    return form.family(), form.y


def has_integer_canonical_order(family: FamilySpec) -> bool:
    """True, если каноническое семейство имеет целый порядок (или это Пуассон)."""

    c = family.family_c
    if family.tag is FamilyTag.GENERAL and c > 0:
        return as_integer(family.n / c) is not None
    if family.tag is FamilyTag.NEG_BINOMIAL:
        return family.integer_order is not None
    return True
