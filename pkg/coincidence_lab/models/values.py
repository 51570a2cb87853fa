"""Значения индексов совпадения, квадратурные правила и канонические формы."""

from __future__ import annotations

import math
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..errors import ConsistencyError, DomainError, ParameterError
from .family import FamilySpec, TruncationPolicy


# NOTE[agent]: Превышение единицы в пределах этого допуска считается округлением.
_ROUNDOFF_ABOVE_ONE = 1e-12


class Method(str, Enum):
    """Метод вычисления индекса совпадения."""

    AUTO = "auto"
    DIRECT = "direct"
    CLOSED = "closed"
    RECURRENCE = "recurrence"
    QUADRATURE = "quadrature"
    LEGENDRE = "legendre"


class CoincidenceValue(BaseModel):
    """Значение S с меткой метода и эвристической оценкой погрешности."""

    model_config = ConfigDict(frozen=True)

    value: float
    method: Method
    err_estimate: float = 0.0

    @field_validator("value")
    @classmethod
    def _check_value(cls, value: float) -> float:
        if 1.0 < value <= 1.0 + _ROUNDOFF_ABOVE_ONE:
            return 1.0
        if not (0.0 < value <= 1.0):
            raise ConsistencyError(f"индекс совпадения {value!r} вне промежутка (0, 1]")
        return value

    @field_validator("err_estimate")
    @classmethod
    def _check_err(cls, value: float) -> float:
        if not value >= 0.0:
            raise ConsistencyError(f"оценка погрешности {value!r} должна быть неотрицательной")
        return value


class QuadratureRule(BaseModel):
    """Правило Гаусса–Чебышёва для веса 1/sqrt(t(1-t)) на [0, 1]."""

    model_config = ConfigDict(frozen=True)

    m: int
    nodes: Tuple[float, ...]
    weights: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_shape(self) -> "QuadratureRule":
        if self.m < 1:
            raise ParameterError(f"число узлов m должно быть >= 1, получено {self.m}")
        if len(self.nodes) != self.m or len(self.weights) != self.m:
            raise ParameterError("число узлов и весов должно совпадать с m")
        return self

    def integrate(self, values: Tuple[float, ...]) -> float:
        """Возвращает (1/pi) * сумму w_j q(t_j) для значений q в узлах."""

        return math.fsum(w * v for w, v in zip(self.weights, values)) / math.pi


class CanonicalKind(str, Enum):
    """Каноническое семейство, к которому сводится общий параметр c."""

    BINOMIAL = "binomial"
    NEG_BINOMIAL = "negbinomial"
    POISSON = "poisson"


# NOTE[agent]: Сведение (c, n, x) к одному из трёх базовых распределений.
class CanonicalForm(BaseModel):
    """BinomialAt(l, y), NegBinomialAt(m, y) или PoissonAt(n, x)."""

    model_config = ConfigDict(frozen=True)

    kind: CanonicalKind
    order: float
    y: float

    def family(self) -> FamilySpec:
        """Каноническое семейство с порядком order."""

        if self.kind is CanonicalKind.BINOMIAL:
            return FamilySpec.binomial(self.order)
        if self.kind is CanonicalKind.NEG_BINOMIAL:
            return FamilySpec.negbinomial(self.order)
        return FamilySpec.poisson(self.order)

    def describe(self) -> str:
        """Запись вида BinomialAt(2, 0.25)."""

        names = {
            CanonicalKind.BINOMIAL: "BinomialAt",
            CanonicalKind.NEG_BINOMIAL: "NegBinomialAt",
            CanonicalKind.POISSON: "PoissonAt",
        }
        return f"{names[self.kind]}({self.order:g}, {self.y:g})"


class LegendreArgument(BaseModel):
    """Аргумент t = (1-2x+2x^2)/(1-2x) многочлена Лежандра для x из [0, 1/2)."""

    model_config = ConfigDict(frozen=True)

    t: float
    x: float

    @model_validator(mode="after")
    def _check_chart(self) -> "LegendreArgument":
        if not (0.0 <= self.x < 0.5):
            raise DomainError(f"x={self.x!r} вне карты [0, 1/2)")
        if self.t < 1.0:
            raise DomainError(f"t={self.t!r} меньше 1")
        return self


class EvalRequest(BaseModel):
    """Запрос на вычисление одного значения S."""

    model_config = ConfigDict(frozen=True)

    family: FamilySpec
    x: float
    method: Method = Method.AUTO
    policy: TruncationPolicy = TruncationPolicy()
    nodes: Optional[int] = None
