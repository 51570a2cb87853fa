"""Описания неравенств каталога и отчёты о проверке на сетках."""

from __future__ import annotations

import math
from enum import Enum
from typing import Iterable, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import ConsistencyError
from .family import FamilyTag, Interval


class StatementKind(str, Enum):
    """Вид утверждения неравенства."""

    RATIO_BOUND = "ratio_bound"
    CONVEXITY = "convexity"
    MONOTONICITY = "monotonicity"
    TWO_SIDED = "two_sided"


# NOTE[agent]: Описание одного неравенства; формулы хранятся в читаемом виде.
class InequalityDescriptor(BaseModel):
    """Одно неравенство каталога.

    Поле x_domain равно None только у неравенства для общего c: тогда
    область зависит от c и совпадает с областью семейства.
    """

    model_config = ConfigDict(frozen=True)

    id: str
    families: Tuple[FamilyTag, ...]
    min_order: int
    x_domain: Optional[Interval]
    lhs: str
    rhs: str
    statement_kind: StatementKind
    title: str
    c_values: Tuple[float, ...] = ()

    def accepts_order(self, n: int) -> bool:
        """Проверяет, что порядок n входит в область утверждения."""

        return n >= self.min_order


class GridDescription(BaseModel):
    """Параметры сетки, на которой проверялось неравенство."""

    model_config = ConfigDict(frozen=True)

    n_values: Tuple[int, ...]
    x_points: int
    c_values: Tuple[float, ...] = ()

    def describe(self) -> str:
        """Краткая запись сетки."""

        orders = f"n={self.n_values[0]}..{self.n_values[-1]}" if self.n_values else "n=-"
        text = f"{orders}, x_points={self.x_points}"
        if self.c_values:
            text += ", c=" + ",".join(f"{c:g}" for c in self.c_values)
        return text


class PointMargin(BaseModel):
    """Запас rhs - lhs в одной точке сетки."""

    model_config = ConfigDict(frozen=True)

    n: int
    x: float
    margin: float
    c: Optional[float] = None

    def sort_key(self) -> Tuple[float, int, float]:
        """Ключ упорядочивания (c, n, x)."""

        return (self.c if self.c is not None else 0.0, self.n, self.x)


class VerificationReport(BaseModel):
    """Итог проверки одного неравенства на сетке."""

    model_config = ConfigDict(frozen=True)

    inequality_id: str
    grid: GridDescription
    margins: Tuple[PointMargin, ...]
    min_margin: float
    violations: Tuple[PointMargin, ...]
    tolerance: float

    @model_validator(mode="after")
    def _check_summary(self) -> "VerificationReport":
        expected_min = min((p.margin for p in self.margins), default=math.inf)
        if self.min_margin != expected_min:
            raise ConsistencyError("min_margin не совпадает с минимумом запасов")
        expected = tuple(p for p in self.margins if p.margin < -self.tolerance)
        if expected != self.violations:
            raise ConsistencyError("список нарушений не согласован с допуском")
        return self

    # NOTE[agent]: Сборка отчёта: сортировка точек и вычисление итогов в одном месте.
    @classmethod
    def from_margins(
        cls,
        inequality_id: str,
        grid: GridDescription,
        margins: Iterable[PointMargin],
        tolerance: float,
    ) -> "VerificationReport":
        """Упорядочивает точки по (c, n, x) и считает минимум и нарушения."""

        ordered = tuple(sorted(margins, key=PointMargin.sort_key))
        return cls(
            inequality_id=inequality_id,
            grid=grid,
            margins=ordered,
            min_margin=min((p.margin for p in ordered), default=math.inf),
            violations=tuple(p for p in ordered if p.margin < -tolerance),
            tolerance=tolerance,
        )

    @property
    def points(self) -> int:
        """Число проверенных точек."""

        return len(self.margins)

    @property
    def passed(self) -> bool:
        """True, если нарушений нет."""

        return not self.violations
