"""Точки профиля энтропий."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict

from .values import Method


class EntropyPoint(BaseModel):
    """Индекс совпадения и энтропии Реньи и Цаллиса второго порядка в точке x."""

    model_config = ConfigDict(frozen=True)

    x: float
    s: float
    renyi: float
    tsallis: float
    method: Method = Method.AUTO
    err_estimate: float = 0.0


# NOTE[agent]: Вилка для энтропий S_{n+1}, выведенная из двусторонней оценки через S_n.
class EntropyBounds(BaseModel):
    """Границы энтропий индекса следующего порядка и их фактические значения."""

    model_config = ConfigDict(frozen=True)

    inequality_id: str
    n: int
    x: float
    renyi_lower: float
    renyi_upper: float
    renyi_actual: float
    tsallis_lower: float
    tsallis_upper: float
    tsallis_actual: float

    @property
    def holds(self) -> bool:
        """True, если фактические значения лежат в вилке (с допуском округления)."""

        slack = 1e-12
        return (
            self.renyi_lower - slack <= self.renyi_actual <= self.renyi_upper + slack
            and self.tsallis_lower - slack <= self.tsallis_actual <= self.tsallis_upper + slack
        )
