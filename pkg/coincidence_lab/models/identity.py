"""Отчёт о проверке тождества."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict


class IdentityReport(BaseModel):
    """Наибольшее относительное отклонение двух сторон тождества на сетке."""

    model_config = ConfigDict(frozen=True)

    identity_id: str
    title: str
    points: int
    max_deviation: float
    worst_n: Optional[float] = None
    worst_x: Optional[float] = None
    tolerance: float

    @property
    def passed(self) -> bool:
        """True, если отклонение не превышает допуск."""

        return self.max_deviation <= self.tolerance
