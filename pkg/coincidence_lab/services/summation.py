"""Компенсированное суммирование для знакопеременных рядов."""

from __future__ import annotations

from typing import Iterable


# NOTE[agent]: Вариант Ноймайера: устойчив и тогда, когда очередной член больше накопленной суммы.
class CompensatedSum:
    """Накопитель суммы с поправкой на ошибки округления.

    Дополнительно хранит сумму модулей членов, чтобы оценить число
    обусловленности ряда sum|a_k| / |sum a_k|.
    """

    def __init__(self) -> None:
        self._sum = 0.0
        self._carry = 0.0
        self._magnitude = 0.0

    def add(self, value: float) -> None:
        """Добавляет очередной член."""

        total = self._sum + value
        if abs(self._sum) >= abs(value):
            self._carry += (self._sum - total) + value
        else:
            self._carry += (value - total) + self._sum
        self._sum = total
        self._magnitude += abs(value)

    def extend(self, values: Iterable[float]) -> "CompensatedSum":
        """Добавляет все члены последовательности."""

        for value in values:
            self.add(value)
        return self

    @property
    def value(self) -> float:
        """Скорректированная сумма."""

        return self._sum + self._carry

    @property
    def magnitude(self) -> float:
        """Сумма модулей добавленных членов."""

        return self._magnitude

    @property
    def condition(self) -> float:
        """Число обусловленности; бесконечность для нулевой суммы."""

        total = abs(self.value)
        if total == 0.0:
            return float("inf") if self._magnitude else 1.0
        return self._magnitude / total
