"""Иерархия исключений библиотеки индексов совпадения."""

from __future__ import annotations

from typing import Optional


class CoincidenceLabError(RuntimeError):
    """Базовое исключение для всех ошибок вычислений."""

    def __init__(self, message: str, *, grid_index: Optional[int] = None) -> None:
        super().__init__(message)
        self.grid_index = grid_index

    # NOTE[agent]: Копия исключения с привязкой к точке сетки для диагностики.
    def at_grid_index(self, index: int) -> "CoincidenceLabError":
        """Возвращает исключение того же типа с номером точки сетки."""

        error = type(self)(f"точка сетки #{index}: {self}", grid_index=index)
        error.__cause__ = self
        return error


class ParameterError(CoincidenceLabError):
    """Параметры семейства распределений нарушают ограничения."""


class DomainError(CoincidenceLabError):
    """Аргумент x вне области определения семейства или карты."""


class TruncationError(CoincidenceLabError):
    """Бесконечная строка вероятностей не уложилась в max_terms."""


class UnsupportedMethodError(CoincidenceLabError):
    """Выбранный метод вычисления неприменим к семейству или порядку."""


class ConsistencyError(CoincidenceLabError):
    """Независимые методы вычисления разошлись сильнее допуска."""


class UnknownInequalityError(CoincidenceLabError, LookupError):
    """Идентификатор неравенства отсутствует в каталоге."""


__all__ = [
    "CoincidenceLabError",
    "ConsistencyError",
    "DomainError",
    "ParameterError",
    "TruncationError",
    "UnknownInequalityError",
    "UnsupportedMethodError",
]
