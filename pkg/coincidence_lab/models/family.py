"""Семейства распределений и политика усечения бесконечных рядов."""

from __future__ import annotations

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..errors import DomainError, ParameterError


# NOTE[agent]: Допуск, с которым вещественный порядок считается целым.
_INTEGER_TOLERANCE = 1e-9


def as_integer(value: float) -> Optional[int]:
    """Возвращает целое, если value целое с точностью до округления, иначе None."""

    if not math.isfinite(value):
        return None
    nearest = round(value)
    if abs(value - nearest) <= _INTEGER_TOLERANCE * max(1.0, abs(value)):
        return int(nearest)
    return None


class FamilyTag(str, Enum):
    """Пять семейств распределений и общий параметр c."""

    BINOMIAL = "binomial"
    POISSON = "poisson"
    NEG_BINOMIAL = "negbinomial"
    BBH = "bbh"
    MKZ = "mkz"
    GENERAL = "general"


# NOTE[agent]: Фиксированное значение c для семейств, у которых оно определено.
_FAMILY_C = {
    FamilyTag.BINOMIAL: -1.0,
    FamilyTag.POISSON: 0.0,
    FamilyTag.NEG_BINOMIAL: 1.0,
}

# Буквенные обозначения индексов совпадения.
FAMILY_SYMBOLS = {
    FamilyTag.BINOMIAL: "F",
    FamilyTag.POISSON: "K",
    FamilyTag.NEG_BINOMIAL: "G",
    FamilyTag.BBH: "U",
    FamilyTag.MKZ: "J",
    FamilyTag.GENERAL: "S",
}


class Interval(BaseModel):
    """Промежуток [lower, upper] или [lower, upper) на вещественной оси."""

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    upper_closed: bool = True

    def contains(self, x: float) -> bool:
        """Проверяет принадлежность точки промежутку."""

        if not math.isfinite(x) or x < self.lower:
            return False
        if self.upper_closed:
            return x <= self.upper
        return x < self.upper

    @property
    def is_bounded(self) -> bool:
        """True, если верхняя граница конечна."""

        return math.isfinite(self.upper)

    def describe(self) -> str:
        """Возвращает запись промежутка в привычной нотации."""

        right = "]" if self.upper_closed and self.is_bounded else ")"
        upper = "inf" if not self.is_bounded else f"{self.upper:g}"
        return f"[{self.lower:g}, {upper}{right}"


# NOTE[agent]: Модель описывает семейство распределений вместе с его порядком и областью x.
class FamilySpec(BaseModel):
    """Семейство, параметр c и порядок n с проверкой ограничений.

    Допустимые сочетания:
        * binomial: c = -1, n целое, n >= 0;
        * poisson: c = 0, n > 0;
        * negbinomial: c = 1, n >= 1;
        * bbh, mkz: c не задаётся, n целое, n >= 0;
        * general: c < 0 и n = -c*l с целым l >= 1, либо c = 0 и n > 0,
          либо c > 0 и n >= c.
    """

    model_config = ConfigDict(frozen=True)

    tag: FamilyTag
    n: float
    c: Optional[float] = None

    @model_validator(mode="after")
    def _check_invariants(self) -> "FamilySpec":
        if not math.isfinite(self.n):
            raise ParameterError(f"порядок n={self.n} должен быть конечным")
        expected_c = _FAMILY_C.get(self.tag)
        if expected_c is not None and self.c is not None and self.c != expected_c:
            raise ParameterError(f"семейство {self.tag.value} допускает только c={expected_c:g}")
        if self.tag in (FamilyTag.BBH, FamilyTag.MKZ) and self.c is not None:
            raise ParameterError(f"семейство {self.tag.value} не имеет параметра c")
        if self.tag is FamilyTag.GENERAL and (self.c is None or not math.isfinite(self.c)):
            raise ParameterError("для семейства general требуется конечный параметр c")

        c = self.family_c
        if self.tag in (FamilyTag.BINOMIAL, FamilyTag.BBH, FamilyTag.MKZ):
            order = as_integer(self.n)
            if order is None or order < 0:
                raise ParameterError(
                    f"семейство {self.tag.value} требует целый порядок n >= 0, получено {self.n:g}"
                )
        elif c is not None and c < 0:
            steps = as_integer(self.n / -c)
            if self.n <= 0 or steps is None or steps < 1:
                raise ParameterError(
                    f"при c={c:g} порядок должен иметь вид n = -c*l с натуральным l, "
                    f"а n/(-c) = {self.n / -c:g}"
                )
        elif c == 0:
            if self.n <= 0:
                raise ParameterError(f"при c=0 требуется n > 0, получено {self.n:g}")
        elif c is not None and self.n < c:
            raise ParameterError(f"при c={c:g} > 0 требуется n >= c, получено n={self.n:g}")
        return self

    # NOTE[agent]: Фабрики избавляют вызывающий код от ручной подстановки c.
    @classmethod
    def binomial(cls, n: float) -> "FamilySpec":
        """Биномиальное семейство (индекс F_n)."""

        return cls(tag=FamilyTag.BINOMIAL, n=n, c=-1.0)

    @classmethod
    def poisson(cls, n: float) -> "FamilySpec":
        """Пуассоновское семейство (индекс K_n)."""

        return cls(tag=FamilyTag.POISSON, n=n, c=0.0)

    @classmethod
    def negbinomial(cls, n: float) -> "FamilySpec":
        """Отрицательное биномиальное семейство (индекс G_n)."""

        return cls(tag=FamilyTag.NEG_BINOMIAL, n=n, c=1.0)

    @classmethod
    def bbh(cls, n: float) -> "FamilySpec":
        """Семейство Bleimann–Butzer–Hahn (индекс U_n)."""

        return cls(tag=FamilyTag.BBH, n=n)

    @classmethod
    def mkz(cls, n: float) -> "FamilySpec":
        """Семейство Meyer-König–Zeller (индекс J_n)."""

        return cls(tag=FamilyTag.MKZ, n=n)

    @classmethod
    def general(cls, c: float, n: float) -> "FamilySpec":
        """Распределение p_{n,k}^{[c]} с произвольным c."""

        return cls(tag=FamilyTag.GENERAL, n=n, c=c)

    @classmethod
    def from_name(cls, name: str, n: float, c: Optional[float] = None) -> "FamilySpec":
        """Создаёт семейство по имени из командной строки."""

        try:
            tag = FamilyTag(name.lower())
        except ValueError as exc:
            raise ParameterError(f"неизвестное семейство {name!r}") from exc
        if tag is FamilyTag.GENERAL:
            if c is None:
                raise ParameterError("для семейства general требуется параметр --c")
            return cls.general(c, n)
        if c is not None and tag in _FAMILY_C and c != _FAMILY_C[tag]:
            raise ParameterError(f"семейство {tag.value} допускает только c={_FAMILY_C[tag]:g}")
        if c is not None and tag not in _FAMILY_C:
            raise ParameterError(f"семейство {tag.value} не имеет параметра c")
        return cls(tag=tag, n=n, c=_FAMILY_C.get(tag))

    @property
    def family_c(self) -> Optional[float]:
        """Параметр c семейства (None для BBH и MKZ)."""

        if self.tag in _FAMILY_C:
            return _FAMILY_C[self.tag]
        return self.c

    @property
    def symbol(self) -> str:
        """Буква индекса совпадения: F, G, K, U, J или S."""

        return FAMILY_SYMBOLS[self.tag]

    @property
    def integer_order(self) -> Optional[int]:
        """Целый порядок n, если он целый, иначе None."""

        return as_integer(self.n)

    @property
    def steps(self) -> Optional[int]:
        """Число испытаний l = n/(-c) для c < 0."""

        c = self.family_c
        if c is None or c >= 0:
            return None
        return as_integer(self.n / -c)

    @property
    def domain(self) -> Interval:
        """Область допустимых значений x."""

        if self.tag is FamilyTag.MKZ:
            return Interval(lower=0.0, upper=1.0, upper_closed=False)
        if self.tag is FamilyTag.BBH:
            return Interval(lower=0.0, upper=math.inf, upper_closed=False)
        c = self.family_c
        if c is not None and c < 0:
            return Interval(lower=0.0, upper=-1.0 / c)
        return Interval(lower=0.0, upper=math.inf, upper_closed=False)

    def require_in_domain(self, x: float) -> None:
        """Бросает DomainError, если x не принадлежит области семейства."""

        if not self.domain.contains(x):
            raise DomainError(
                f"x={x!r} вне области {self.domain.describe()} семейства {self.describe()}"
            )

    def with_order(self, n: float) -> "FamilySpec":
        """Возвращает то же семейство с другим порядком."""

        return type(self)(tag=self.tag, n=n, c=self.c)

    def describe(self) -> str:
        """Краткое описание семейства для сообщений и логов."""

        if self.tag is FamilyTag.GENERAL:
            return f"general(c={self.c:g}, n={self.n:g})"
        return f"{self.tag.value}(n={self.n:g})"


class TruncationPolicy(BaseModel):
    """Правило усечения бесконечных строк вероятностей."""

    model_config = ConfigDict(frozen=True)

    rel_tol: float = 1e-14
    max_terms: int = 100_000

    @field_validator("rel_tol")
    @classmethod
    def _check_rel_tol(cls, value: float) -> float:
        if not value > 0:
            raise ParameterError(f"rel_tol должен быть положительным, получено {value!r}")
        return value

    @field_validator("max_terms")
    @classmethod
    def _check_max_terms(cls, value: int) -> int:
        if value < 1:
            raise ParameterError(f"max_terms должен быть не меньше 1, получено {value!r}")
        return value
