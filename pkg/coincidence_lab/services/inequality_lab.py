"""Каталог неравенств для индексов совпадения и их проверка на сетках."""

from __future__ import annotations

import logging
import math
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from cachetools import LRUCache, cached
from tqdm import tqdm

from ..errors import DomainError, ParameterError, UnknownInequalityError
from ..models import (
    FamilySpec,
    FamilyTag,
    GridDescription,
    InequalityDescriptor,
    Interval,
    PointMargin,
    StatementKind,
    VerificationReport,
    as_integer,
)
from .coincidence import CoincidenceService


logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12
DEFAULT_UNBOUNDED_SPAN = 5.0
THEOREM41_C_VALUES = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)

# NOTE[agent]: Размер кеша значений S на одну проверку сетки.
_MEMO_SIZE = 200_000

_UNIT = Interval(lower=0.0, upper=1.0)
_HALF_LINE = Interval(lower=0.0, upper=math.inf, upper_closed=False)
_UNIT_OPEN = Interval(lower=0.0, upper=1.0, upper_closed=False)

Coefficient = Callable[[int, float, Optional[float]], float]
IndexOf = Callable[[float], float]


def _y(x: float) -> float:
    return x * (1.0 - x)


def _z(x: float) -> float:
    return x * (1.0 + x)


def _fraction(a: float, b: float, c: float, d: float, w: Callable[[float], float]) -> Coefficient:
    # (1 + (a n + b) w) / (1 + (c n + d) w)
    return lambda n, x, _c: (1.0 + (a * n + b) * w(x)) / (1.0 + (c * n + d) * w(x))


def _quadratic(a: float, b: float, c: float, d: float) -> Coefficient:
    # (1 + (a n + b) x + x^2) / (1 + (c n + d) x + x^2)
    return lambda n, x, _c: (1.0 + (a * n + b) * x + x * x) / (1.0 + (c * n + d) * x + x * x)


def _theorem41(n: int, x: float, c: Optional[float]) -> float:
    return 1.0 + 2.0 * c * x * (1.0 + c * x)


class _Rule(NamedTuple):
    """Неравенство каталога вместе с его коэффициентами."""

    descriptor: InequalityDescriptor
    coefficient: Optional[Coefficient] = None
    lower: Optional[Coefficient] = None
    shift: int = 0


def _descriptor(
    id_: str,
    family: FamilyTag,
    min_order: int,
    domain: Optional[Interval],
    lhs: str,
    rhs: str,
    kind: StatementKind,
    title: str,
    c_values: Tuple[float, ...] = (),
) -> InequalityDescriptor:
    return InequalityDescriptor(
        id=id_,
        families=(family,),
        min_order=min_order,
        x_domain=domain,
        lhs=lhs,
        rhs=rhs,
        statement_kind=kind,
        title=title,
        c_values=c_values,
    )


def _convexity(id_: str, family: FamilyTag, symbol: str, min_order: int, domain: Interval) -> _Rule:
    return _Rule(
        _descriptor(
            id_,
            family,
            min_order,
            domain,
            f"2{symbol}_n",
            f"{symbol}_(n-1) + {symbol}_(n+1)",
            StatementKind.CONVEXITY,
            f"выпуклость {symbol}_n по n",
        )
    )


def _ratio(
    id_: str,
    family: FamilyTag,
    symbol: str,
    min_order: int,
    domain: Interval,
    shift: int,
    coefficient: Coefficient,
    text: str,
) -> _Rule:
    lhs = f"{symbol}_(n+1)" if shift else f"{symbol}_n"
    return _Rule(
        _descriptor(
            id_,
            family,
            min_order,
            domain,
            lhs,
            f"{text} * {symbol}_(n-1)",
            StatementKind.RATIO_BOUND,
            f"оценка {lhs} через {symbol}_(n-1)",
        ),
        coefficient=coefficient,
        shift=shift,
    )


def _two_sided(
    id_: str,
    family: FamilyTag,
    symbol: str,
    min_order: int,
    domain: Interval,
    lower: Coefficient,
    upper: Coefficient,
    lower_text: str,
    upper_text: str,
) -> _Rule:
    return _Rule(
        _descriptor(
            id_,
            family,
            min_order,
            domain,
            f"{lower_text} * {symbol}_n <= {symbol}_(n+1)",
            f"{symbol}_(n+1) <= {upper_text} * {symbol}_n",
            StatementKind.TWO_SIDED,
            f"двусторонняя оценка {symbol}_(n+1) через {symbol}_n",
        ),
        coefficient=upper,
        lower=lower,
    )


_F, _G, _U, _J = FamilyTag.BINOMIAL, FamilyTag.NEG_BINOMIAL, FamilyTag.BBH, FamilyTag.MKZ


def _binomial_lower(n: int, x: float, c: Optional[float]) -> float:
    return 1.0 - 2.0 * _y(x)


def _negbinomial_lower(n: int, x: float, c: Optional[float]) -> float:
    return 1.0 / (1.0 + 2.0 * _z(x))


def _bbh_lower(n: int, x: float, c: Optional[float]) -> float:
    return (1.0 + x * x) / (1.0 + x) ** 2


_RULES: Tuple[_Rule, ...] = (
    _ratio("INEQ-3.1", _F, "F", 1, _UNIT, 1, _fraction(4, -2, 4, 2, _y),
           "(1+(4n-2)x(1-x))/(1+(4n+2)x(1-x))"),
    _ratio("INEQ-3.2", _F, "F", 1, _UNIT, 0, _fraction(4, 0, 4, 2, _y),
           "(1+4nx(1-x))/(1+(4n+2)x(1-x))"),
    _Rule(
        _descriptor("INEQ-3.3", _F, 0, _UNIT, "F_(n+1)", "F_n", StatementKind.MONOTONICITY,
                    "убывание F_n по n")
    ),
    _convexity("INEQ-3.4", _F, "F", 1, _UNIT),
    _convexity("INEQ-3.6", _U, "U", 1, _HALF_LINE),
    _ratio("INEQ-3.7", _U, "U", 1, _HALF_LINE, 1, _quadratic(4, 0, 4, 4),
           "(1+4nx+x^2)/(1+(4n+4)x+x^2)"),
    _ratio("INEQ-3.8", _U, "U", 1, _HALF_LINE, 0, _quadratic(4, 2, 4, 4),
           "(1+(4n+2)x+x^2)/(1+(4n+4)x+x^2)"),
    _convexity("INEQ-3.9", _G, "G", 2, _HALF_LINE),
    _ratio("INEQ-3.10", _G, "G", 2, _HALF_LINE, 1, _fraction(4, -2, 4, 2, _z),
           "(1+(4n-2)x(1+x))/(1+(4n+2)x(1+x))"),
    _ratio("INEQ-3.11", _G, "G", 2, _HALF_LINE, 0, _fraction(4, 0, 4, 2, _z),
           "(1+4nx(1+x))/(1+(4n+2)x(1+x))"),
    _convexity("INEQ-3.12", _J, "J", 1, _UNIT_OPEN),
    _ratio("INEQ-3.13", _J, "J", 1, _UNIT_OPEN, 1, _quadratic(4, 0, 4, 4),
           "(1+4nx+x^2)/(1+(4n+4)x+x^2)"),
    _ratio("INEQ-3.14", _J, "J", 1, _UNIT_OPEN, 0, _quadratic(4, 2, 4, 4),
           "(1+(4n+2)x+x^2)/(1+(4n+4)x+x^2)"),
    _Rule(
        _descriptor(
            "INEQ-4.1",
            FamilyTag.GENERAL,
            0,
            None,
            "S_(n-c,c) при c<0; (1+2cx(1+cx)) S_(n,c) при c>0",
            "(1+2cx(1+cx)) S_(n,c) при c<0; S_(n-c,c) при c>0",
            StatementKind.RATIO_BOUND,
            "сравнение S_(n-c,c) и S_(n,c) для общего c",
            THEOREM41_C_VALUES,
        ),
        coefficient=_theorem41,
    ),
    _two_sided("INEQ-4.2F", _F, "F", 0, _UNIT,
               _binomial_lower, _fraction(4, 4, 4, 6, _y),
               "(1-2x(1-x))", "(1+(4n+4)x(1-x))/(1+(4n+6)x(1-x))"),
    _two_sided("INEQ-4.2G", _G, "G", 1, _HALF_LINE,
               _negbinomial_lower, _fraction(4, 4, 4, 6, _z),
               "1/(1+2x(1+x))", "(1+(4n+4)x(1+x))/(1+(4n+6)x(1+x))"),
    _two_sided("INEQ-4.3U", _U, "U", 0, _HALF_LINE, _bbh_lower, _quadratic(4, 6, 4, 8),
               "(1+x^2)/(1+x)^2", "(1+(4n+6)x+x^2)/(1+(4n+8)x+x^2)"),
    _two_sided("INEQ-4.4J", _J, "J", 0, _UNIT_OPEN, _bbh_lower, _quadratic(4, 6, 4, 8),
               "(1+x^2)/(1+x)^2", "(1+(4n+6)x+x^2)/(1+(4n+8)x+x^2)"),
)

_BY_ID: Dict[str, _Rule] = {rule.descriptor.id: rule for rule in _RULES}


def catalog() -> Tuple[InequalityDescriptor, ...]:
    """Все неравенства каталога в фиксированном порядке."""

    return tuple(rule.descriptor for rule in _RULES)


def _rule(inequality_id: str) -> _Rule:
    rule = _BY_ID.get(inequality_id)
    if rule is None:
        raise UnknownInequalityError(f"неизвестное неравенство {inequality_id!r}")
    return rule


def lookup(inequality_id: str) -> InequalityDescriptor:
    """Описание неравенства по идентификатору."""

    return _rule(inequality_id).descriptor


def family_for(descriptor: InequalityDescriptor, order: float, c: Optional[float] = None) -> FamilySpec:
    """Семейство неравенства с заданным порядком."""

    tag = descriptor.families[0]
    if tag is FamilyTag.GENERAL:
        return FamilySpec.general(c, order)
    return FamilySpec.from_name(tag.value, order)


def theorem41_order(index: int, c: float) -> float:
    """Порядок n = |c|(j+1) для номера j: тогда S_(n,c) и S_(n-c,c) определены."""

    return abs(c) * (index + 1)


def theorem41_first_index(c: float) -> int:
    """Наименьший номер j: 0 при c < 0 (n = |c|), 1 при c > 0, где нужно n - c >= c."""

    return 0 if c < 0 else 1


def x_domain(descriptor: InequalityDescriptor, c: Optional[float] = None) -> Interval:
    """Область x неравенства; для общего c она совпадает с областью семейства."""

    if descriptor.x_domain is not None:
        return descriptor.x_domain
    if c is None or c == 0:
        raise ParameterError(f"для {descriptor.id} нужен ненулевой параметр c")
    return FamilySpec.general(c, theorem41_order(1, c)).domain


def _check_point(rule: _Rule, n: int, x: float, c: Optional[float]) -> None:
    descriptor = rule.descriptor
    order = as_integer(n)
    if order is None or not descriptor.accepts_order(order):
        raise DomainError(f"{descriptor.id}: порядок n={n!r} вне области (n >= {descriptor.min_order})")
    if descriptor.x_domain is None:
        if c is None or c == 0:
            raise ParameterError(f"для {descriptor.id} нужен ненулевой параметр c")
    elif c is not None:
        raise ParameterError(f"{descriptor.id} не принимает параметр c")
    if descriptor.x_domain is None and order < (first := theorem41_first_index(c)):
        raise DomainError(f"{descriptor.id}: при c={c!r} номер j должен быть >= {first}, получено {n!r}")
    domain = x_domain(descriptor, c)
    if not domain.contains(x):
        raise DomainError(f"{descriptor.id}: x={x!r} вне области {domain.describe()}")


def _margins(rule: _Rule, index: IndexOf, n: int, x: float, c: Optional[float]) -> Dict[str, float]:
    kind = rule.descriptor.statement_kind
    if kind is StatementKind.CONVEXITY:
        return {"main": index(n - 1) + index(n + 1) - 2.0 * index(n)}
    if kind is StatementKind.MONOTONICITY:
        return {"main": index(n) - index(n + 1)}
    if kind is StatementKind.TWO_SIDED:
        current, following = index(n), index(n + 1)
        return {
            "lower": following - rule.lower(n, x, c) * current,
            "upper": rule.coefficient(n, x, c) * current - following,
        }
    if rule.descriptor.x_domain is None:
        order = theorem41_order(n, c)
        coefficient = rule.coefficient(n, x, c)
        if c < 0:
            return {"main": index(order - c) - coefficient * index(order)}
        return {"main": coefficient * index(order) - index(order - c)}
    return {"main": rule.coefficient(n, x, c) * index(n - 1) - index(n + rule.shift)}


def _select(rule: _Rule, margins: Dict[str, float], part: Optional[str]) -> float:
    if part is None:
        return min(margins.values())
    if part not in margins:
        raise ParameterError(f"{rule.descriptor.id}: часть {part!r} не определена")
    return margins[part]


def _index_function(
    descriptor: InequalityDescriptor,
    x: float,
    c: Optional[float],
    value_of: Callable[[FamilySpec, float], float],
) -> IndexOf:
    return lambda order: value_of(family_for(descriptor, order, c), x)


def evaluate_inequality(
    inequality_id: str,
    n: int,
    x: float,
    c: Optional[float] = None,
    part: Optional[str] = None,
    *,
    service: Optional[CoincidenceService] = None,
) -> float:
    """Запас rhs - lhs в точке (n, x); неотрицательный запас означает выполнение.

    Для двусторонних оценок возвращается меньший из двух запасов, part
    ("lower" или "upper") выбирает одну сторону. Для INEQ-4.1 n является
    номером j, порядок равен |c|(j+1).

    Raises:
        UnknownInequalityError: идентификатора нет в каталоге.
        DomainError: (n, x) вне области утверждения.
    """

    rule = _rule(inequality_id)
    _check_point(rule, n, x, c)
    service = service or CoincidenceService()
    index = _index_function(rule.descriptor, x, c, lambda family, y: service.auto(family, y).value)
    return _select(rule, _margins(rule, index, int(n), x, c), part)


def ratio_coefficient(inequality_id: str, n: int, x: float, c: Optional[float] = None) -> float:
    """Множитель правой части оценки (верхней, если оценка двусторонняя)."""

    rule = _rule(inequality_id)
    if rule.coefficient is None:
        raise ParameterError(f"{inequality_id}: у неравенства нет множителя")
    _check_point(rule, n, x, c)
    return rule.coefficient(int(n), x, c)


def two_sided_coefficients(inequality_id: str, n: int, x: float) -> Tuple[float, float]:
    """Множители (a, b) оценки a S_n <= S_(n+1) <= b S_n."""

    rule = _rule(inequality_id)
    if rule.descriptor.statement_kind is not StatementKind.TWO_SIDED:
        raise ParameterError(f"{inequality_id} не является двусторонней оценкой")
    _check_point(rule, n, x, None)
    return rule.lower(int(n), x, None), rule.coefficient(int(n), x, None)


def x_grid(domain: Interval, points: int, unbounded_span: float = DEFAULT_UNBOUNDED_SPAN) -> List[float]:
    """Равномерная сетка по области.

    Замкнутые концы входят в сетку; открытый верхний конец заменяется
    точкой на полшага левее; бесконечная область обрезается до
    [lower, lower + unbounded_span].
    """

    if points < 2:
        raise ParameterError(f"число точек сетки должно быть >= 2, получено {points!r}")
    upper = domain.upper if domain.is_bounded else domain.lower + unbounded_span
    grid = np.linspace(domain.lower, upper, points)
    if domain.is_bounded and not domain.upper_closed:
        grid[-1] = upper - (upper - domain.lower) / (points - 1) / 2.0
    return grid.tolist()


def _resolve_ids(ids: Union[str, Iterable[str], None]) -> List[str]:
    if ids is None or ids == "all":
        return [rule.descriptor.id for rule in _RULES]
    requested = [ids] if isinstance(ids, str) else list(ids)
    if "all" in requested:
        return [rule.descriptor.id for rule in _RULES]
    for inequality_id in requested:
        _rule(inequality_id)
    order = {rule.descriptor.id: position for position, rule in enumerate(_RULES)}
    return sorted(set(requested), key=order.__getitem__)


def verify_grid(
    ids: Union[str, Iterable[str], None],
    n_max: int,
    x_points: int,
    tolerance: float = DEFAULT_TOLERANCE,
    *,
    service: Optional[CoincidenceService] = None,
    c_values: Optional[Sequence[float]] = None,
    unbounded_span: float = DEFAULT_UNBOUNDED_SPAN,
    progress: bool = False,
    workers: Optional[int] = None,
) -> List[VerificationReport]:
    """Запасы неравенств на сетке порядков min_order..n_max и x_points точек x.

    Нарушения возвращаются как данные отчёта; порядок точек в отчёте не
    зависит от числа потоков.

    Raises:
        UnknownInequalityError: в списке есть неизвестный идентификатор.
        ParameterError: n_max < 2, x_points < 2 или tolerance <= 0.
    """

    if n_max < 2:
        raise ParameterError(f"n_max должен быть >= 2, получено {n_max!r}")
    if x_points < 2:
        raise ParameterError(f"x_points должен быть >= 2, получено {x_points!r}")
    if not tolerance > 0:
        raise ParameterError(f"допуск должен быть положительным, получено {tolerance!r}")
    if workers is not None and workers < 1:
        raise ParameterError(f"число потоков должно быть >= 1, получено {workers!r}")

    selected = _resolve_ids(ids)
    service = service or CoincidenceService()
    value_of = cached(
        LRUCache(maxsize=_MEMO_SIZE),
        key=lambda family, x: (family.tag, family.n, family.c, x),
        lock=threading.Lock(),
    )(lambda family, x: service.auto(family, x).value)

    tasks: List[Tuple[_Rule, int, float, Optional[float]]] = []
    grids: Dict[str, GridDescription] = {}
    for inequality_id in selected:
        rule = _BY_ID[inequality_id]
        descriptor = rule.descriptor
        orders = tuple(range(descriptor.min_order, n_max + 1))
        constants: Tuple[Optional[float], ...] = (None,)
        if descriptor.x_domain is None:
            constants = tuple(c_values if c_values is not None else descriptor.c_values)
        for c in constants:
            first = descriptor.min_order if c is None else theorem41_first_index(c)
            for x in x_grid(x_domain(descriptor, c), x_points, unbounded_span):
                tasks.extend((rule, n, x, c) for n in orders if n >= first)
        grids[inequality_id] = GridDescription(
            n_values=orders,
            x_points=x_points,
            c_values=tuple(c for c in constants if c is not None),
        )

    logger.info("Проверка %d неравенств: %d точек", len(selected), len(tasks))

    def run(task: Tuple[_Rule, int, float, Optional[float]]) -> Tuple[str, PointMargin]:
        rule, n, x, c = task
        index = _index_function(rule.descriptor, x, c, value_of)
        margin = min(_margins(rule, index, n, x, c).values())
        return rule.descriptor.id, PointMargin(n=n, x=x, margin=margin, c=c)

    bar = tqdm(total=len(tasks), disable=not progress, file=sys.stderr, desc="verify")
    collected: Dict[str, List[PointMargin]] = {inequality_id: [] for inequality_id in selected}
    try:
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for inequality_id, point in pool.map(run, tasks):
                    collected[inequality_id].append(point)
                    bar.update(1)
        else:
            for task in tasks:
                inequality_id, point = run(task)
                collected[inequality_id].append(point)
                bar.update(1)
    finally:
        bar.close()

    reports = [
        VerificationReport.from_margins(inequality_id, grids[inequality_id], collected[inequality_id], tolerance)
        for inequality_id in selected
    ]
    for report in reports:
        if report.passed:
            logger.info("%s: %d точек, min_margin=%.3e", report.inequality_id, report.points, report.min_margin)
        else:
            logger.warning(
                "%s: %d нарушений, min_margin=%.3e",
                report.inequality_id,
                len(report.violations),
                report.min_margin,
            )
    return reports


# NOTE[agent]: Обёртка хранит сервис и настройки, чтобы командная строка не передавала их в каждый вызов.
class InequalityLab:
    """Проверка неравенств с общими для запуска сервисом и допусками."""

    def __init__(
        self,
        service: CoincidenceService,
        *,
        tolerance: float = DEFAULT_TOLERANCE,
        unbounded_span: float = DEFAULT_UNBOUNDED_SPAN,
        c_values: Sequence[float] = THEOREM41_C_VALUES,
    ) -> None:
        self._service = service
        self._tolerance = tolerance
        self._unbounded_span = unbounded_span
        self._c_values = tuple(c_values)

    @property
    def tolerance(self) -> float:
        """Допуск на отрицательный запас по умолчанию."""

        return self._tolerance

    def evaluate(
        self,
        inequality_id: str,
        n: int,
        x: float,
        c: Optional[float] = None,
        part: Optional[str] = None,
    ) -> float:
        """Запас неравенства в точке."""

        return evaluate_inequality(inequality_id, n, x, c, part, service=self._service)

    def verify(
        self,
        ids: Union[str, Iterable[str], None],
        n_max: int,
        x_points: int,
        tolerance: Optional[float] = None,
        *,
        progress: bool = False,
        workers: Optional[int] = None,
    ) -> List[VerificationReport]:
        """Проверка на сетке с настройками запуска."""

        return verify_grid(
            ids,
            n_max,
            x_points,
            self._tolerance if tolerance is None else tolerance,
            service=self._service,
            c_values=self._c_values,
            unbounded_span=self._unbounded_span,
            progress=progress,
            workers=workers,
        )
