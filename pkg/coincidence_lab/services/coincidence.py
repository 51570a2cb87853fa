"""Сервис вычисления индексов совпадения разными методами."""

from __future__ import annotations

import logging
import threading
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Type, Union

from ..errors import ConsistencyError, ParameterError
from ..models import CanonicalForm, CoincidenceValue, EvalRequest, FamilySpec, Method, TruncationPolicy
from .backends import (
    BaseBackend,
    ClosedFormBackend,
    DirectBackend,
    LegendreBackend,
    QuadratureBackend,
    RecurrenceBackend,
    has_integer_canonical_order,
)
from .backends.quadrature import (
    DEFAULT_MAX_NODES,
    DEFAULT_MIN_NODES,
    DEFAULT_REL_TOL,
    DEFAULT_START_NODES,
)
from .pmf import reduce_family


logger = logging.getLogger(__name__)

DEFAULT_CONSISTENCY_REL_TOL = 1e-8


class QuadStudyRow(NamedTuple):
    """Значение квадратуры с m узлами и его отклонение от эталона."""

    m: int
    value: float
    error: float


def relative_discrepancy(first: float, second: float) -> float:
    """|a - b| / max(|a|, |b|); 0 для двух нулей."""

    scale = max(abs(first), abs(second))
    if scale == 0.0:
        return 0.0
    return abs(first - second) / scale


# NOTE[agent]: Сервис создаёт методы по требованию и делегирует им вычисления.
class CoincidenceService:
    """Выбор метода, перекрёстная проверка и исследование сходимости квадратуры."""

    _BACKEND_CLASSES: Dict[Method, Type[BaseBackend]] = {
        Method.DIRECT: DirectBackend,
        Method.CLOSED: ClosedFormBackend,
        Method.RECURRENCE: RecurrenceBackend,
        Method.QUADRATURE: QuadratureBackend,
        Method.LEGENDRE: LegendreBackend,
    }

    def __init__(
        self,
        *,
        policy: TruncationPolicy = TruncationPolicy(),
        consistency_rel_tol: float = DEFAULT_CONSISTENCY_REL_TOL,
        quad_min_nodes: int = DEFAULT_MIN_NODES,
        quad_start_nodes: int = DEFAULT_START_NODES,
        quad_max_nodes: int = DEFAULT_MAX_NODES,
        quad_rel_tol: float = DEFAULT_REL_TOL,
    ) -> None:
        """Сохраняет настройки; сами методы создаются при первом обращении."""

        if not consistency_rel_tol > 0:
            raise ParameterError(f"допуск согласования должен быть положительным: {consistency_rel_tol!r}")
        self._policy = policy
        self._consistency_rel_tol = consistency_rel_tol
        self._quadrature_options = {
            "min_nodes": quad_min_nodes,
            "start_nodes": quad_start_nodes,
            "max_nodes": quad_max_nodes,
            "rel_tol": quad_rel_tol,
        }
        self._backends: Dict[Method, BaseBackend] = {}
        self._lock = threading.Lock()

    @property
    def policy(self) -> TruncationPolicy:
        """Политика усечения, общая для всех методов."""

        return self._policy

    # NOTE[agent]: Метод кеширует экземпляры, чтобы не пересоздавать их на каждой точке сетки.
    def backend(self, method: Method) -> BaseBackend:
        """Возвращает (и при необходимости создаёт) метод вычисления."""

        method = Method(method)
        with self._lock:
            cached = self._backends.get(method)
            if cached is not None:
                return cached
            backend_cls = self._BACKEND_CLASSES.get(method)
            if backend_cls is None:
                raise ParameterError(f"метод {method.value} не является самостоятельным методом")
            if backend_cls is QuadratureBackend:
                backend = backend_cls(self._policy, **self._quadrature_options)
            else:
                backend = backend_cls(self._policy)
            self._backends[method] = backend
            return backend

    def evaluate(
        self,
        family: FamilySpec,
        x: float,
        method: Method = Method.AUTO,
        *,
        nodes: Optional[int] = None,
    ) -> CoincidenceValue:
        """Индекс совпадения выбранным методом; AUTO означает перекрёстную проверку."""

        method = Method(method)
        if method is Method.AUTO:
            if nodes is not None:
                raise ParameterError("число узлов задаётся только для метода quadrature")
            return self.auto(family, x)
        return self.backend(method).evaluate(family, x, nodes=nodes)

    def evaluate_request(self, request: EvalRequest) -> CoincidenceValue:
        """Выполняет запрос; политика запроса заменяет политику сервиса."""

        if request.policy == self._policy:
            return self.evaluate(request.family, request.x, request.method, nodes=request.nodes)
        service = CoincidenceService(
            policy=request.policy,
            consistency_rel_tol=self._consistency_rel_tol,
            quad_min_nodes=self._quadrature_options["min_nodes"],
            quad_start_nodes=self._quadrature_options["start_nodes"],
            quad_max_nodes=self._quadrature_options["max_nodes"],
            quad_rel_tol=self._quadrature_options["rel_tol"],
        )
        return service.evaluate(request.family, request.x, request.method, nodes=request.nodes)

    def plan(self, family: FamilySpec) -> Tuple[Method, Method]:
        """Основной и контрольный методы для автоматического режима."""

        if family.family_c == 0:
            return Method.DIRECT, Method.CLOSED
        if has_integer_canonical_order(family):
            return Method.CLOSED, Method.RECURRENCE
        return Method.QUADRATURE, Method.DIRECT

    def auto(self, family: FamilySpec, x: float) -> CoincidenceValue:
        """Значение основного метода, подтверждённое независимым методом.

        Оценка погрешности равна наибольшему из собственной оценки
        основного метода и наблюдённого расхождения методов.

        Raises:
            ConsistencyError: относительное расхождение больше допуска.
        """

        primary_method, check_method = self.plan(family)
        primary = self.backend(primary_method).evaluate(family, x)
        check = self.backend(check_method).evaluate(family, x)
        discrepancy = relative_discrepancy(primary.value, check.value)
        if discrepancy > self._consistency_rel_tol:
            logger.error(
                "Методы %s и %s разошлись для %s при x=%r: %r против %r",
                primary_method.value,
                check_method.value,
                family.describe(),
                x,
                primary.value,
                check.value,
            )
            raise ConsistencyError(
                f"{family.describe()} при x={x!r}: {primary_method.value}={primary.value!r}, "
                f"{check_method.value}={check.value!r}, относительное расхождение {discrepancy:.3e}"
            )
        return CoincidenceValue(
            value=primary.value,
            method=primary.method,
            err_estimate=max(primary.err_estimate, abs(primary.value - check.value)),
        )

    def quad_study(self, family: FamilySpec, x: float, m_list: Iterable[int]) -> List[QuadStudyRow]:
        """Значения квадратуры для каждого m и их отклонения от эталона.

        Эталон: явная формула, если она применима, иначе квадратура с
        наибольшим m из списка.
        """

        counts = [int(m) for m in m_list]
        if not counts:
            raise ParameterError("список числа узлов пуст")
        if any(m < 1 for m in counts):
            raise ParameterError(f"числа узлов должны быть >= 1: {counts}")
        quadrature = self.backend(Method.QUADRATURE)
        values = [quadrature.evaluate(family, x, nodes=m).value for m in counts]
        closed = self.backend(Method.CLOSED)
        if closed.supports(family):
            reference = closed.evaluate(family, x).value
        else:
            reference = values[counts.index(max(counts))]
        return [QuadStudyRow(m, value, abs(value - reference)) for m, value in zip(counts, values)]


_DEFAULT_SERVICE = CoincidenceService()


def canonicalize(c: float, n: float, x: float) -> CanonicalForm:
    """Сводит (c, n, x) к BinomialAt, NegBinomialAt или PoissonAt."""

    return reduce_family(FamilySpec.general(c, n), x)


def ic_direct(family: FamilySpec, x: float, policy: TruncationPolicy = TruncationPolicy()) -> CoincidenceValue:
    """Сумма квадратов вероятностей усечённой строки."""

    return DirectBackend(policy).evaluate(family, x)


def ic_closed(family: FamilySpec, x: float, policy: TruncationPolicy = TruncationPolicy()) -> CoincidenceValue:
    """Явная формула семейства."""

    return ClosedFormBackend(policy).evaluate(family, x)


def ic_recurrence(family: FamilySpec, x: float) -> CoincidenceValue:
    """Прямой ход трёхчленной рекурренты."""

    return _DEFAULT_SERVICE.backend(Method.RECURRENCE).evaluate(family, x)


def ic_quadrature(
    family: Union[FamilySpec, float],
    x: float,
    m: Optional[int] = None,
    *,
    n: Optional[float] = None,
) -> CoincidenceValue:
    """Квадратура интегрального представления.

    Вместо семейства можно передать параметр c вместе с порядком n.
    """

    if not isinstance(family, FamilySpec):
        if n is None:
            raise ParameterError("при задании параметра c нужен порядок n")
        family = FamilySpec.general(float(family), n)
    return _DEFAULT_SERVICE.backend(Method.QUADRATURE).evaluate(family, x, nodes=m)


def ic_via_legendre(family: FamilySpec, x: float) -> CoincidenceValue:
    """Значение через многочлены Лежандра."""

    return _DEFAULT_SERVICE.backend(Method.LEGENDRE).evaluate(family, x)


def ic_auto(family: FamilySpec, x: float) -> CoincidenceValue:
    """Автоматический выбор метода с перекрёстной проверкой."""

    return _DEFAULT_SERVICE.auto(family, x)


def quad_study(family: FamilySpec, x: float, m_list: Iterable[int]) -> List[QuadStudyRow]:
    """Исследование сходимости квадратуры по списку числа узлов."""

    return _DEFAULT_SERVICE.quad_study(family, x, m_list)
