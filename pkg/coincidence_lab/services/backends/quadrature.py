"""Квадратура Гаусса–Чебышёва для интегральных представлений индексов."""

from __future__ import annotations

import logging
import math
import threading
from typing import NamedTuple, Optional, Tuple

import numpy as np
from cachetools import LRUCache, cached
from numpy.polynomial.chebyshev import chebgauss

from ...errors import ParameterError, UnsupportedMethodError
from ...models import FamilySpec, FamilyTag, Method, QuadratureRule, TruncationPolicy, as_integer
from .base import BaseBackend


logger = logging.getLogger(__name__)

DEFAULT_MIN_NODES = 16
DEFAULT_START_NODES = 64
DEFAULT_MAX_NODES = 2**20
DEFAULT_REL_TOL = 1e-13


# NOTE[agent]: Узлы не зависят от семейства; массивы только для чтения, поэтому кеш можно делить между потоками.
@cached(LRUCache(maxsize=64), lock=threading.RLock())
def node_array(m: int) -> np.ndarray:
    """Узлы t_j = (1 + cos((2j-1)pi/(2m)))/2 правила с m узлами."""

    if m < 1:
        raise ParameterError(f"число узлов должно быть >= 1, получено {m!r}")
    roots, _ = chebgauss(m)
    nodes = (1.0 + roots) / 2.0
    nodes.setflags(write=False)
    return nodes


def chebyshev_gauss_rule(m: int) -> QuadratureRule:
    """Правило с m узлами и равными весами pi/m."""

    nodes = node_array(m)
    return QuadratureRule(m=m, nodes=tuple(nodes.tolist()), weights=(math.pi / m,) * m)


class Integrand(NamedTuple):
    """Подынтегральная функция q(t) = (t + (1-t) base)^power."""

    base: float
    power: float

    @property
    def degree(self) -> Optional[int]:
        """Степень многочлена по t или None, если q не многочлен."""

        order = as_integer(self.power)
        if order is None or order < 0:
            return None
        return order

    def integrate(self, m: int) -> float:
        """(1/m) sum q(t_j) по правилу с m узлами."""

        t = node_array(m)
        values = np.power(t + (1.0 - t) * self.base, self.power)
        return math.fsum(values.tolist()) / m


def integrand_for(family: FamilySpec, x: float) -> Integrand:
    """Подынтегральная функция семейства в точке x.

    Raises:
        UnsupportedMethodError: для c = 0 интегрального представления нет.
    """

    tag = family.tag
    if tag is FamilyTag.BINOMIAL:
        return Integrand((1.0 - 2.0 * x) ** 2, family.n)
    if tag is FamilyTag.BBH:
        return Integrand(((1.0 - x) / (1.0 + x)) ** 2, family.n)
    if tag is FamilyTag.NEG_BINOMIAL:
        return Integrand((1.0 + 2.0 * x) ** 2, -family.n)
    if tag is FamilyTag.MKZ:
        return Integrand(((1.0 + x) / (1.0 - x)) ** 2, -(family.n + 1.0))
    c = family.family_c
    if not c:
        raise UnsupportedMethodError("для распределения Пуассона интегральное представление не задано")
    power = float(family.steps) if c < 0 else -family.n / c
    return Integrand((1.0 + 2.0 * c * x) ** 2, power)


class QuadratureBackend(BaseBackend):
    """Интегралы (1/pi) int q(t) dt / sqrt(t(1-t)) по правилу Гаусса–Чебышёва.

    Многочленные подынтегральные функции интегрируются точно на
    max(min_nodes, ceil(deg/2) + 2) узлах. Для остальных число узлов
    удваивается, начиная со start_nodes, пока два соседних значения не
    совпадут с относительной точностью rel_tol или не будет достигнут
    max_nodes. Оценка погрешности равна |v_m - v_2m|.
    """

    method = Method.QUADRATURE

    def __init__(
        self,
        policy: TruncationPolicy = TruncationPolicy(),
        *,
        min_nodes: int = DEFAULT_MIN_NODES,
        start_nodes: int = DEFAULT_START_NODES,
        max_nodes: int = DEFAULT_MAX_NODES,
        rel_tol: float = DEFAULT_REL_TOL,
    ) -> None:
        super().__init__(policy)
        if not 1 <= min_nodes <= max_nodes or not 1 <= start_nodes <= max_nodes:
            raise ParameterError("границы числа узлов квадратуры заданы неверно")
        self._min_nodes = min_nodes
        self._start_nodes = start_nodes
        self._max_nodes = max_nodes
        self._rel_tol = rel_tol

    def supports(self, family: FamilySpec) -> bool:
        return family.family_c != 0

    def unsupported_reason(self, family: FamilySpec) -> str:
        return "для распределения Пуассона интегральное представление не задано"

    def nodes_for(self, integrand: Integrand) -> Optional[int]:
        """Число узлов для точного интегрирования многочлена или None."""

        degree = integrand.degree
        if degree is None:
            return None
        return max(self._min_nodes, math.ceil(degree / 2) + 2)

    def _evaluate(self, family: FamilySpec, x: float, nodes: Optional[int]) -> Tuple[float, float]:
        integrand = integrand_for(family, x)
        if nodes is not None:
            if nodes < 1:
                raise ParameterError(f"число узлов должно быть >= 1, получено {nodes!r}")
            value = integrand.integrate(nodes)
            return value, abs(value - integrand.integrate(2 * nodes))

        exact_nodes = self.nodes_for(integrand)
        if exact_nodes is not None:
            value = integrand.integrate(exact_nodes)
            logger.debug("Многочлен степени %d: %d узлов", integrand.degree, exact_nodes)
            return value, abs(value - integrand.integrate(2 * exact_nodes))

        m = self._start_nodes
        coarse = integrand.integrate(m)
        while True:
            fine = integrand.integrate(2 * m)
            difference = abs(coarse - fine)
            if difference <= self._rel_tol * abs(fine):
                logger.debug("Квадратура %s сошлась на %d узлах", family.describe(), 2 * m)
                return fine, difference
            if 2 * m >= self._max_nodes:
                logger.warning(
                    "Квадратура %s при x=%r достигла %d узлов, расхождение %.3e",
                    family.describe(),
                    x,
                    2 * m,
                    difference,
                )
                return fine, difference
            m *= 2
            coarse = fine
