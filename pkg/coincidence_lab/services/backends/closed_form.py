"""Явные формулы для F_n, G_n, U_n, J_n и ряд для K_n."""

from __future__ import annotations

import logging
import math
import sys
from math import comb
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.special import gammaln, xlogy
from scipy.stats import binom

from ...errors import DomainError, ParameterError
from ...models import FamilySpec, FamilyTag, Method, TruncationPolicy, as_integer
from ..pmf import truncate_series
from ..summation import CompensatedSum
from .base import BaseBackend, has_integer_canonical_order, resolve_general


logger = logging.getLogger(__name__)

_EPS = sys.float_info.epsilon

# NOTE[agent]: Порог числа обусловленности знакопеременной суммы для F_n.
ALTERNATING_CONDITION_LIMIT = 1e3


class SeriesValue(NamedTuple):
    """Значение конечной или усечённой суммы и оценка её погрешности."""

    value: float
    err_estimate: float


def _require_order(n: int, minimum: int, symbol: str) -> int:
    order = as_integer(n)
    if order is None or order < minimum:
        raise ParameterError(f"{symbol}_n: порядок должен быть целым >= {minimum}, получено {n!r}")
    return order


def central_ratio(k: int) -> float:
    """C(2k, k)/4^k, вычисленное делением целых."""

    return comb(2 * k, k) / 4**k


def _positive_sum(terms) -> SeriesValue:
    total = math.fsum(terms)
    return SeriesValue(total, (len(terms) + 1) * _EPS * abs(total))


def closed_binomial(n: int, x: float) -> SeriesValue:
    """F_n(x) = sum (-1)^k C(n,k) C(2k,k) (x(1-x))^k.

    Знакопеременная сумма складывается с компенсацией. Если её число
    обусловленности больше ALTERNATING_CONDITION_LIMIT или коэффициенты не
    помещаются в float, используется положительная форма
    F_n = E[C(2K,K)/4^K] для K ~ Binomial(n, 4x(1-x)).
    """

    order = _require_order(n, 0, "F")
    q = 4.0 * x * (1.0 - x)
    accumulator = CompensatedSum()
    try:
        for k in range(order + 1):
            term = comb(order, k) * central_ratio(k) * q**k
            accumulator.add(-term if k % 2 else term)
        condition = accumulator.condition
    except OverflowError:
        condition = math.inf
    if condition <= ALTERNATING_CONDITION_LIMIT:
        value = accumulator.value
        return SeriesValue(value, condition * (order + 1) * _EPS * abs(value))

    logger.warning(
        "F_%d(%r): обусловленность %.3e, переход к положительной форме", order, x, condition
    )
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"положительная форма F_n требует x из [0, 1], получено {x!r}")
    k = np.arange(order + 1)
    weights = binom.pmf(k, order, q)
    coefficients = np.array([central_ratio(int(j)) for j in k])
    return _positive_sum((weights * coefficients).tolist())


def closed_negbinomial(n: int, x: float) -> SeriesValue:
    """G_n(x) = 4^{1-n} sum_{k<n} C(2k,k) C(2n-2k-2, n-k-1) (2x+1)^{-2k-1}.

    Формула рациональна по x и используется также при -1/2 < x < 0.
    """

    order = _require_order(n, 1, "G")
    base = 2.0 * x + 1.0
    if base <= 0.0:
        raise DomainError(f"G_n(x) определено при x > -1/2, получено {x!r}")
    r = 1.0 / base
    scale = 4 ** (order - 1)
    terms = [
        comb(2 * k, k) * comb(2 * order - 2 * k - 2, order - k - 1) / scale * r ** (2 * k + 1)
        for k in range(order)
    ]
    return _positive_sum(terms)


def closed_bbh(n: int, x: float) -> SeriesValue:
    """U_n(x) = sum C(2n,n) C(n,k)^2 / (C(2n,2k) 4^n) ((x-1)/(x+1))^{2k}."""

    order = _require_order(n, 0, "U")
    if x == -1.0:
        raise DomainError("U_n(x) не определено при x = -1")
    w = ((x - 1.0) / (x + 1.0)) ** 2
    numerator = comb(2 * order, order)
    scale = 4**order
    terms = [
        numerator * comb(order, k) ** 2 / (comb(2 * order, 2 * k) * scale) * w**k
        for k in range(order + 1)
    ]
    return _positive_sum(terms)


def closed_mkz(n: int, x: float) -> SeriesValue:
    """J_n(x) = 4^{-n} sum C(2k,k) C(2n-2k, n-k) ((1-x)/(1+x))^{2k+1}.

    При x < -1 все члены одного знака, и формула даёт отрицательное
    значение; так она используется в тождестве для (x-1)/x.
    """

    order = _require_order(n, 0, "J")
    if x == -1.0:
        raise DomainError("J_n(x) не определено при x = -1")
    r = (1.0 - x) / (1.0 + x)
    scale = 4**order
    terms = [
        comb(2 * k, k) * comb(2 * order - 2 * k, order - k) / scale * r ** (2 * k + 1)
        for k in range(order + 1)
    ]
    total = math.fsum(terms)
    return SeriesValue(total, (order + 2) * _EPS * abs(total))


def closed_poisson(n: float, x: float, policy: TruncationPolicy = TruncationPolicy()) -> SeriesValue:
    """K_n(x) = e^{-2nx} sum (nx)^{2k}/(k!)^2, члены считаются в логарифмах."""

    rate = n * x
    if rate < 0.0 or not math.isfinite(rate):
        raise DomainError(f"K_n(x) требует nx >= 0, получено {rate!r}")
    if rate == 0.0:
        return SeriesValue(1.0, 0.0)
    row = truncate_series(
        lambda k: xlogy(2.0 * k, rate) - 2.0 * gammaln(k + 1.0) - 2.0 * rate,
        0.0,
        policy,
        f"K_{n:g}({x!r})",
    )
    total = math.fsum(row.probabilities.tolist())
    return SeriesValue(total, row.tail_bound + row.probabilities.size * _EPS * total)


# Формула по тегу канонического семейства.
_CLOSED_FORMS = {
    FamilyTag.BINOMIAL: closed_binomial,
    FamilyTag.NEG_BINOMIAL: closed_negbinomial,
    FamilyTag.BBH: closed_bbh,
    FamilyTag.MKZ: closed_mkz,
}


class ClosedFormBackend(BaseBackend):
    """Конечные суммы для целых порядков и быстро сходящийся ряд для Пуассона."""

    method = Method.CLOSED

    def supports(self, family: FamilySpec) -> bool:
        return has_integer_canonical_order(family)

    def unsupported_reason(self, family: FamilySpec) -> str:
        return f"явная формула требует целого порядка, а у {family.describe()} он дробный"

    def _evaluate(self, family: FamilySpec, x: float, nodes: Optional[int]) -> Tuple[float, float]:
        canonical, y = resolve_general(family, x)
        if canonical.tag is FamilyTag.POISSON:
            return closed_poisson(canonical.n, y, self.policy)
        formula = _CLOSED_FORMS[canonical.tag]
        return formula(canonical.integer_order, y)
