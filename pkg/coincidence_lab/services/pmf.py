"""Базисные вероятности p_{n,k}^{[c]}(x) и усечённые строки распределений."""

from __future__ import annotations

import logging
import math
from typing import Callable, List, NamedTuple

import numpy as np
from scipy.special import betaln, gammaln, xlog1py, xlogy

from ..errors import ParameterError, TruncationError
from ..models import CanonicalForm, CanonicalKind, FamilySpec, FamilyTag, TruncationPolicy


logger = logging.getLogger(__name__)

# NOTE[agent]: Первый блок членов бесконечной строки; далее размер блока удваивается.
_FIRST_CHUNK = 256


class PmfRow(NamedTuple):
    """Усечённая строка вероятностей и оценка отброшенной массы сверху."""

    probabilities: np.ndarray
    tail_bound: float


def general_binomial_coefficient(alpha: float, k: int) -> float:
    """Обобщённый биномиальный коэффициент alpha(alpha-1)...(alpha-k+1)/k!."""

    if k < 0 or int(k) != k:
        raise ParameterError(f"k должен быть неотрицательным целым, получено {k!r}")
    result = 1.0
    for j in range(int(k)):
        result *= (alpha - j) / (j + 1)
    return result


# NOTE[agent]: Все семейства сводятся к биномиальному, пуассоновскому или отрицательному биномиальному.
def reduce_family(family: FamilySpec, x: float) -> CanonicalForm:
    """Возвращает каноническую форму распределения семейства в точке x.

    BBH сводится к биномиальному распределению в точке x/(1+x), MKZ к
    отрицательному биномиальному порядка n+1 в точке x/(1-x), общий c к
    одному из трёх базовых семейств заменой y = |c| x.
    """

    family.require_in_domain(x)
    c = family.family_c
    if family.tag is FamilyTag.BBH:
        return CanonicalForm(kind=CanonicalKind.BINOMIAL, order=family.n, y=x / (1.0 + x))
    if family.tag is FamilyTag.MKZ:
        return CanonicalForm(kind=CanonicalKind.NEG_BINOMIAL, order=family.n + 1.0, y=x / (1.0 - x))
    if c is None:
        raise ParameterError(f"семейство {family.describe()} не задаёт параметр c")
    if c < 0:
        y = min(-c * x, 1.0)
        return CanonicalForm(kind=CanonicalKind.BINOMIAL, order=float(family.steps), y=y)
    if c == 0:
        return CanonicalForm(kind=CanonicalKind.POISSON, order=family.n, y=x)
    return CanonicalForm(kind=CanonicalKind.NEG_BINOMIAL, order=family.n / c, y=c * x)


def log_probabilities(form: CanonicalForm, k: np.ndarray) -> np.ndarray:
    """Логарифмы вероятностей канонической формы для массива номеров k."""

    k = np.asarray(k, dtype=float)
    order, y = form.order, form.y
    with np.errstate(divide="ignore", invalid="ignore"):
        if form.kind is CanonicalKind.BINOMIAL:
            inside = k <= order
            kk = np.where(inside, k, 0.0)
            combiln = -math.log(order + 1.0) - betaln(order - kk + 1.0, kk + 1.0)
            result = combiln + xlogy(kk, y) + xlog1py(order - kk, -y)
            return np.where(inside, result, -np.inf)
        if form.kind is CanonicalKind.NEG_BINOMIAL:
            coeff = gammaln(order + k) - gammaln(k + 1.0) - gammaln(order)
            return coeff + xlogy(k, y) - (order + k) * math.log1p(y)
        rate = order * y
        return xlogy(k, rate) - gammaln(k + 1.0) - rate


def basis_probability(family: FamilySpec, k: int, x: float) -> float:
    """Вероятность p_{n,k}^{[c]}(x), вычисленная через логарифм."""

    if k < 0 or int(k) != k:
        raise ParameterError(f"k должен быть неотрицательным целым, получено {k!r}")
    form = reduce_family(family, x)
    value = math.exp(float(log_probabilities(form, np.array([float(k)]))[0]))
    return min(value, 1.0)


def _asymptotic_ratio(form: CanonicalForm) -> float:
    """Предел отношения p_{k+1}/p_k при k -> inf."""

    if form.kind is CanonicalKind.NEG_BINOMIAL:
        return form.y / (1.0 + form.y)
    return 0.0


def _read_only(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


# NOTE[agent]: Общий механизм усечения для строк вероятностей и ряда (1.5).
def truncate_series(
    log_terms: Callable[[np.ndarray], np.ndarray],
    asymptotic_ratio: float,
    policy: TruncationPolicy,
    label: str,
) -> PmfRow:
    """Суммирует положительный ряд с монотонным отношением соседних членов.

    Ряд обрывается на первом k, где r = max(a_k/a_{k-1}, asymptotic_ratio) < 1
    и a_k/(1-r) < rel_tol * (накопленная сумма); отброшенный хвост оценивается
    сверху геометрической прогрессией a_k r/(1-r). Члены считаются блоками,
    размер блока удваивается.

    tail_bound оценивает только отброшенную массу. Каждый член получен через
    exp(log a_k) с абсолютной ошибкой логарифма порядка eps*|log-слагаемых|,
    поэтому сумма строки плюс хвост отличается от 1 ещё на величину до
    ~1e-13 при больших интенсивностях (около 2.5e-14 для K_3 при x=19.4).

    Raises:
        TruncationError: критерий не выполнился за policy.max_terms членов.
    """

    blocks: List[np.ndarray] = []
    accumulated = 0.0
    previous = 0.0
    start = 0
    size = _FIRST_CHUNK
    while start < policy.max_terms:
        stop = min(start + size, policy.max_terms)
        terms = np.exp(log_terms(np.arange(start, stop, dtype=float)))
        before = np.concatenate(([previous], terms[:-1]))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(before > 0.0, terms / before, np.inf)
        if start == 0:
            ratio[0] = np.inf
        ratio = np.maximum(ratio, asymptotic_ratio)
        running = accumulated + np.cumsum(terms)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail_ok = (ratio < 1.0) & (terms / (1.0 - ratio) < policy.rel_tol * running)
        hits = np.flatnonzero(tail_ok)
        if hits.size:
            cut = int(hits[0])
            blocks.append(terms[: cut + 1])
            r = float(ratio[cut])
            tail_bound = float(terms[cut]) * r / (1.0 - r)
            row = np.concatenate(blocks)
            logger.debug("Ряд %s усечён на %d членах, хвост <= %.3e", label, row.size, tail_bound)
            return PmfRow(_read_only(row), tail_bound)
        blocks.append(terms)
        accumulated = float(running[-1])
        previous = float(terms[-1])
        start = stop
        size *= 2

    logger.warning("Ряд %s не усечён за %d членов", label, policy.max_terms)
    raise TruncationError(f"ряд {label} не сошёлся за max_terms={policy.max_terms}")


def pmf_row(family: FamilySpec, x: float, policy: TruncationPolicy = TruncationPolicy()) -> PmfRow:
    """Строка вероятностей семейства в точке x.

    Для конечных распределений строка точная и tail_bound = 0, для
    бесконечных она усекается правилом truncate_series.
    """

    form = reduce_family(family, x)
    if form.y == 0.0:
        return PmfRow(_read_only(np.array([1.0])), 0.0)
    if form.kind is CanonicalKind.BINOMIAL:
        k = np.arange(int(round(form.order)) + 1, dtype=float)
        return PmfRow(_read_only(np.exp(log_probabilities(form, k))), 0.0)
    return truncate_series(
        lambda k: log_probabilities(form, k),
        _asymptotic_ratio(form),
        policy,
        f"{family.describe()} при x={x!r}",
    )
