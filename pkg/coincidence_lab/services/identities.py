"""Тождества между F_n, G_n, U_n, J_n и многочленами Лежандра."""

from __future__ import annotations

import logging
from typing import Callable, Iterator, List, NamedTuple, Tuple

from ..errors import ParameterError
from ..models import FamilySpec, IdentityReport, TruncationPolicy
from .backends.closed_form import closed_bbh, closed_binomial, closed_mkz, closed_negbinomial
from .backends.direct import DirectBackend
from .coincidence import relative_discrepancy
from .legendre import legendre_eval, legendre_map


logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
CANONICAL_BINOMIAL_C = (-2.0, -0.5)
CANONICAL_NEGBINOMIAL_C = (0.5, 2.0)

# Точка проверки: порядок, x и две стороны тождества.
Sample = Tuple[float, float, float, float]
Sampler = Callable[[int, int], Iterator[Sample]]


def interior_grid(lower: float, upper: float, points: int) -> List[float]:
    """points внутренних точек, делящих (lower, upper) на равные части."""

    step = (upper - lower) / (points + 1)
    return [lower + step * j for j in range(1, points + 1)]


def _binomial_vs_negbinomial(n_max: int, points: int) -> Iterator[Sample]:
    # F_n(x) = (1-2x)^{2n+1} G_{n+1}(-x)
    for x in interior_grid(0.0, 0.5, points):
        for n in range(n_max + 1):
            left = closed_binomial(n, x).value
            right = (1.0 - 2.0 * x) ** (2 * n + 1) * closed_negbinomial(n + 1, -x).value
            yield n, x, left, right


def _binomial_vs_bbh(n_max: int, points: int) -> Iterator[Sample]:
    # F_n(x) = U_n(x/(1-x))
    for x in interior_grid(0.0, 1.0, points):
        for n in range(n_max + 1):
            yield n, x, closed_binomial(n, x).value, closed_bbh(n, x / (1.0 - x)).value


def _binomial_vs_mkz(n_max: int, points: int) -> Iterator[Sample]:
    # F_n(x) = -(1-2x)^{2n+1} J_n((x-1)/x)
    for x in interior_grid(0.0, 0.5, points):
        for n in range(n_max + 1):
            right = -((1.0 - 2.0 * x) ** (2 * n + 1)) * closed_mkz(n, (x - 1.0) / x).value
            yield n, x, closed_binomial(n, x).value, right


def _mkz_vs_bbh(n_max: int, points: int) -> Iterator[Sample]:
    # J_n(x) = ((1-x)/(1+x)) U_n(x)
    for x in interior_grid(0.0, 1.0, points):
        for n in range(n_max + 1):
            right = (1.0 - x) / (1.0 + x) * closed_bbh(n, x).value
            yield n, x, closed_mkz(n, x).value, right


def _legendre_forms(n_max: int, points: int) -> Iterator[Sample]:
    # F_n(x), G_{n+1}(-x), U_n(x/(1-x)), -J_n((x-1)/x) через (1-2x)^{+-} P_n(t)
    for x in interior_grid(0.0, 0.5, points):
        t = legendre_map(x)
        s = 1.0 - 2.0 * x
        for n in range(n_max + 1):
            p = legendre_eval(n, t)
            yield n, x, closed_binomial(n, x).value, s**n * p
            yield n, x, closed_negbinomial(n + 1, -x).value, p / s ** (n + 1)
            yield n, x, closed_bbh(n, x / (1.0 - x)).value, s**n * p
            yield n, x, closed_mkz(n, (x - 1.0) / x).value, -p / s ** (n + 1)


def _canonical_binomial(n_max: int, points: int) -> Iterator[Sample]:
    # S_{-cl,c}(x) = F_l(-cx)
    direct = DirectBackend(TruncationPolicy())
    for c in CANONICAL_BINOMIAL_C:
        for x in interior_grid(0.0, -1.0 / c, points):
            for steps in range(1, n_max + 1):
                family = FamilySpec.general(c, -c * steps)
                yield family.n, x, direct.evaluate(family, x).value, closed_binomial(steps, -c * x).value


def _canonical_negbinomial(n_max: int, points: int) -> Iterator[Sample]:
    # S_{cm,c}(x) = G_m(cx)
    direct = DirectBackend(TruncationPolicy())
    for c in CANONICAL_NEGBINOMIAL_C:
        for x in interior_grid(0.0, 1.0, points):
            for order in range(1, n_max + 1):
                family = FamilySpec.general(c, c * order)
                yield family.n, x, direct.evaluate(family, x).value, closed_negbinomial(order, c * x).value


class _Identity(NamedTuple):
    identity_id: str
    title: str
    sampler: Sampler


IDENTITIES: Tuple[_Identity, ...] = (
    _Identity("2.1", "F_n(x) = (1-2x)^(2n+1) G_(n+1)(-x)", _binomial_vs_negbinomial),
    _Identity("2.2", "F_n(x) = U_n(x/(1-x))", _binomial_vs_bbh),
    _Identity("2.3", "F_n(x) = -(1-2x)^(2n+1) J_n((x-1)/x)", _binomial_vs_mkz),
    _Identity("2.16", "J_n(x) = ((1-x)/(1+x)) U_n(x)", _mkz_vs_bbh),
    _Identity("2.5-2.8", "F, G, U, J через (1-2x)^(+-n) P_n(t)", _legendre_forms),
    _Identity("canonical-binomial", "S_(-cl,c)(x) = F_l(-cx)", _canonical_binomial),
    _Identity("canonical-negbinomial", "S_(cm,c)(x) = G_m(cx)", _canonical_negbinomial),
)


def identity_ids() -> Tuple[str, ...]:
    """Идентификаторы тождеств в порядке проверки."""

    return tuple(identity.identity_id for identity in IDENTITIES)


def check_identities(
    n_max: int = 20,
    x_points: int = 49,
    tolerance: float = DEFAULT_TOLERANCE,
) -> List[IdentityReport]:
    """Наибольшее относительное отклонение по каждому тождеству.

    Raises:
        ParameterError: n_max < 1, x_points < 2 или tolerance <= 0.
    """

    if n_max < 1:
        raise ParameterError(f"n_max должен быть >= 1, получено {n_max!r}")
    if x_points < 2:
        raise ParameterError(f"x_points должен быть >= 2, получено {x_points!r}")
    if not tolerance > 0:
        raise ParameterError(f"допуск должен быть положительным, получено {tolerance!r}")

    reports: List[IdentityReport] = []
    for identity in IDENTITIES:
        worst = (0.0, None, None)
        count = 0
        for n, x, left, right in identity.sampler(n_max, x_points):
            count += 1
            deviation = relative_discrepancy(left, right)
            if deviation > worst[0]:
                worst = (deviation, n, x)
        reports.append(
            IdentityReport(
                identity_id=identity.identity_id,
                title=identity.title,
                points=count,
                max_deviation=worst[0],
                worst_n=worst[1],
                worst_x=worst[2],
                tolerance=tolerance,
            )
        )
    failed = [report.identity_id for report in reports if not report.passed]
    logger.info("Проверено %d тождеств, не выполнены: %s", len(reports), ", ".join(failed) or "нет")
    return reports
