"""Тесты методов вычисления индекса совпадения и их согласованности."""

from __future__ import annotations

from fractions import Fraction
import logging
from math import comb
from pathlib import Path
import sys

import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import i0e

# NOTE[agent]: Добавляет корень проекта в путь импорта для unit-тестов.
sys.path.append(str(Path(__file__).resolve().parents[1]))

from coincidence_lab.errors import ConsistencyError, DomainError, ParameterError, UnsupportedMethodError
from coincidence_lab.models import EvalRequest, FamilySpec, Method, TruncationPolicy
from coincidence_lab.services.backends.closed_form import (
    closed_bbh,
    closed_binomial,
    closed_mkz,
    closed_negbinomial,
)
from coincidence_lab.services.backends.quadrature import chebyshev_gauss_rule
from coincidence_lab.services.coincidence import (
    CoincidenceService,
    ic_auto,
    ic_closed,
    ic_direct,
    ic_quadrature,
    ic_recurrence,
    ic_via_legendre,
    quad_study,
)
from coincidence_lab.services.inequality_lab import x_grid

BACKENDS = (Method.DIRECT, Method.CLOSED, Method.RECURRENCE, Method.QUADRATURE, Method.LEGENDRE)


def _exact_binomial(n: int, x: Fraction) -> Fraction:
    # сумма квадратов биномиальных вероятностей
    return sum((comb(n, k) * x**k * (1 - x) ** (n - k)) ** 2 for k in range(n + 1))


# NOTE[agent]: Точные рациональные значения из начальных условий рекуррент.
@pytest.mark.parametrize(
    ("family", "x", "expected"),
    [
        (FamilySpec.binomial(2), 0.25, Fraction(59, 128)),
        (FamilySpec.binomial(2), 0.5, Fraction(3, 8)),
        (FamilySpec.negbinomial(1), 1.0, Fraction(1, 3)),
        (FamilySpec.negbinomial(2), 1.0, Fraction(5, 27)),
        (FamilySpec.bbh(1), 1.0, Fraction(1, 2)),
        (FamilySpec.bbh(2), 1.0, Fraction(3, 8)),
        (FamilySpec.mkz(0), 1.0 / 3.0, Fraction(1, 2)),
    ],
)
def test_exact_spot_values(family: FamilySpec, x: float, expected: Fraction) -> None:
    """Явная формула, рекуррента и автоматический режим дают точные значения."""

    assert ic_closed(family, x).value == pytest.approx(float(expected), rel=1e-15)
    assert ic_recurrence(family, x).value == pytest.approx(float(expected), rel=1e-15)
    assert ic_auto(family, x).value == pytest.approx(float(expected), rel=1e-15)


@pytest.mark.parametrize("n", [1, 3, 7, 12, 25])
@pytest.mark.parametrize("x", [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(7, 8)])
def test_binomial_matches_rational_oracle(n: int, x: Fraction) -> None:
    """F_n совпадает с суммой квадратов в рациональной арифметике."""

    expected = float(_exact_binomial(n, x))

    assert ic_closed(FamilySpec.binomial(n), float(x)).value == pytest.approx(expected, rel=1e-13)
    assert ic_direct(FamilySpec.binomial(n), float(x)).value == pytest.approx(expected, rel=1e-13)


# NOTE[agent]: Пять методов должны согласоваться попарно на общей сетке.
@pytest.mark.parametrize(
    ("factory", "orders", "points"),
    [
        (FamilySpec.binomial, range(0, 13), (0.05, 0.3, 0.5, 0.8)),
        (FamilySpec.negbinomial, range(1, 13), (0.1, 0.7, 2.5)),
        (FamilySpec.bbh, range(0, 13), (0.1, 0.7, 2.5)),
        (FamilySpec.mkz, range(0, 13), (0.05, 0.3, 0.6, 0.9)),
    ],
)
def test_backends_agree(factory, orders, points) -> None:
    """direct, closed, recurrence, quadrature и legendre совпадают с точностью 1e-10."""

    service = CoincidenceService()
    for n in orders:
        family = factory(n)
        for x in points:
            reference = service.evaluate(family, x, Method.CLOSED).value
            for method in BACKENDS:
                value = service.evaluate(family, x, method).value
                assert value == pytest.approx(reference, rel=1e-10), (method, n, x)


def test_poisson_values() -> None:
    """K_1(0.5) по прямой сумме и K_n(0) = 1."""

    assert ic_direct(FamilySpec.poisson(1.0), 0.5).value == pytest.approx(0.4657596, abs=1e-7)
    for n in (1.0, 5.0, 10.0):
        assert ic_auto(FamilySpec.poisson(n), 0.0).value == 1.0


@pytest.mark.parametrize("n", [0.5, 1.0, 3.0, 10.0])
@pytest.mark.parametrize("x", [0.1, 0.5, 2.0, 7.5])
def test_poisson_matches_bessel_oracle(n: float, x: float) -> None:
    """K_n(x) = exp(-2nx) I_0(2nx)."""

    expected = float(i0e(2.0 * n * x))

    assert ic_direct(FamilySpec.poisson(n), x).value == pytest.approx(expected, rel=1e-12)
    assert ic_closed(FamilySpec.poisson(n), x).value == pytest.approx(expected, rel=1e-12)


def test_auto_reports_primary_method() -> None:
    """Метка метода в автоматическом режиме принадлежит основному методу."""

    assert ic_auto(FamilySpec.binomial(4), 0.3).method is Method.CLOSED
    assert ic_auto(FamilySpec.poisson(2.0), 0.3).method is Method.DIRECT
    assert ic_auto(FamilySpec.general(0.5, 0.75), 0.3).method is Method.QUADRATURE


def test_auto_raises_on_disagreement(monkeypatch: pytest.MonkeyPatch) -> None:
    """Расхождение основного и контрольного методов приводит к ConsistencyError."""

    service = CoincidenceService()
    backend = service.backend(Method.RECURRENCE)
    monkeypatch.setattr(backend, "_evaluate", lambda family, x, nodes: (0.5, 0.0))

    with pytest.raises(ConsistencyError):
        service.auto(FamilySpec.binomial(2), 0.25)


def test_auto_error_estimate_covers_discrepancy() -> None:
    """Оценка погрешности не меньше наблюдённого расхождения методов."""

    service = CoincidenceService()
    family = FamilySpec.general(0.5, 0.75)
    value = service.auto(family, 1.3)
    direct = service.evaluate(family, 1.3, Method.DIRECT)

    assert value.err_estimate >= abs(value.value - direct.value)


def test_canonical_general_values() -> None:
    """S_{4,-2}(0.125) = F_2(0.25), S_{2,2}(0.5) = G_1(1)."""

    assert ic_auto(FamilySpec.general(-2.0, 4.0), 0.125).value == pytest.approx(0.4609375, rel=1e-15)
    assert ic_auto(FamilySpec.general(2.0, 2.0), 0.5).value == pytest.approx(1.0 / 3.0, rel=1e-14)


def test_zero_point_is_one_for_every_backend() -> None:
    """При x = 0 все методы возвращают 1."""

    service = CoincidenceService()
    for family in (FamilySpec.binomial(5), FamilySpec.negbinomial(3), FamilySpec.bbh(2), FamilySpec.mkz(4)):
        for method in BACKENDS:
            assert service.evaluate(family, 0.0, method).value == 1.0


def test_method_errors() -> None:
    """Неприменимый метод, лишние узлы и точка вне области."""

    service = CoincidenceService()
    with pytest.raises(UnsupportedMethodError):
        service.evaluate(FamilySpec.poisson(1.0), 0.5, Method.RECURRENCE)
    with pytest.raises(UnsupportedMethodError):
        service.evaluate(FamilySpec.poisson(1.0), 0.5, Method.QUADRATURE)
    with pytest.raises(UnsupportedMethodError):
        service.evaluate(FamilySpec.general(0.5, 0.75), 0.5, Method.CLOSED)
    with pytest.raises(ParameterError):
        service.evaluate(FamilySpec.binomial(2), 0.5, Method.CLOSED, nodes=8)
    with pytest.raises(DomainError):
        service.evaluate(FamilySpec.binomial(2), 1.2, Method.DIRECT)


def test_evaluate_request_uses_its_policy() -> None:
    """Политика усечения запроса применяется к вычислению."""

    service = CoincidenceService()
    request = EvalRequest(
        family=FamilySpec.negbinomial(2),
        x=1.0,
        method=Method.DIRECT,
        policy=TruncationPolicy(rel_tol=1e-15),
    )

    assert service.evaluate_request(request).value == pytest.approx(5.0 / 27.0, rel=1e-14)


def test_quadrature_rule() -> None:
    """Узлы в (0, 1), веса равны pi/m."""

    rule = chebyshev_gauss_rule(5)

    assert rule.m == 5
    assert all(0.0 < t < 1.0 for t in rule.nodes)
    assert len(set(rule.weights)) == 1


@pytest.mark.parametrize("x", [0.1, 0.3, 0.45])
def test_quadrature_is_exact_for_binomial(x: float) -> None:
    """floor(n/2)+1 узлов интегрируют многочлен степени n точно."""

    for n in range(31):
        family = FamilySpec.binomial(n)
        value = ic_quadrature(family, x, n // 2 + 1).value
        assert value == pytest.approx(ic_closed(family, x).value, rel=1e-13)


def test_quadrature_accepts_parameter_c() -> None:
    """ic_quadrature принимает пару (c, n) вместо семейства."""

    value = ic_quadrature(-1.0, 0.3, n=4).value

    assert value == pytest.approx(closed_binomial(4, 0.3).value, rel=1e-13)
    with pytest.raises(ParameterError):
        ic_quadrature(-1.0, 0.3)


def test_quad_study_binomial_exact_from_four_nodes() -> None:
    """Для F_6 ошибка исчезает начиная с m = 4."""

    rows = quad_study(FamilySpec.binomial(6), 0.3, [2, 3, 4, 5])

    assert [row.m for row in rows] == [2, 3, 4, 5]
    assert rows[0].error > 1e-8
    assert all(row.error < 1e-14 for row in rows[2:])


def test_quad_study_negbinomial_converges() -> None:
    """Ошибки для G_3(1) убывают, пока не достигнут уровня округления."""

    rows = quad_study(FamilySpec.negbinomial(3), 1.0, [8, 16, 32, 64])
    errors = [row.error for row in rows]

    assert errors[0] > errors[1] > 0.0
    for previous, following in zip(errors, errors[1:]):
        assert following < previous or previous < 1e-15


def test_quad_study_reference_without_closed_form() -> None:
    """Без явной формулы эталоном служит значение с наибольшим m."""

    rows = quad_study(FamilySpec.general(0.5, 0.75), 0.4, [64, 16, 32])

    assert rows[0].error == 0.0
    assert all(row.error < 1e-12 for row in rows)


def test_legendre_chart_near_pole() -> None:
    """Карта Лежандра для F_n около x = 1/2 совпадает с явной формулой."""

    for n in (10, 40, 200):
        for x in (0.49, 0.4999999, 0.5):
            assert ic_via_legendre(FamilySpec.binomial(n), x).value == pytest.approx(
                ic_closed(FamilySpec.binomial(n), x).value, rel=1e-10
            )


@settings(max_examples=50, deadline=None)
@given(n=st.integers(min_value=0, max_value=30), x=st.floats(min_value=0.0, max_value=1.0))
def test_binomial_symmetry(n: int, x: float) -> None:
    """F_n(x) = F_n(1-x) и 0 < F_n <= 1."""

    value = closed_binomial(n, x).value

    assert 0.0 < value <= 1.0 + 1e-15
    assert value == pytest.approx(closed_binomial(n, 1.0 - x).value, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(min_value=0, max_value=30), x=st.floats(min_value=0.0, max_value=0.9))
def test_bbh_and_mkz_reductions(n: int, x: float) -> None:
    """U_n(x) = F_n(x/(1+x)) и J_n(x) = G_(n+1)(x/(1-x))."""

    assert closed_bbh(n, x).value == pytest.approx(closed_binomial(n, x / (1.0 + x)).value, rel=1e-11)
    assert closed_mkz(n, x).value == pytest.approx(closed_negbinomial(n + 1, x / (1.0 - x)).value, rel=1e-11)


# NOTE[agent]: Полная сетка: порядки до 40, 99 точек x по области семейства.
@pytest.mark.parametrize(
    ("factory", "first_order"),
    [(FamilySpec.binomial, 0), (FamilySpec.negbinomial, 1), (FamilySpec.bbh, 0), (FamilySpec.mkz, 0)],
)
def test_backends_agree_on_full_grid(factory, first_order: int) -> None:
    """Пять методов согласованы для n <= 40 на 99 точках."""

    service = CoincidenceService()
    points = x_grid(factory(first_order).domain, 99)
    for n in range(first_order, 41):
        family = factory(n)
        for x in points:
            reference = service.evaluate(family, x, Method.CLOSED).value
            for method in BACKENDS:
                value = service.evaluate(family, x, method).value
                assert value == pytest.approx(reference, rel=1e-10), (method, n, x)


@pytest.mark.parametrize(("n", "y"), [(300, 10.0), (200, 50.0), (1000, 3.0)])
def test_legendre_chart_large_negbinomial_orders(n: int, y: float) -> None:
    """Для больших n и y карта G_n не переполняется и совпадает с явной формулой."""

    family = FamilySpec.negbinomial(n)
    value = ic_via_legendre(family, y)

    assert value.method is Method.LEGENDRE
    assert value.value == pytest.approx(ic_closed(family, y).value, rel=1e-10)


def test_binomial_fallback_is_logged_as_warning(caplog: pytest.LogCaptureFixture) -> None:
    """Переход к положительной форме F_n виден в журнале на уровне WARNING."""

    with caplog.at_level(logging.WARNING, logger="coincidence_lab"):
        value = closed_binomial(60, 0.5).value

    assert value == pytest.approx(comb(120, 60) / 4**60, rel=1e-12)
    assert any(
        record.levelno == logging.WARNING and "положительной форме" in record.getMessage()
        for record in caplog.records
    )
