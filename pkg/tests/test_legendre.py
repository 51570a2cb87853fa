"""Тесты многочленов Лежандра и отображения x -> t."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from pathlib import Path
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# NOTE[agent]: Добавляет корень проекта в путь импорта для unit-тестов.
sys.path.append(str(Path(__file__).resolve().parents[1]))

from coincidence_lab.errors import DomainError, ParameterError
from coincidence_lab.services.legendre import (
    legendre_argument,
    legendre_damped,
    legendre_eval,
    legendre_map,
    legendre_scaled,
    legendre_sequence,
)


def _exact_legendre(n: int, t: Fraction) -> Fraction:
    # P_n(t) = sum C(n,k)^2 ((t-1)/2)^k ((t+1)/2)^(n-k)
    low, high = (t - 1) / 2, (t + 1) / 2
    return sum(comb(n, k) ** 2 * low**k * high ** (n - k) for k in range(n + 1))


def test_value_at_one_is_exact() -> None:
    """P_n(1) = 1 без погрешности округления."""

    assert all(legendre_eval(n, 1.0) == 1.0 for n in range(21))
    assert legendre_sequence(20, 1.0) == [1.0] * 21


@pytest.mark.parametrize("t", [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(11, 4)])
def test_matches_exact_sum_form(t: Fraction) -> None:
    """Рекуррента согласуется с точной суммой в рациональной арифметике."""

    for n in range(16):
        assert legendre_eval(n, float(t)) == pytest.approx(float(_exact_legendre(n, t)), rel=1e-13)


@settings(max_examples=100, deadline=None)
@given(n=st.integers(min_value=1, max_value=49), t=st.floats(min_value=1.0, max_value=3.0))
def test_recurrence_residual(n: int, t: float) -> None:
    """Невязка трёхчленной рекурренты мала относительно масштаба членов."""

    values = legendre_sequence(n + 1, t)
    residual = (n + 1) * values[n + 1] - (2 * n + 1) * t * values[n] + n * values[n - 1]
    scale = (2 * n + 1) * t * abs(values[n])

    assert abs(residual) <= 1e-10 * scale
    assert legendre_eval(n, t) == values[n]


@settings(max_examples=60, deadline=None)
@given(n=st.integers(min_value=0, max_value=50), t=st.floats(min_value=1.0, max_value=3.0))
def test_agrees_with_numpy_series(n: int, t: float) -> None:
    """Независимая проверка через numpy.polynomial.legendre."""

    coefficients = np.zeros(n + 1)
    coefficients[n] = 1.0
    expected = float(np.polynomial.legendre.legval(t, coefficients))

    assert legendre_eval(n, t) == pytest.approx(expected, rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(min_value=0, max_value=40), x=st.floats(min_value=0.0, max_value=0.45))
def test_scaled_form_matches_plain_recurrence(n: int, x: float) -> None:
    """(1-2x)^n P_n(t) совпадает с масштабированной рекуррентой."""

    plain = (1.0 - 2.0 * x) ** n * legendre_eval(n, legendre_map(x))

    assert legendre_scaled(n, x) == pytest.approx(plain, rel=1e-11)


def test_scaled_form_at_pole() -> None:
    """При x = 1/2 масштабированная форма равна C(2n,n)/4^n."""

    for n in range(12):
        assert legendre_scaled(n, 0.5) == pytest.approx(comb(2 * n, n) / 4**n, rel=1e-14)


def test_map_and_argument_domain() -> None:
    """Отображение не определено при x >= 1/2, аргумент требует x из [0, 1/2)."""

    assert legendre_map(0.0) == 1.0
    assert legendre_map(0.25) == pytest.approx(1.25)
    assert legendre_argument(0.25).t == pytest.approx(1.25)
    with pytest.raises(DomainError):
        legendre_map(0.5)
    with pytest.raises(DomainError):
        legendre_argument(-0.1)
    with pytest.raises(ParameterError):
        legendre_eval(-1, 1.0)


@pytest.mark.parametrize("y", [Fraction(0), Fraction(1, 2), Fraction(3), Fraction(10)])
def test_damped_form_matches_rational_oracle(y: Fraction) -> None:
    """(1+2y)^{-n} P_n(t(-y)) совпадает с точным значением."""

    s = 1 + 2 * y
    t = (s + 2 * y * y) / s
    for n in range(13):
        expected = float(_exact_legendre(n, t) / s**n)
        assert legendre_damped(n, float(y)) == pytest.approx(expected, rel=1e-13), n


def test_damped_form_stays_finite_for_large_orders() -> None:
    """Затухающая форма конечна там, где P_n(t) и (1+2y)^n переполняют float."""

    value = legendre_damped(999, 10.0)

    assert 0.0 < value < 1.0
    with pytest.raises(DomainError):
        legendre_damped(3, -0.1)
