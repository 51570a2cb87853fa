"""Прямое суммирование квадратов вероятностей."""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from ...models import FamilySpec, Method
from ..pmf import pmf_row
from .base import BaseBackend


class DirectBackend(BaseBackend):
    """S = sum p_k^2 по усечённой строке; погрешность равна оценке хвоста.

    Так как p_k <= 1, сумма квадратов отброшенных членов не превосходит
    их суммы, поэтому tail_bound строки годится как оценка.
    """

    method = Method.DIRECT

    def _evaluate(self, family: FamilySpec, x: float, nodes: Optional[int]) -> Tuple[float, float]:
        row = pmf_row(family, x, self.policy)
        value = math.fsum(np.square(row.probabilities).tolist())
        return value, row.tail_bound
