"""Команда table: профиль S и энтропий на равномерной сетке."""

from __future__ import annotations

import math
from typing import Any, List, Optional

import click
import numpy as np

from .. import Lab
from ..errors import DomainError, ParameterError
from ..models import Method, OutputRecord, VALUE_COLUMNS
from ..services.entropy import entropy_profile
from . import LOG_BASES, build_family, cli, family_options, format_option, method_option, pass_lab, value_row
from .output import emit


def parse_grid(text: str) -> List[float]:
    """Разбирает start:stop:count в count равноотстоящих точек, концы включены."""

    parts = text.split(":")
    if len(parts) != 3:
        raise ParameterError(f"сетка задаётся как start:stop:count, получено {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ParameterError(f"не удалось разобрать сетку {text!r}") from exc
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ParameterError(f"концы сетки должны быть конечными: {text!r}")
    if count < 1:
        raise ParameterError(f"число точек сетки должно быть >= 1, получено {count}")
    return [float(value) for value in np.linspace(start, stop, count)]


class GridType(click.ParamType):
    """Тип опции --grid."""

    name = "start:stop:count"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> List[float]:
        if isinstance(value, list):
            return value
        try:
            return parse_grid(value)
        except ParameterError as exc:
            self.fail(str(exc), param, ctx)


@cli.command("table")
@family_options
@click.option("--grid", "grid", type=GridType(), required=True, help="Сетка x вида start:stop:count.")
@method_option
@click.option("--log-base", type=click.Choice(sorted(LOG_BASES)), default="e", show_default=True)
@format_option
@pass_lab
def table_command(
    lab: Lab,
    family_name: str,
    n: float,
    c: Optional[float],
    grid: List[float],
    method: str,
    log_base: str,
    fmt: str,
) -> None:
    """Строка на каждую точку сетки; строки выводятся только если все точки в области."""

    family = build_family(family_name, n, c)
    for index, x in enumerate(grid):
        try:
            family.require_in_domain(x)
        except DomainError as exc:
            raise exc.at_grid_index(index) from exc

    profile = entropy_profile(
        family,
        grid,
        service=lab.coincidence_service,
        base=LOG_BASES[log_base],
        method=Method(method),
    )
    record = OutputRecord(
        command={
            "name": "table",
            "family": family.tag.value,
            "n": n,
            "c": c,
            "grid": {"start": grid[0], "stop": grid[-1], "count": len(grid)},
            "method": method,
            "log_base": log_base,
        },
        columns=list(VALUE_COLUMNS),
        rows=[value_row(family, point) for point in profile],
    )
    emit(record, fmt)
