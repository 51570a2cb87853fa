"""Команда quad-study: сходимость квадратуры Гаусса–Чебышёва по числу узлов."""

from __future__ import annotations

from typing import Any, List, Optional

import click

from .. import Lab
from ..models import OutputRecord
from . import build_family, cli, family_options, format_option, pass_lab
from .output import emit


QUAD_STUDY_COLUMNS = ("family", "n", "c", "x", "m", "value", "error")


class NodeListType(click.ParamType):
    """Список чисел узлов через запятую."""

    name = "m1,m2,..."

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> List[int]:
        if isinstance(value, list):
            return value
        try:
            counts = [int(part) for part in value.split(",") if part.strip()]
        except ValueError:
            self.fail(f"ожидался список целых через запятую, получено {value!r}", param, ctx)
        if not counts:
            self.fail("список числа узлов пуст", param, ctx)
        return counts


@cli.command("quad-study")
@family_options
@click.option("--x", "x", type=float, required=True, help="Точка x.")
@click.option("--m-list", "m_list", type=NodeListType(), required=True, help="Числа узлов через запятую.")
@format_option
@pass_lab
def quad_study_command(
    lab: Lab,
    family_name: str,
    n: float,
    c: Optional[float],
    x: float,
    m_list: List[int],
    fmt: str,
) -> None:
    """Значение квадратуры для каждого m и отклонение от эталона."""

    family = build_family(family_name, n, c)
    rows = lab.coincidence_service.quad_study(family, x, m_list)
    record = OutputRecord(
        command={
            "name": "quad-study",
            "family": family.tag.value,
            "n": n,
            "c": c,
            "x": x,
            "m_list": list(m_list),
        },
        columns=list(QUAD_STUDY_COLUMNS),
        rows=[
            {
                "family": family.tag.value,
                "n": float(family.n),
                "c": family.c,
                "x": x,
                "m": row.m,
                "value": row.value,
                "error": row.error,
            }
            for row in rows
        ],
    )
    emit(record, fmt)
