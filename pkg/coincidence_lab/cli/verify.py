"""Команда verify: проверка неравенств каталога на сетке."""

from __future__ import annotations

from typing import List, Optional

import click

from .. import Lab
from ..models import OutputRecord
from . import EXIT_VIOLATIONS, cli, format_option, pass_lab
from .output import emit


VERIFY_COLUMNS = ("id", "points", "min_margin", "violations")


def parse_ids(text: str) -> List[str]:
    """Список идентификаторов через запятую; all означает весь каталог."""

    ids = [part.strip() for part in text.split(",") if part.strip()]
    if not ids:
        raise click.BadParameter("список идентификаторов пуст", param_hint="--ids")
    return ["all"] if "all" in ids else ids


@cli.command("verify")
@click.option("--ids", "ids", default="all", show_default=True, help="Идентификаторы через запятую или all.")
@click.option("--n-max", type=int, default=40, show_default=True)
@click.option("--x-points", type=int, default=99, show_default=True)
@click.option("--tolerance", type=float, default=None, help="Допуск на отрицательный запас (по умолчанию 1e-12).")
@click.option("--progress", is_flag=True, help="Показывать индикатор выполнения в stderr.")
@click.option("--workers", type=int, default=None, help="Число потоков вычисления.")
@format_option
@pass_lab
def verify_command(
    lab: Lab,
    ids: str,
    n_max: int,
    x_points: int,
    tolerance: Optional[float],
    progress: bool,
    workers: Optional[int],
    fmt: str,
) -> None:
    """Сводка по каждому неравенству; код выхода 1 при нарушениях."""

    selected = parse_ids(ids)
    checker = lab.inequality_lab
    reports = checker.verify(selected, n_max, x_points, tolerance, progress=progress, workers=workers)
    record = OutputRecord(
        command={
            "name": "verify",
            "ids": selected,
            "n_max": n_max,
            "x_points": x_points,
            "tolerance": checker.tolerance if tolerance is None else tolerance,
        },
        columns=list(VERIFY_COLUMNS),
        rows=[
            {
                "id": report.inequality_id,
                "points": report.points,
                "min_margin": report.min_margin,
                "violations": len(report.violations),
            }
            for report in reports
        ],
    )
    emit(record, fmt)
    if not all(report.passed for report in reports):
        click.get_current_context().exit(EXIT_VIOLATIONS)
