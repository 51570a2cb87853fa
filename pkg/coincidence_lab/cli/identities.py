"""Команда identities: проверка тождеств между семействами."""

from __future__ import annotations

import click

from ..models import OutputRecord
from ..services.identities import DEFAULT_TOLERANCE, check_identities
from . import EXIT_VIOLATIONS, cli, format_option
from .output import emit


IDENTITY_COLUMNS = ("id", "title", "points", "max_deviation", "worst_n", "worst_x", "passed")


@cli.command("identities")
@click.option("--n-max", type=int, default=20, show_default=True)
@click.option("--x-points", type=int, default=49, show_default=True)
@click.option("--tolerance", type=float, default=DEFAULT_TOLERANCE, show_default=True)
@format_option
def identities_command(n_max: int, x_points: int, tolerance: float, fmt: str) -> None:
    """Наибольшее относительное отклонение по каждому тождеству."""

    reports = check_identities(n_max, x_points, tolerance)
    record = OutputRecord(
        command={"name": "identities", "n_max": n_max, "x_points": x_points, "tolerance": tolerance},
        columns=list(IDENTITY_COLUMNS),
        rows=[
            {
                "id": report.identity_id,
                "title": report.title,
                "points": report.points,
                "max_deviation": report.max_deviation,
                "worst_n": report.worst_n,
                "worst_x": report.worst_x,
                "passed": report.passed,
            }
            for report in reports
        ],
    )
    emit(record, fmt)
    if not all(report.passed for report in reports):
        click.get_current_context().exit(EXIT_VIOLATIONS)
