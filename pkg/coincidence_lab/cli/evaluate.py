"""Команда eval: одно значение S и энтропии."""

from __future__ import annotations

from typing import Optional

import click

from .. import Lab
from ..models import EntropyPoint, Method, OutputRecord, VALUE_COLUMNS
from ..services.entropy import renyi_entropy, tsallis_entropy
from . import LOG_BASES, build_family, cli, family_options, format_option, method_option, pass_lab, value_row
from .output import emit


@cli.command("eval")
@family_options
@click.option("--x", "x", type=float, required=True, help="Точка x.")
@method_option
@click.option("--log-base", type=click.Choice(sorted(LOG_BASES)), default="e", show_default=True)
@format_option
@pass_lab
def eval_command(
    lab: Lab,
    family_name: str,
    n: float,
    c: Optional[float],
    x: float,
    method: str,
    log_base: str,
    fmt: str,
) -> None:
    """Индекс совпадения в одной точке."""

    family = build_family(family_name, n, c)
    value = lab.coincidence_service.evaluate(family, x, Method(method))
    point = EntropyPoint(
        x=x,
        s=value.value,
        renyi=renyi_entropy(value.value, LOG_BASES[log_base]),
        tsallis=tsallis_entropy(value.value),
        method=value.method,
        err_estimate=value.err_estimate,
    )
    record = OutputRecord(
        command={
            "name": "eval",
            "family": family.tag.value,
            "n": n,
            "c": c,
            "x": x,
            "method": method,
            "log_base": log_base,
        },
        columns=list(VALUE_COLUMNS),
        rows=[value_row(family, point)],
    )
    emit(record, fmt)
