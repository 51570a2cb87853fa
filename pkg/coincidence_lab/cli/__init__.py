"""Командная строка для индексов совпадения, энтропий и каталога неравенств.

Usage:
    python run.py eval --family binomial --n 2 --x 0.25 --method closed
    python run.py table --family mkz --n 0 --grid 0:0.9:2 --format csv
    python run.py verify --ids all --n-max 40 --x-points 99
    python run.py identities --n-max 20 --x-points 49
    python run.py quad-study --family negbinomial --n 3 --x 1 --m-list 8,16,32,64

Коды выхода: 0 успех, 1 найдены нарушения, 2 ошибка параметров или
области, 3 расхождение независимых методов.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, NoReturn, Optional

import click
from pydantic import ValidationError

from .. import Lab, __version__, create_lab
from ..errors import CoincidenceLabError, ConsistencyError
from ..models import EntropyPoint, FamilySpec, FamilyTag, Method
from .output import FORMATS


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_CONSISTENCY = 3

LOG_BASES = {"e": math.e, "2": 2.0}

pass_lab = click.make_pass_decorator(Lab)


def _fail(ctx: click.Context, exc: Exception, code: int) -> NoReturn:
    message = " ".join(str(exc).split())
    logger.debug("Команда завершилась ошибкой %s", type(exc).__name__)
    click.echo(f"Ошибка: {message}", err=True)
    ctx.exit(code)


class LabGroup(click.Group):
    """Группа команд, переводящая исключения библиотеки в коды выхода."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except ConsistencyError as exc:
            _fail(ctx, exc, EXIT_CONSISTENCY)
        except (CoincidenceLabError, ValidationError) as exc:
            _fail(ctx, exc, EXIT_USAGE)


def family_options(command: Callable[..., Any]) -> Callable[..., Any]:
    """Опции --family, --n и --c."""

    command = click.option("--c", "c", type=float, default=None, help="Параметр c (только для general).")(command)
    command = click.option("--n", "n", type=float, required=True, help="Порядок n.")(command)
    command = click.option(
        "--family",
        "family_name",
        type=click.Choice([tag.value for tag in FamilyTag], case_sensitive=False),
        required=True,
        help="Семейство распределений.",
    )(command)
    return command


def format_option(command: Callable[..., Any]) -> Callable[..., Any]:
    """Опция --format."""

    return click.option(
        "--format",
        "fmt",
        type=click.Choice(FORMATS),
        default="json",
        show_default=True,
        help="Формат вывода.",
    )(command)


def method_option(command: Callable[..., Any]) -> Callable[..., Any]:
    """Опция --method."""

    return click.option(
        "--method",
        type=click.Choice([method.value for method in Method]),
        default=Method.AUTO.value,
        show_default=True,
        help="Метод вычисления.",
    )(command)


def build_family(family_name: str, n: float, c: Optional[float]) -> FamilySpec:
    """Семейство по значениям опций командной строки."""

    return FamilySpec.from_name(family_name, n, c)


def value_row(family: FamilySpec, point: EntropyPoint) -> Dict[str, Any]:
    """Строка таблицы значений: семейство, точка, метод, S и энтропии."""

    return {
        "family": family.tag.value,
        "n": float(family.n),
        "c": family.c,
        "x": float(point.x),
        "method": point.method.value,
        "s": point.s,
        "renyi": point.renyi,
        "tsallis": point.tsallis,
        "err_estimate": point.err_estimate,
    }


@click.group(cls=LabGroup)
@click.version_option(version=__version__, prog_name="coincidence-lab")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Уровень журнала в stderr (по умолчанию из окружения или WARNING).",
)
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]) -> None:
    """Индексы совпадения, энтропии Реньи и Цаллиса, проверка неравенств."""

    ctx.obj = create_lab({"LOG_LEVEL": log_level} if log_level else None)


from . import evaluate, identities, quad_study, table, verify  # noqa: E402,F401


__all__ = [
    "EXIT_CONSISTENCY",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_VIOLATIONS",
    "cli",
]
