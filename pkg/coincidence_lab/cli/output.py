"""Сериализация документов вывода в JSON и CSV."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Dict, Iterable, Mapping, Sequence

import click

from ..models import OutputRecord


FORMATS = ("json", "csv")

_INDENT = "  "


def format_float(value: float) -> str:
    """17 значащих цифр; нечисловые значения пишутся как null."""

    if not math.isfinite(value):
        return "null"
    return format(value, ".17g")


def _encode(value: Any, level: int) -> str:
    pad = _INDENT * (level + 1)
    closing = _INDENT * level
    if isinstance(value, Mapping):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(key), ensure_ascii=False)}: {_encode(item, level + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + closing + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + _encode(item, level + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + closing + "]"
    if isinstance(value, float):
        return format_float(value)
    if value is None or isinstance(value, (bool, int, str)):
        return json.dumps(value, ensure_ascii=False)
    raise TypeError(f"значение типа {type(value).__name__} не сериализуется")


def dumps_document(document: Mapping[str, Any]) -> str:
    """JSON с фиксированным порядком ключей и форматом чисел."""

    return _encode(document, 0) + "\n"


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if not math.isfinite(value) else format_float(value)
    return str(value)


def dumps_csv(columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> str:
    """Заголовок и строки CSV с разделителем строк \\n."""

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def render(record: OutputRecord, fmt: str) -> str:
    """Текст документа в выбранном формате."""

    if fmt == "csv":
        return dumps_csv(record.columns, record.rows)
    return dumps_document(record.as_document())


def emit(record: OutputRecord, fmt: str) -> None:
    """Печатает документ в stdout одним блоком."""

    click.echo(render(record, fmt), nl=False)


__all__ = ["FORMATS", "dumps_csv", "dumps_document", "emit", "format_float", "render"]
