"""Запись вывода командной строки."""

from __future__ import annotations

from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field


SCHEMA_VERSION = "1.0"

# NOTE[agent]: Порядок колонок таблицы значений фиксирован контрактом CSV.
VALUE_COLUMNS = (
    "family",
    "n",
    "c",
    "x",
    "method",
    "s",
    "renyi",
    "tsallis",
    "err_estimate",
)


class OutputRecord(BaseModel):
    """Документ вывода: версия схемы, эхо команды и строки."""

    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    command: Dict[str, Any]
    columns: List[str]
    rows: List[Dict[str, Any]] = Field(default_factory=list)

    def as_document(self) -> Dict[str, Any]:
        """Словарь в порядке полей для сериализации в JSON."""

        return {
            "schema_version": self.schema_version,
            "command": dict(self.command),
            "rows": [{column: row.get(column) for column in self.columns} for row in self.rows],
        }
