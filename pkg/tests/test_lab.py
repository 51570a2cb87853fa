"""Тесты фабрики create_lab и настройки журнала."""

from __future__ import annotations

import logging
from pathlib import Path
import sys

import pytest

# NOTE[agent]: Добавляет корень проекта в путь импорта для unit-тестов.
sys.path.append(str(Path(__file__).resolve().parents[1]))

from coincidence_lab import DEFAULT_CONFIG, LOGGER_NAME, create_lab
from coincidence_lab.models import FamilySpec


def _lab_handlers() -> list:
    logger = logging.getLogger(LOGGER_NAME)
    return [handler for handler in logger.handlers if getattr(handler, "_coincidence_lab", False)]


def test_defaults_and_overrides(monkeypatch: pytest.MonkeyPatch) -> None:
    """Переданные ключи заменяют значения по умолчанию, сервисы зарегистрированы."""

    monkeypatch.delenv("COINCIDENCE_LAB_LOG_LEVEL", raising=False)
    lab = create_lab({"VERIFY_TOLERANCE": 1e-9, "LOG_LEVEL": "INFO"})

    assert lab.config["PMF_MAX_TERMS"] == DEFAULT_CONFIG["PMF_MAX_TERMS"]
    assert lab.inequality_lab.tolerance == 1e-9
    assert lab.logger.level == logging.INFO
    assert lab.coincidence_service.auto(FamilySpec.binomial(2), 0.25).value == pytest.approx(0.4609375)


def test_repeated_calls_replace_handlers(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Повторный вызов не дублирует обработчики; файл журнала создаётся по настройке."""

    log_file = tmp_path / "logs" / "lab.log"
    monkeypatch.setenv("COINCIDENCE_LAB_LOG_FILE", str(log_file))
    monkeypatch.setenv("COINCIDENCE_LAB_LOG_LEVEL", "DEBUG")

    create_lab()
    lab = create_lab()
    lab.logger.debug("проверка записи")

    assert len(_lab_handlers()) == 2
    assert lab.logger.level == logging.DEBUG
    assert "проверка записи" in log_file.read_text(encoding="utf-8")

    monkeypatch.delenv("COINCIDENCE_LAB_LOG_FILE")
    monkeypatch.delenv("COINCIDENCE_LAB_LOG_LEVEL")
    create_lab()
    assert len(_lab_handlers()) == 1


def test_module_loggers_propagate_to_package(caplog: pytest.LogCaptureFixture) -> None:
    """Журналы модулей являются потомками логгера пакета."""

    from coincidence_lab.services.identities import check_identities

    create_lab({"LOG_LEVEL": "INFO"})
    with caplog.at_level(logging.INFO, logger=LOGGER_NAME):
        check_identities(n_max=2, x_points=3)

    assert any(record.name.startswith(LOGGER_NAME) for record in caplog.records)


def test_log_file_uses_configured_encoding(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Кодировка файла журнала берётся из LOG_ENCODING, по умолчанию utf-8."""

    monkeypatch.delenv("COINCIDENCE_LAB_LOG_FILE", raising=False)
    monkeypatch.delenv("COINCIDENCE_LAB_LOG_ENCODING", raising=False)
    log_file = tmp_path / "lab-cp1251.log"

    lab = create_lab({"LOG_FILE": str(log_file), "LOG_ENCODING": "cp1251", "LOG_LEVEL": "INFO"})
    lab.logger.info("кодировка журнала")
    file_handler, = [handler for handler in _lab_handlers() if isinstance(handler, logging.FileHandler)]

    assert file_handler.encoding == "cp1251"
    assert "кодировка журнала" in log_file.read_text(encoding="cp1251")

    # NOTE[agent]: Сбрасывает обработчик файла, чтобы он не оставался открытым в других тестах.
    create_lab({"LOG_FILE": None})
    assert len(_lab_handlers()) == 1
