"""Инициализация библиотеки индексов совпадения."""

from __future__ import annotations

import logging
import os
import sys
from logging import Handler
from logging.handlers import RotatingFileHandler
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv

from .models import TruncationPolicy
from .services.coincidence import CoincidenceService
from .services.inequality_lab import InequalityLab, THEOREM41_C_VALUES


__version__ = "1.0.0"

LOGGER_NAME = "coincidence_lab"

# Числовые настройки по умолчанию; аргумент `config` create_lab переопределяет отдельные ключи.
DEFAULT_CONFIG: Dict[str, Any] = {
    "PMF_REL_TOL": 1e-14,
    "PMF_MAX_TERMS": 100_000,
    "QUAD_MIN_NODES": 16,
    "QUAD_START_NODES": 64,
    "QUAD_MAX_NODES": 2**20,
    "QUAD_REL_TOL": 1e-13,
    "CONSISTENCY_REL_TOL": 1e-8,
    "VERIFY_TOLERANCE": 1e-12,
    "UNBOUNDED_X_SPAN": 5.0,
    "THEOREM41_C_VALUES": THEOREM41_C_VALUES,
}

_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Lab:
    """Настройки, логгер и сервисы одного запуска."""

    def __init__(self, config: Mapping[str, Any]) -> None:
        self.config: Dict[str, Any] = dict(config)
        self.logger = logging.getLogger(LOGGER_NAME)
        self.extensions: Dict[str, Any] = {}

    @property
    def coincidence_service(self) -> CoincidenceService:
        """Сервис вычисления индексов совпадения."""

        return self.extensions["coincidence_service"]

    @property
    def inequality_lab(self) -> InequalityLab:
        """Проверка неравенств каталога."""

        return self.extensions["inequality_lab"]


def create_lab(config: Optional[Mapping[str, Any]] = None) -> Lab:
    """Создаёт объект Lab и регистрирует сервисы.

    Args:
        config: Дополнительные настройки, которые будут наложены на стандартные.

    Returns:
        Настроенный экземпляр Lab.
    """

    settings = dict(DEFAULT_CONFIG)
    settings.update(_load_logging_env())
    if config:
        settings.update(config)

    lab = Lab(settings)
    _configure_logging(lab)

    policy = TruncationPolicy(rel_tol=settings["PMF_REL_TOL"], max_terms=settings["PMF_MAX_TERMS"])
    service = CoincidenceService(
        policy=policy,
        consistency_rel_tol=settings["CONSISTENCY_REL_TOL"],
        quad_min_nodes=settings["QUAD_MIN_NODES"],
        quad_start_nodes=settings["QUAD_START_NODES"],
        quad_max_nodes=settings["QUAD_MAX_NODES"],
        quad_rel_tol=settings["QUAD_REL_TOL"],
    )
    lab.extensions["coincidence_service"] = service
    lab.extensions["inequality_lab"] = InequalityLab(
        service,
        tolerance=settings["VERIFY_TOLERANCE"],
        unbounded_span=settings["UNBOUNDED_X_SPAN"],
        c_values=tuple(settings["THEOREM41_C_VALUES"]),
    )
    return lab


def _load_logging_env() -> Dict[str, Optional[str]]:
    """Читает настройки журнала из окружения, при их отсутствии из .env."""

    names = {
        "LOG_LEVEL": "COINCIDENCE_LAB_LOG_LEVEL",
        "LOG_FILE": "COINCIDENCE_LAB_LOG_FILE",
        "LOG_ENCODING": "COINCIDENCE_LAB_LOG_ENCODING",
    }
    if not any(os.environ.get(variable) for variable in names.values()):
        load_dotenv()
    return {key: os.environ.get(variable) for key, variable in names.items()}


def _configure_logging(lab: Lab) -> None:
    """Настраивает вывод журнала в stderr и, если задан файл, в ротируемый файл."""

    level_name = (lab.config.get("LOG_LEVEL") or "WARNING").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logger = lab.logger
    logger.setLevel(level)

    # Повторный вызов create_lab заменяет обработчики, а не добавляет новые.
    for handler in list(logger.handlers):
        if getattr(handler, "_coincidence_lab", False):
            logger.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter(_LOG_FORMAT)
    _install(logger, logging.StreamHandler(sys.stderr), level, formatter)

    log_file = lab.config.get("LOG_FILE")
    if log_file:
        directory = os.path.dirname(os.path.abspath(log_file))
        os.makedirs(directory, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=1_000_000,
            backupCount=5,
            encoding=lab.config.get("LOG_ENCODING") or "utf-8",
        )
        _install(logger, file_handler, level, formatter)


def _install(logger: logging.Logger, handler: Handler, level: int, formatter: logging.Formatter) -> None:
    handler.setLevel(level)
    handler.setFormatter(formatter)
    handler._coincidence_lab = True  # type: ignore[attr-defined]
    logger.addHandler(handler)


__all__ = ["DEFAULT_CONFIG", "LOGGER_NAME", "Lab", "__version__", "create_lab"]
