"""Точка входа для запуска командной строки coincidence-lab."""

from __future__ import annotations

from coincidence_lab.cli import cli


# NOTE[agent]: Позволяет запускать команды через `python run.py <команда>`.
if __name__ == "__main__":
    cli(prog_name="coincidence-lab")
