"""Тесты командной строки: вывод, детерминизм и коды выхода."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
import sys

import pytest
from click.testing import CliRunner

# NOTE[agent]: Добавляет корень проекта в путь импорта для unit-тестов.
sys.path.append(str(Path(__file__).resolve().parents[1]))

from coincidence_lab.cli import cli
from coincidence_lab.cli.output import dumps_document, format_float
from coincidence_lab.models import VALUE_COLUMNS
from coincidence_lab.services import inequality_lab
from coincidence_lab.services.backends import RecurrenceBackend


@pytest.fixture
def runner() -> CliRunner:
    """CliRunner с раздельными stdout и stderr."""

    return CliRunner(mix_stderr=False)


def _rows(output: str) -> list:
    return json.loads(output)["rows"]


def test_eval_closed_form(runner: CliRunner) -> None:
    """eval выводит одну строку с S, энтропиями и версией схемы."""

    result = runner.invoke(cli, ["eval", "--family", "binomial", "--n", "2", "--x", "0.25", "--method", "closed"])

    assert result.exit_code == 0, result.stderr
    document = json.loads(result.stdout)
    assert document["schema_version"] == "1.0"
    assert document["command"]["name"] == "eval"
    row, = document["rows"]
    assert list(row) == list(VALUE_COLUMNS)
    assert row["s"] == 0.4609375
    assert row["tsallis"] == 0.5390625
    assert row["method"] == "closed"
    assert row["c"] == -1


def test_eval_at_zero(runner: CliRunner) -> None:
    """В точке 0 индекс равен 1, энтропии равны 0."""

    result = runner.invoke(cli, ["eval", "--family", "binomial", "--n", "2", "--x", "0"])

    assert result.exit_code == 0, result.stderr
    row, = _rows(result.stdout)
    assert (row["s"], row["renyi"], row["tsallis"]) == (1, 0, 0)


def test_eval_log_base_two(runner: CliRunner) -> None:
    """--log-base 2 переводит энтропию Реньи в биты."""

    result = runner.invoke(cli, ["eval", "--family", "mkz", "--n", "0", "--x", "0.3333333333333333", "--log-base", "2"])

    assert result.exit_code == 0, result.stderr
    row, = _rows(result.stdout)
    assert row["renyi"] == pytest.approx(1.0)
    assert row["c"] is None


def test_eval_parameter_error(runner: CliRunner) -> None:
    """Недопустимый порядок для c = -2 даёт код 2 и одну строку диагностики."""

    result = runner.invoke(cli, ["eval", "--family", "general", "--c", "-2", "--n", "3", "--x", "0.1"])

    assert result.exit_code == 2
    assert result.stdout == ""
    assert result.stderr.startswith("Ошибка:")
    assert len(result.stderr.strip().splitlines()) == 1


def test_eval_domain_error(runner: CliRunner) -> None:
    """x вне области семейства даёт код 2."""

    result = runner.invoke(cli, ["eval", "--family", "mkz", "--n", "2", "--x", "1"])

    assert result.exit_code == 2
    assert result.stdout == ""


def test_eval_consistency_error(runner: CliRunner, monkeypatch: pytest.MonkeyPatch) -> None:
    """Расхождение методов в режиме auto даёт код 3."""

    monkeypatch.setattr(RecurrenceBackend, "_evaluate", lambda self, family, x, nodes: (0.5, 0.0))

    result = runner.invoke(cli, ["eval", "--family", "binomial", "--n", "2", "--x", "0.25"])

    assert result.exit_code == 3
    assert result.stdout == ""
    assert "Ошибка:" in result.stderr


def test_table_csv(runner: CliRunner) -> None:
    """CSV: фиксированный заголовок из девяти колонок и значения F_1 на сетке."""

    result = runner.invoke(cli, ["table", "--family", "binomial", "--n", "1", "--grid", "0:1:3", "--format", "csv"])

    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    assert lines[0] == "family,n,c,x,method,s,renyi,tsallis,err_estimate"
    records = list(csv.reader(io.StringIO(result.stdout)))
    assert all(len(record) == 9 for record in records)
    assert [float(record[5]) for record in records[1:]] == [1.0, 0.5, 1.0]


def test_table_json_round_trip(runner: CliRunner) -> None:
    """JSON таблицы после разбора и повторной записи совпадает байт в байт."""

    args = ["table", "--family", "mkz", "--n", "0", "--grid", "0:0.9:2"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)

    assert first.exit_code == 0, first.stderr
    assert first.stdout == second.stdout
    assert dumps_document(json.loads(first.stdout)) == first.stdout
    rows = _rows(first.stdout)
    assert rows[0]["s"] == 1
    assert rows[1]["s"] == pytest.approx(1.0 / 19.0, rel=1e-14)


def test_table_rejects_grid_before_output(runner: CliRunner) -> None:
    """Точка вне области даёт код 2 без частичного вывода."""

    result = runner.invoke(cli, ["table", "--family", "binomial", "--n", "2", "--grid", "0:2:5"])

    assert result.exit_code == 2
    assert result.stdout == ""
    assert "#3" in result.stderr


def test_table_bad_grid_syntax(runner: CliRunner) -> None:
    """Неверная запись сетки является ошибкой использования."""

    result = runner.invoke(cli, ["table", "--family", "binomial", "--n", "2", "--grid", "0:1"])

    assert result.exit_code == 2


def test_verify_single_entry(runner: CliRunner) -> None:
    """verify по одному неравенству без нарушений."""

    result = runner.invoke(cli, ["verify", "--ids", "INEQ-3.3", "--n-max", "5", "--x-points", "11"])

    assert result.exit_code == 0, result.stderr
    row, = _rows(result.stdout)
    assert row["id"] == "INEQ-3.3"
    assert row["points"] == 66
    assert row["violations"] == 0
    assert row["min_margin"] >= 0.0


def test_verify_unknown_id(runner: CliRunner) -> None:
    """Неизвестный идентификатор даёт код 2."""

    result = runner.invoke(cli, ["verify", "--ids", "BOGUS"])

    assert result.exit_code == 2
    assert result.stdout == ""


def test_verify_violations_exit_code(runner: CliRunner, monkeypatch: pytest.MonkeyPatch) -> None:
    """При нарушениях сводка выводится, код выхода равен 1."""

    monkeypatch.setattr(inequality_lab, "_margins", lambda rule, index, n, x, c: {"main": -1.0})

    result = runner.invoke(cli, ["verify", "--ids", "INEQ-3.1,INEQ-3.2", "--n-max", "3", "--x-points", "3", "--format", "csv"])

    assert result.exit_code == 1
    lines = result.stdout.splitlines()
    assert lines[0] == "id,points,min_margin,violations"
    assert lines[1] == "INEQ-3.1,9,-1,9"


def test_verify_is_deterministic_with_workers(runner: CliRunner) -> None:
    """Число потоков не меняет вывод."""

    base = ["verify", "--ids", "INEQ-3.8,INEQ-4.4J", "--n-max", "6", "--x-points", "7"]
    serial = runner.invoke(cli, base)
    parallel = runner.invoke(cli, base + ["--workers", "4"])

    assert serial.exit_code == parallel.exit_code == 0
    assert serial.stdout == parallel.stdout


def test_identities_command(runner: CliRunner) -> None:
    """identities: семь строк и код 0."""

    result = runner.invoke(cli, ["identities", "--n-max", "6", "--x-points", "9"])

    assert result.exit_code == 0, result.stderr
    rows = _rows(result.stdout)
    assert len(rows) == 7
    assert all(row["passed"] for row in rows)


def test_identities_rejects_single_point(runner: CliRunner) -> None:
    """--x-points 1 даёт код 2."""

    result = runner.invoke(cli, ["identities", "--x-points", "1"])

    assert result.exit_code == 2


def test_quad_study_binomial(runner: CliRunner) -> None:
    """Для F_6 ошибка исчезает начиная с m = 4."""

    args = ["quad-study", "--family", "binomial", "--n", "6", "--x", "0.3", "--m-list", "2,3,4,5"]
    result = runner.invoke(cli, args)

    assert result.exit_code == 0, result.stderr
    rows = _rows(result.stdout)
    assert [row["m"] for row in rows] == [2, 3, 4, 5]
    assert all(row["error"] < 1e-14 for row in rows[2:])


def test_quad_study_poisson_is_rejected(runner: CliRunner) -> None:
    """Для распределения Пуассона квадратуры нет: код 2."""

    result = runner.invoke(cli, ["quad-study", "--family", "poisson", "--n", "1", "--x", "0.5", "--m-list", "4,8"])

    assert result.exit_code == 2
    assert result.stdout == ""


def test_quad_study_bad_node_list(runner: CliRunner) -> None:
    """Нечисловой список узлов является ошибкой использования."""

    result = runner.invoke(cli, ["quad-study", "--family", "binomial", "--n", "2", "--x", "0.3", "--m-list", "a,b"])

    assert result.exit_code == 2


def test_float_format() -> None:
    """17 значащих цифр, целые значения без дробной части."""

    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(1.0) == "1"
    assert format_float(float("inf")) == "null"


# NOTE[agent]: Каждая команда с фиксированными флагами печатает один и тот же текст.
@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--family", "negbinomial", "--n", "3", "--x", "0.7"],
        ["eval", "--family", "general", "--c", "0.5", "--n", "0.75", "--x", "1.3", "--format", "csv"],
        ["table", "--family", "bbh", "--n", "4", "--grid", "0:5:11", "--format", "csv"],
        ["identities", "--n-max", "5", "--x-points", "7"],
        ["quad-study", "--family", "negbinomial", "--n", "3", "--x", "1", "--m-list", "8,16,32,64"],
        ["verify", "--ids", "INEQ-3.4,INEQ-4.1", "--n-max", "5", "--x-points", "9", "--format", "csv"],
    ],
)
def test_repeated_invocations_are_identical(runner: CliRunner, args: list) -> None:
    """Два одинаковых вызова дают побайтно одинаковый stdout и код 0."""

    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)

    assert first.exit_code == 0, first.stderr
    assert second.exit_code == 0, second.stderr
    assert first.stdout == second.stdout
    assert first.stdout


def test_eval_legendre_for_large_negbinomial_order(runner: CliRunner) -> None:
    """Карта Лежандра для G_300(10) не переполняется: код 0 и значение явной формулы."""

    base = ["eval", "--family", "negbinomial", "--n", "300", "--x", "10"]
    legendre = runner.invoke(cli, base + ["--method", "legendre"])
    closed = runner.invoke(cli, base + ["--method", "closed"])

    assert legendre.exit_code == 0, legendre.stderr
    row, = _rows(legendre.stdout)
    reference, = _rows(closed.stdout)
    assert row["method"] == "legendre"
    assert row["s"] == pytest.approx(reference["s"], rel=1e-10)
