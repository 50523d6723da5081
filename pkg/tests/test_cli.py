import csv
import io
import json
import math
import sys

import pytest
from loguru import logger
from oracles import bessel_star_g, bessel_zero

from wright_radii.cli import main
from wright_radii.config import get_settings
from wright_radii.sweep_scheduler import CSV_HEADER

ENV_DEFAULTS = {
    "WRIGHT_RADII_THREADS": "2",
    "WRIGHT_RADII_LOG_LEVEL": "WARNING",
    "WRIGHT_RADII_ZERO_COUNT": "20",
    "WRIGHT_RADII_TOL": "1e-14",
    "WRIGHT_RADII_MAX_TERMS": "10000",
    "WRIGHT_RADII_SOLVER_TOL": "1e-12",
}


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    # CLI 参数会写入环境变量，这里让 monkeypatch 负责还原
    for name, value in ENV_DEFAULTS.items():
        monkeypatch.setenv(name, value)
    monkeypatch.delenv("WRIGHT_RADII_ZERO_CACHE", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


def test_zeros_csv(capsys):
    assert main(["zeros", "--count", "3", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["n", "psi", "psi_deriv"]
    assert len(rows) == 4
    assert float(rows[1][1]) == pytest.approx(bessel_zero(1) / 2, abs=1e-12)


def test_zeros_json(capsys):
    assert main(["zeros", "--count", "2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["psi"]) == 2
    assert len(payload["psi_deriv"]) == 3
    assert payload["params"] == {"mu": 1.0, "a": 1.0, "nu": 1.0, "b": 1.0}


def test_radius_json(capsys):
    code = main(["radius", "--family", "star", "--norm", "g", "--beta", "0.5", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["radius"] == pytest.approx(bessel_star_g(0.5), rel=1e-10)
    assert payload["problem"]["family"] == "star"


def test_radius_json_is_reproducible(capsys):
    argv = ["radius", "--family", "convex", "--norm", "h", "--beta", "0.25", "--verify", "--samples", "90"]
    argv += ["--format", "json", "--seed", "0"]
    runs = []
    for _ in range(2):
        code = main(argv)
        runs.append((code, capsys.readouterr().out))
    assert runs[0][0] == 0
    assert runs[0] == runs[1]


def test_radius_plain_with_verification(capsys):
    code = main(["radius", "--family", "exp-star", "--norm", "g", "--verify", "--samples", "90"])
    assert code == 0
    out = capsys.readouterr().out
    assert "result.radius:" in out
    assert "verification.passed: true" in out


def test_verify_command(capsys):
    code = main(["verify", "--family", "star", "--norm", "h", "--beta", "0.5", "--samples", "90", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verification"]["passed"] is True


def test_sweep_csv(capsys):
    argv = ["sweep", "--family", "star", "--norm", "g", "--beta", "0.5", "--over", "beta", "--grid", "0.1:0.3:0.1"]
    assert main(argv + ["--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert tuple(rows[0]) == CSV_HEADER
    assert [float(r[6]) for r in rows[1:]] == [0.1, 0.2, 0.3]
    for r in rows[1:]:
        assert float(r[9]) == pytest.approx(bessel_star_g(float(r[6])), rel=1e-10)
        assert r[4] == "star" and r[5] == "g"


def test_sweep_json_is_reproducible(capsys):
    argv = ["sweep", "--family", "spiral", "--norm", "f", "--over", "gamma", "--grid", "0:1:0.5"]
    argv += ["--format", "json", "--seed", "0"]
    runs = []
    for _ in range(2):
        code = main(argv)
        runs.append((code, capsys.readouterr().out))
    assert runs[0][0] == 0
    assert runs[0] == runs[1]


def test_sweep_all_failures_exit_code(capsys):
    argv = ["sweep", "--family", "exp-convex", "--norm", "f", "--a", "1.5"]
    argv += ["--over", "alpha", "--grid", "[0.0, 0.5]", "--format", "csv"]
    assert main(argv) == 3
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert all(r[9] == "nan" and r[11] == "false" for r in rows[1:])


def test_table_command(capsys):
    assert main(["table", "--norm", "g", "--terms", "3", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["k", "power", "coefficient"]
    assert [int(r[1]) for r in rows[1:]] == [1, 3, 5]
    assert [float(r[2]) for r in rows[1:]] == pytest.approx([1.0, -1.0, 0.25])


def test_lemmas_command(capsys):
    assert main(["lemmas", "--trials", "200", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert payload["seed"] == 42


@pytest.mark.slow
def test_oracle_command(capsys):
    assert main(["oracle", "--points", "20", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["zero_count"] == 50


def test_json_rounds_to_fifteen_digits(capsys):
    main(["radius", "--family", "star", "--norm", "g", "--beta", "0.5", "--format", "json"])
    radius = json.loads(capsys.readouterr().out)["result"]["radius"]
    assert len(repr(radius).replace("0.", "", 1).lstrip("0")) <= 15


def test_missing_beta_is_usage_error(capsys):
    assert main(["radius", "--family", "star", "--norm", "g"]) == 64
    assert "--beta" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["radius", "--family", "star", "--norm", "g", "--beta", "1.5"],
        ["radius", "--family", "spiral", "--norm", "g", "--gamma", "2.0"],
        ["radius", "--family", "spiral", "--norm", "g", "--alpha", "1.0"],
        ["radius", "--family", "bogus", "--norm", "g"],
        ["zeros", "--mu", "-1"],
        ["sweep", "--family", "star", "--norm", "g", "--beta", "0.5", "--over", "beta", "--grid", "0:1"],
        ["table", "--norm", "f"],
        [],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == 64


def test_invalid_problem_exit_code():
    assert main(["radius", "--family", "exp-convex", "--norm", "f", "--a", "1.5"]) == 3


def test_zero_cache_option(tmp_path, capsys):
    cache = tmp_path / "zeros.json"
    assert main(["zeros", "--count", "2", "--zero-cache", str(cache)]) == 0
    assert cache.exists()
    first = capsys.readouterr().out
    assert main(["zeros", "--count", "2", "--zero-cache", str(cache)]) == 0
    assert capsys.readouterr().out == first


def test_cli_overrides_environment():
    assert main(["zeros", "--count", "1", "--threads", "3", "--solver-tol", "1e-10"]) == 0
    settings = get_settings()
    assert settings.threads == 3
    assert settings.solver_tol == pytest.approx(1e-10)


def test_plain_output_uses_ten_digits(capsys):
    main(["radius", "--family", "star", "--norm", "g", "--beta", "0.5"])
    line = next(ln for ln in capsys.readouterr().out.splitlines() if ln.startswith("result.radius:"))
    value = line.split(":", 1)[1].strip()
    assert float(value) == pytest.approx(bessel_star_g(0.5), rel=1e-9)
    assert len(value.replace("0.", "", 1).lstrip("0")) <= 10
    assert not math.isnan(float(value))
