"""Test suite for the toricsh CLI."""

import json

from typer.testing import CliRunner

from toricsh.cli import app
from toricsh.catalog import EXAMPLES
from toricsh.config import reload_config
from toricsh.mirror import BraneCensus, LeafCensus

runner = CliRunner()


def test_cli_analyze_text():
    """Text report goes to stdout."""
    result = runner.invoke(app, ["analyze", "O(-1) -> P^2"])
    assert result.exit_code == 0
    assert "toricsh report" in result.stdout
    assert "QH* = K[x]/(x^3 + 3*q^2*x)" in result.stdout
    assert "SH* = K[x]/(x^2 + 3*q^2)" in result.stdout


def test_cli_analyze_json():
    """Test --json emits the full report."""
    result = runner.invoke(app, ["analyze", "Bl(3, C^2)", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["normalized_expr"] == "Bl(3, C^2)"
    assert data["bounds"]["torus_bound"] == 3
    assert data["mirror"]["total_branes"] == 3


def test_cli_sections_and_levels():
    """Test --sections and repeated --level."""
    result = runner.invoke(
        app,
        ["analyze", "O(-1) -> P^3", "--json", "-s", "lefschetz", "-l", "1", "-l", "2"],
    )
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["sections"] == ["lefschetz"]
    assert data["qh"] is None
    assert data["lefschetz"]["levels_checked"] == [1, 2]
    assert [v["overall"] for v in data["lefschetz"]["verdicts"]] == ["certified", "certified"]


def test_cli_unknown_section():
    """Unknown section names are a usage error."""
    result = runner.invoke(app, ["analyze", "C^2", "--sections", "qh,homology"])
    assert result.exit_code == 2
    assert "homology" in result.output


def test_cli_parse_error():
    """Syntax errors exit with code 2 and a position."""
    result = runner.invoke(app, ["analyze", "O(-1) -> Q^2"])
    assert result.exit_code == 2
    assert "Parse error" in result.output
    assert "column 10" in result.output


def test_cli_domain_error():
    """Domain errors exit with code 3."""
    result = runner.invoke(app, ["analyze", "C^2 # C^3"])
    assert result.exit_code == 3
    assert "dimension mismatch" in result.output


def test_cli_census_mismatch_fails(monkeypatch):
    """A brane census that misses the torus bound exits with code 3."""
    census = BraneCensus((LeafCensus("$", "C^2", 1, 2, "t", True),), torus_bound=0)
    monkeypatch.setattr("toricsh.services.analysis.brane_census", lambda model: census)
    result = runner.invoke(app, ["analyze", "C^2", "--json", "-s", "mirror"])
    assert result.exit_code == 3
    assert "does not match the torus bound" in result.output


def test_cli_level_out_of_range():
    result = runner.invoke(app, ["analyze", "C^4", "--level", "5"])
    assert result.exit_code == 3
    assert "level 5 outside 1..4" in result.output


def test_cli_level_must_be_positive():
    result = runner.invoke(app, ["analyze", "C^4", "--level", "0"])
    assert result.exit_code == 2


def test_cli_verbose_prints_traceback():
    result = runner.invoke(app, ["analyze", "Bl(3, C^2", "--verbose"])
    assert result.exit_code == 2
    assert "Traceback" in result.output


def test_cli_default_sections_from_env(monkeypatch):
    """TORICSH_DEFAULT_SECTIONS narrows the report when --sections is omitted."""
    monkeypatch.setenv("TORICSH_DEFAULT_SECTIONS", "bounds")
    reload_config()
    result = runner.invoke(app, ["analyze", "Bl(2, C^3)", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["sections"] == ["bounds"]
    assert data["bounds"]["torus_bound"] == 4


def test_cli_max_blowups_from_env(monkeypatch):
    monkeypatch.setenv("TORICSH_MAX_BLOWUP_COUNT", "8")
    reload_config()
    result = runner.invoke(app, ["analyze", "Bl(9, C^2)"])
    assert result.exit_code == 3
    assert "exceed the limit of 8" in result.output


def test_cli_invalid_config(monkeypatch):
    """Invalid configuration exits with code 1."""
    monkeypatch.setenv("TORICSH_DEFAULT_LEVELS", "one,two")
    reload_config()
    result = runner.invoke(app, ["analyze", "C^2"])
    assert result.exit_code == 1
    assert "Configuration validation failed" in result.output


def test_cli_examples_json():
    result = runner.invoke(app, ["examples", "--json"])
    assert result.exit_code == 0
    rows = json.loads(result.stdout)
    assert [row["name"] for row in rows] == [e.name for e in EXAMPLES]
    assert rows[0]["expr"] == "O(-1) -> P^1"


def test_cli_examples_table():
    result = runner.invoke(app, ["examples"])
    assert result.exit_code == 0
    assert "Built-in examples" in result.output
    assert "ball" in result.output


def test_cli_version():
    """Test version command."""
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert "toricsh version 0.1.0" in result.output
