"""Tests for the ``python -m toricsh`` entrypoint."""

from typer.testing import CliRunner

from toricsh import __main__ as main_module
from toricsh import cli

runner = CliRunner()


def test_main_exposes_cli_app():
    assert main_module.app is cli.app


def test_main_shows_help_when_no_subcommand():
    """No arguments prints the help text."""
    result = runner.invoke(main_module.app, [])
    assert result.exit_code in (0, 2)
    assert "Toric symplectic cohomology toolkit" in result.output


def test_main_help_lists_commands():
    result = runner.invoke(main_module.app, ["--help"])
    assert result.exit_code == 0
    for command in ("analyze", "examples", "version"):
        assert command in result.output
