"""CLI interface for the toric symplectic-cohomology toolkit."""

import json
import logging
from typing import List, Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import __version__
from .catalog import EXAMPLES
from .config import KNOWN_SECTIONS, get_config_unvalidated, split_csv
from .dsl import parse_model
from .exceptions import DomainError, ParseError, ToolkitError
from .services.analysis import AnalysisOptions, analyze, emit

app = typer.Typer(
    name="toricsh",
    help="""
    [bold]Toric symplectic cohomology toolkit[/bold]

    Quantum and symplectic cohomology, Lefschetz-domain certificates, torus
    bounds and mirror checks for toric surgery models.

    [cyan]Examples:[/cyan]
      toricsh analyze "O(-1)^2 -> P^3"
      toricsh analyze "Bl(3, C^2)" --json
      toricsh analyze "O(-1) -> P^3" --level 1 --level 2 --sections sh,lefschetz
      toricsh examples
    """,
    no_args_is_help=True,
)

console = Console(stderr=True)
logger = logging.getLogger(__name__)


def _parse_sections(value: Optional[str], default: List[str]) -> tuple[str, ...]:
    if value is None:
        return tuple(default)
    chosen = split_csv(value)
    unknown = sorted(set(chosen) - set(KNOWN_SECTIONS))
    if unknown:
        raise typer.BadParameter(
            f"unknown section(s): {', '.join(unknown)}; valid: {', '.join(KNOWN_SECTIONS)}",
            param_hint="--sections",
        )
    return tuple(chosen)


@app.command("analyze")
def analyze_command(
    expr: str = typer.Argument(..., help='Model expression, e.g. "O(-1)^2 -> P^3"'),
    json_output: bool = typer.Option(False, "--json", help="Emit the report as JSON"),
    level: Optional[List[int]] = typer.Option(
        None,
        "--level",
        "-l",
        min=1,
        help="Lefschetz level to check (repeatable; default: certified ranges of the pieces)",
    ),
    sections: Optional[str] = typer.Option(
        None,
        "--sections",
        "-s",
        help=f"Comma-separated subset of {','.join(KNOWN_SECTIONS)}",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Show debug logs and tracebacks",
    ),
) -> None:
    """Analyze a model expression and print its report."""
    config = get_config_unvalidated()
    logging.basicConfig(
        level=logging.DEBUG if verbose else config.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        config.validate_config()
    except ValueError as e:
        console.print(f"\n[bold red]✗ Error:[/bold red] {e}")
        raise typer.Exit(code=1)

    chosen = _parse_sections(sections, config.get_sections())
    levels = level or config.get_levels()
    options = AnalysisOptions(
        sections=chosen,
        levels=tuple(levels) if levels is not None else None,
    )

    try:
        model = parse_model(
            expr,
            max_depth=config.max_model_depth,
            max_blowups=config.max_blowup_count,
        )
        report = analyze(model, options, input_text=expr)
    except ToolkitError as e:
        kind = "Parse error" if isinstance(e, ParseError) else "Error"
        console.print(f"\n[bold red]✗ {kind}:[/bold red] {escape(e.message)}")
        path = e.details.get("path")
        if path:
            console.print(f"[dim]at {escape(path)}[/dim]")
        if verbose:
            import traceback

            console.print(f"[dim white]{escape(traceback.format_exc())}[/dim white]")
        raise typer.Exit(code=e.exit_code)

    payload = emit(report, "json" if json_output else "text")
    typer.echo(payload.decode("utf-8"), nl=False)

    if report.mirror is not None and not report.mirror.matches_torus_bound:
        console.print(
            f"\n[bold red]✗ Error:[/bold red] brane census total {report.mirror.total_branes} "
            "does not match the torus bound"
        )
        raise typer.Exit(code=DomainError.exit_code)


@app.command()
def examples(
    json_output: bool = typer.Option(False, "--json", help="List the catalog as JSON"),
) -> None:
    """List the built-in example models."""
    if json_output:
        rows = [
            {
                "name": e.name,
                "expr": e.expr,
                "description": e.description,
                "sh_dim": e.sh_dim,
                "torus_bound": e.torus_bound,
            }
            for e in EXAMPLES
        ]
        typer.echo(json.dumps(rows, indent=2))
        return

    table = Table(title="Built-in examples")
    table.add_column("name", style="cyan")
    table.add_column("expression")
    table.add_column("dim SH", justify="right")
    table.add_column("description", style="dim")
    for e in EXAMPLES:
        table.add_row(e.name, e.expr, str(e.sh_dim), e.description)
    Console().print(table)


@app.command()
def version() -> None:
    """Show version information."""
    typer.echo(f"toricsh version {__version__}")


if __name__ == "__main__":
    app()
