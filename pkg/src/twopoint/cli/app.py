import logging
from pathlib import Path
from typing import Any, Callable, List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from twopoint.cli.commands import CommandResult, ExitCode, cmd_extract, cmd_invert, cmd_verify, exit_code_for
from twopoint.cli.config import FORMATS, RunConfig, load_config
from twopoint.cli.output import write_report
from twopoint.errors import ConfigError, TwoPointError
from twopoint.models import available_models

console = Console()
err_console = Console(stderr=True)
cp = console.print
app = typer.Typer(help="Extract geometric tensors from two-point functions and solve the inverse problem.")

TOL_PREFIX = "--tol."
EXTRA_ARGS = {"allow_extra_args": True, "ignore_unknown_options": True}

STATUS_STYLES = {
    "PASS": "green",
    "FAIL": "bold red",
    "ERROR": "bold red",
    "XFAIL": "yellow",
    "XPASS": "magenta",
    "INFO": "grey50",
}


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True)],
        force=True,
    )


def parse_tolerances(extra: List[str]) -> dict[str, float]:
    """
    ``--tol.<name> <value>`` or ``--tol.<name>=<value>`` pairs from the leftover arguments.

    Raises:
        ConfigError: an unknown argument, a missing value or a value that is not a number.
    """
    out: dict[str, float] = {}
    args = iter(extra)
    for arg in args:
        if not arg.startswith(TOL_PREFIX):
            raise ConfigError(f"Unexpected argument {arg!r}", "args", arg)
        name, sep, raw = arg[len(TOL_PREFIX) :].partition("=")
        if not sep:
            raw = next(args, "")
        if not name or not raw:
            raise ConfigError(f"{arg!r} needs a name and a value", "tolerances", arg)
        try:
            out[name] = float(raw)
        except ValueError:
            raise ConfigError(f"Tolerance for {name!r} must be a number, got {raw!r}", f"tol.{name}", raw) from None
    return out


def resolve_config(
    ctx: typer.Context,
    config_file: Optional[Path],
    **flags: Any,
) -> RunConfig:
    """File first, then flags that were given, then ``--tol.<name>`` overrides."""
    config = load_config(config_file)
    changes = {k: v for k, v in flags.items() if v is not None and k not in ("method", "grid")}
    if flags.get("method") is not None:
        changes["diff"] = config.diff.replace(method=flags["method"])
    if flags.get("grid") is not None:
        changes["solver"] = config.solver.replace(grid=flags["grid"])
    if changes.get("format") is not None and changes["format"] not in FORMATS:
        raise ConfigError(f"Unknown output format {changes['format']!r}", "format", changes["format"])
    tolerances = parse_tolerances(list(ctx.args))
    if tolerances:
        changes["tolerances"] = {**config.tolerances, **tolerances}
    return config.replace(**changes) if changes else config


def render(result: CommandResult, title: str) -> None:
    table = Table(title=title)
    table.add_column("#", justify="right")
    table.add_column("point")
    table.add_column("check")
    table.add_column("value", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("status")
    for row in result.rows:
        point = ", ".join(f"{c:.4g}" for c in row.point)
        tol = "" if row.tolerance is None else f"{row.tolerance:.1e}"
        style = STATUS_STYLES.get(row.status, "")
        table.add_row(str(row.point_index), point, row.check, f"{row.value:.3e}", tol, f"[{style}]{row.status}[/{style}]")
    cp(table)
    summary = dict(result.document["summary"])
    discrepancies = summary.pop("discrepancies", [])
    colour = "green" if result.exit_code == ExitCode.OK else "red"
    cp(f"[{colour}]exit {int(result.exit_code)}[/{colour}]: {summary}")
    for d in discrepancies:
        values = ", ".join(f"{k}={v:.6g}" for k, v in d.items() if k not in ("check", "status"))
        cp(f"[yellow]{d['status']}[/yellow] {d['check']}: {values}")


def execute(ctx: typer.Context, command: Callable[[], CommandResult], title: str, config: RunConfig) -> None:
    try:
        result = command()
    except TwoPointError as e:
        code = exit_code_for(e)
        err_console.print(f"[bold red]{type(e).__name__}[/bold red]: {e}")
        if isinstance(e, ConfigError) and e.key == "model":
            err_console.print(ctx.get_usage())
        raise typer.Exit(int(code)) from None
    render(result, title)
    if config.output is not None:
        write_report(config.output, config.format, result.document, result.rows, result.summary_rows)
    raise typer.Exit(int(result.exit_code))


def _prepare(ctx: typer.Context, config_file: Optional[Path], verbose: bool, **flags: Any) -> RunConfig:
    setup_logging(verbose)
    try:
        return resolve_config(ctx, config_file, **flags)
    except ConfigError as e:
        err_console.print(f"[bold red]ConfigError[/bold red]: {e}")
        raise typer.Exit(int(ExitCode.CONFIG_ERROR)) from None


ConfigOpt = typer.Option(None, "--config", "-c", help="JSON run configuration.")
ModelOpt = typer.Option(None, "--model", "-m", help="Model name, e.g. kl-bernoulli or quadratic:diag:1,2.")
PointsOpt = typer.Option(None, "--points", "-p", help="origin, base, grid:K, halton:K[:seed] or a,b;c,d.")
AlphaOpt = typer.Option(None, "--alpha", help="Skewness weight of the Lagrangian.")
OutOpt = typer.Option(None, "--out", "-o", help="Report path.")
FormatOpt = typer.Option(None, "--format", "-f", help="json or csv.")
MethodOpt = typer.Option(None, "--method", help="taylor-jet or finite-difference.")
WorkersOpt = typer.Option(None, "--workers", "-w", help="Worker-pool size; defaults to $TWOPOINT_WORKERS.")
VerboseOpt = typer.Option(False, "--verbose", "-v", help="Debug logging.")


@app.command(context_settings=EXTRA_ARGS)
def extract(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOpt,
    model: Optional[str] = ModelOpt,
    points: Optional[str] = PointsOpt,
    out: Optional[Path] = OutOpt,
    format: Optional[str] = FormatOpt,
    method: Optional[str] = MethodOpt,
    workers: Optional[int] = WorkersOpt,
    verbose: bool = VerboseOpt,
):
    """Extract g, T, Q1 and Q2 from a model's potential. Pass --tol.<name> VALUE to override a tolerance."""
    config = _prepare(
        ctx, config_file, verbose, model=model, points=points, output=out, format=format, method=method, workers=workers
    )
    execute(ctx, lambda: cmd_extract(config), f"extract {config.model}", config)


@app.command(context_settings=EXTRA_ARGS)
def invert(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOpt,
    model: Optional[str] = ModelOpt,
    points: Optional[str] = PointsOpt,
    alpha: Optional[float] = AlphaOpt,
    quartic: Optional[float] = typer.Option(None, "--quartic", help="Constant value of every C component."),
    grid: Optional[int] = typer.Option(None, "--grid", help="Integrator steps per trajectory."),
    out: Optional[Path] = OutOpt,
    format: Optional[str] = FormatOpt,
    workers: Optional[int] = WorkersOpt,
    verbose: bool = VerboseOpt,
):
    """Build the principal function of a model's (g, T) and re-extract both."""
    config = _prepare(
        ctx,
        config_file,
        verbose,
        model=model,
        points=points,
        alpha=alpha,
        quartic=quartic,
        grid=grid,
        output=out,
        format=format,
        workers=workers,
    )
    execute(ctx, lambda: cmd_invert(config), f"invert {config.model} (alpha={config.alpha:g})", config)


@app.command(context_settings=EXTRA_ARGS)
def verify(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOpt,
    only: Optional[List[str]] = typer.Option(None, "--only", help="Criterion key; repeatable."),
    out: Optional[Path] = OutOpt,
    format: Optional[str] = FormatOpt,
    verbose: bool = VerboseOpt,
):
    """Run the acceptance suite."""
    config = _prepare(ctx, config_file, verbose, output=out, format=format)
    execute(ctx, lambda: cmd_verify(config, only or None), "verify", config)


@app.command("models")
def list_models():
    """List model families."""
    for name in available_models():
        cp(name)
