"""Typer CLI application."""

import json
from pathlib import Path
from typing import Annotated, Any, Optional

import typer
from pydantic import ValidationError
from rich.console import Console

from ..config import settings
from ..errors import EXIT_CONFIG, ConfigError
from ..log import configure_logging
from ..models import Command, RunConfig

console = Console()
app = typer.Typer(
    name="gafzero",
    help="Zeros of Gaussian random holomorphic sections: simulation and exact variance",
    no_args_is_help=True,
)

ConfigFile = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", help="JSON run config; flags override its keys"),
]
Output = Annotated[Optional[Path], typer.Option("--output", "-o", help="CSV artifact path")]
JsonOutput = Annotated[Optional[Path], typer.Option("--json", help="JSON artifact path")]
Ensemble = Annotated[
    Optional[str], typer.Option("--ensemble", "-e", help="Ensemble, e.g. su2:128 or bf:64")
]
DomainLiteral = Annotated[
    Optional[str], typer.Option("--domain", "-d", help="Domain, e.g. disk:fs:1.0 or !sphere")
]
TestFunctionLiteral = Annotated[
    Optional[str], typer.Option("--test-function", "-f", help="Bump, e.g. bump:0.5@0,0*1")
]
Trials = Annotated[Optional[int], typer.Option("--trials", "-n", help="Monte Carlo trials")]
Seed = Annotated[Optional[int], typer.Option("--seed", "-s", help="Base seed")]
Workers = Annotated[
    Optional[int], typer.Option("--workers", "-w", help="Worker processes (GAFZERO_WORKERS wins)")
]
Family = Annotated[Optional[str], typer.Option("--family", help="Ensemble family: su2, bf, su11")]
Degrees = Annotated[Optional[str], typer.Option("--N-list", help="Comma-separated degrees")]


def _load_config_file(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def _resolve(command: Command, config_file: Optional[Path], **flags: Any) -> RunConfig:
    """Merge settings defaults, the config file and explicit flags, in that order."""
    data: dict[str, Any] = {"n_trials": settings.n_trials, "seed": settings.seed}
    file_data = _load_config_file(config_file)
    quadrature = {**file_data.pop("quadrature", {}), **flags.pop("quadrature", {})}
    data.update(file_data)
    data.update({key: value for key, value in flags.items() if value is not None})
    if quadrature:
        data["quadrature"] = quadrature
    data["command"] = command.value
    return RunConfig.model_validate(data)


def _format(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "[green]✓[/green]" if value else "[red]✗[/red]"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _run(command: Command, config_file: Optional[Path], **flags: Any) -> None:
    from rich.table import Table

    from ..core.runner import execute

    try:
        config = _resolve(command, config_file, **flags)
    except (ConfigError, ValidationError) as e:
        console.print(f"[bold red]✗ Error:[/bold red] {e}")
        raise typer.Exit(code=EXIT_CONFIG) from e

    outcome = execute(config)
    if outcome.error is not None:
        console.print(f"[bold red]✗ Error:[/bold red] {outcome.error}")
        raise typer.Exit(code=outcome.exit_code)

    table = Table(title=f"gafzero {command.value}")
    for i, column in enumerate(outcome.columns):
        table.add_column(column, style="cyan" if i == 0 else None)
    for row in outcome.rows:
        table.add_row(*(_format(row.get(column)) for column in outcome.columns))
    console.print(table)
    if command == Command.PREDICT and config.json_output is None:
        console.print_json(data=outcome.result)
    for path in outcome.artifacts:
        console.print(f"[green]✓[/green] Wrote {path}")
    if outcome.exit_code:
        console.print("[bold red]✗ Some checks failed[/bold red]")
        raise typer.Exit(code=outcome.exit_code)


@app.callback()
def main_callback(
    log_level: Annotated[
        Optional[str], typer.Option("--log-level", "-l", help="Logging level")
    ] = None,
) -> None:
    """Zeros of Gaussian random holomorphic sections."""
    configure_logging(log_level or settings.log_level)


@app.command()
def simulate(
    config_file: ConfigFile = None,
    ensemble: Ensemble = None,
    domain: DomainLiteral = None,
    test_function: TestFunctionLiteral = None,
    trials: Trials = None,
    seed: Seed = None,
    workers: Workers = None,
    boundary_tolerance: Annotated[
        Optional[float],
        typer.Option("--boundary-tolerance", help="Boundary band relative to the domain radius"),
    ] = None,
    zeros_dump: Annotated[
        Optional[Path], typer.Option("--zeros-dump", help="CSV of zeros of the first trials")
    ] = None,
    coefficients_dump: Annotated[
        Optional[Path],
        typer.Option("--coefficients-dump", help="CSV of coefficients of the first trials"),
    ] = None,
    output: Output = None,
    json_output: JsonOutput = None,
) -> None:
    """Monte Carlo moments of a zero count or a linear statistic.

    Example:
        gafzero simulate --ensemble su2:128 --domain disk:fs:1.0 --trials 100000 --seed 7
    """
    _run(
        Command.SIMULATE,
        config_file,
        ensemble=ensemble,
        domain=domain,
        test_function=test_function,
        n_trials=trials,
        seed=seed,
        workers=workers,
        boundary_tolerance=boundary_tolerance,
        zeros_dump=zeros_dump,
        coefficients_dump=coefficients_dump,
        output=output,
        json_output=json_output,
    )


@app.command()
def predict(
    config_file: ConfigFile = None,
    theorem: Annotated[
        Optional[str],
        typer.Option("--theorem", "-t", help="number, volume, smooth or expected-count"),
    ] = None,
    n: Annotated[Optional[int], typer.Option("--N", help="Degree")] = None,
    m: Annotated[Optional[int], typer.Option("--m", help="Complex dimension")] = None,
    boundary_volume: Annotated[
        Optional[float], typer.Option("--boundary-volume", help="Vol(∂U) for m ≥ 2")
    ] = None,
    ensemble: Ensemble = None,
    family: Family = None,
    domain: DomainLiteral = None,
    test_function: TestFunctionLiteral = None,
    output: Output = None,
    json_output: JsonOutput = None,
) -> None:
    """Leading-order asymptotic predictions.

    Example:
        gafzero predict --theorem number --N 256 --domain disk:fs:1.0
    """
    _run(
        Command.PREDICT,
        config_file,
        theorem=theorem,
        N=n,
        m=m,
        boundary_volume=boundary_volume,
        ensemble=ensemble,
        family=family,
        domain=domain,
        test_function=test_function,
        output=output,
        json_output=json_output,
    )


@app.command()
def bipotential(
    config_file: ConfigFile = None,
    ensemble: Ensemble = None,
    domain: DomainLiteral = None,
    test_function: TestFunctionLiteral = None,
    mode: Annotated[
        Optional[str], typer.Option("--mode", help="Diagonal handling: offset or refine")
    ] = None,
    nodes: Annotated[
        Optional[int], typer.Option("--nodes", help="Boundary nodes per factor")
    ] = None,
    levels: Annotated[
        Optional[int], typer.Option("--levels", help="Boundary refinement doublings")
    ] = None,
    output: Output = None,
    json_output: JsonOutput = None,
) -> None:
    """Exact finite-N variance from the bipotential; the CSV holds the refinement table.

    Example:
        gafzero bipotential --ensemble su2:20 --domain disk:fs:1.0 --mode refine
    """
    quadrature = {
        key: value
        for key, value in {"mode": mode, "n": nodes, "levels": levels}.items()
        if value is not None
    }
    _run(
        Command.BIPOTENTIAL,
        config_file,
        ensemble=ensemble,
        domain=domain,
        test_function=test_function,
        quadrature=quadrature,
        output=output,
        json_output=json_output,
    )


@app.command("kernel-check")
def kernel_check(
    config_file: ConfigFile = None,
    ensemble: Ensemble = None,
    family: Family = None,
    degrees: Degrees = None,
    output: Output = None,
    json_output: JsonOutput = None,
) -> None:
    """Scaling residual, off-diagonal decay and correlation mass of P_N.

    Example:
        gafzero kernel-check --family su2 --N-list 64,256
    """
    _run(
        Command.KERNEL_CHECK,
        config_file,
        ensemble=ensemble,
        family=family,
        N_list=degrees,
        output=output,
        json_output=json_output,
    )


@app.command()
def normality(
    config_file: ConfigFile = None,
    ensemble: Ensemble = None,
    test_function: TestFunctionLiteral = None,
    trials: Trials = None,
    seed: Seed = None,
    workers: Workers = None,
    standardization: Annotated[
        Optional[str],
        typer.Option("--standardization", help="empirical or bipotential"),
    ] = None,
    output: Output = None,
    json_output: JsonOutput = None,
) -> None:
    """Kolmogorov–Smirnov test of the standardized linear statistic.

    Example:
        gafzero normality --ensemble su2:128 --test-function bump:0.5 --trials 2000
    """
    _run(
        Command.NORMALITY,
        config_file,
        ensemble=ensemble,
        test_function=test_function,
        n_trials=trials,
        seed=seed,
        workers=workers,
        standardization=standardization,
        output=output,
        json_output=json_output,
    )


@app.command()
def sweep(
    config_file: ConfigFile = None,
    family: Family = None,
    degrees: Degrees = None,
    domain: DomainLiteral = None,
    test_function: TestFunctionLiteral = None,
    trials: Trials = None,
    seed: Seed = None,
    workers: Workers = None,
    dilate: Annotated[
        Optional[bool],
        typer.Option("--dilate/--no-dilate", help="Run BF at N=1 on √N-dilated domains"),
    ] = None,
    output: Output = None,
    json_output: JsonOutput = None,
) -> None:
    """Empirical variance against the prediction over a list of degrees.

    Example:
        gafzero sweep --family su2 --N-list 64,128,256 --domain disk:fs:1.0 -o sweep.csv
    """
    _run(
        Command.SWEEP,
        config_file,
        family=family,
        N_list=degrees,
        domain=domain,
        test_function=test_function,
        n_trials=trials,
        seed=seed,
        workers=workers,
        dilate=dilate,
        output=output,
        json_output=json_output,
    )


@app.command()
def selftest(
    config_file: ConfigFile = None,
    trials: Trials = None,
    seed: Seed = None,
    draws: Annotated[
        Optional[int], typer.Option("--draws", help="Draws per pair-log-moment check")
    ] = None,
    output: Output = None,
    json_output: JsonOutput = None,
) -> None:
    """Run the oracle suite; exit 2 when any check fails.

    Example:
        gafzero selftest --trials 4000 --draws 200000
    """
    _run(
        Command.SELFTEST,
        config_file,
        n_trials=trials,
        seed=seed,
        n_draws=draws,
        output=output,
        json_output=json_output,
    )


@app.command()
def serve(
    host: str = typer.Option(
        settings.api_host,
        "--host",
        "-h",
        help="API host",
    ),
    port: int = typer.Option(
        settings.api_port,
        "--port",
        "-p",
        help="API port",
    ),
    reload: bool = typer.Option(
        settings.api_reload,
        "--reload",
        "-r",
        help="Enable auto-reload",
    ),
) -> None:
    """Start the read-only prediction API.

    Example:
        gafzero serve --port 8000 --reload
    """
    console.print("[bold]Starting gafzero API server[/bold]")
    console.print(f"→ http://{host}:{port}")
    console.print(f"→ Docs: http://{host}:{port}/docs")
    console.print(f"→ ReDoc: http://{host}:{port}/redoc")
    console.print()

    from ..api.app import serve as api_serve

    api_serve(host=host, port=port, reload=reload)


def main() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
