"""
Command-line interface for qinfo.

Commands compute entropies and ledgers of states, print the summary tables
of named states, evaluate the two-measurement protocol, run local-coherence
searches and run the invariant suites. Machine-readable output goes to
stdout; logging and errors go to stderr.

Exit codes: 0 success, 1 failed validation, 2 parse or usage error,
3 a parsed state is not a valid density operator.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
import yaml
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.syntax import Syntax

from .core.config import ConfigManager, QInfoConfig
from .core.errors import DimensionError, InvalidPartition, InvalidState, QInfoError, StateParseError
from .core.types import OutputFormat, PartitionLabel, SuiteLevel, TcorrMode, singletons
from .entropy.measures import coherent_entropy, von_neumann
from .io import format_partition, parse_partition, parse_spectrum, parse_state_spec
from .multipartite.ledger import chain_ledger
from .optimize.local import sc_local
from .state.density import DensityOperator
from .tables import TABLE_STATES, named_state_table
from .timechannel.protocol import analyze_protocol, optimal_protocol
from .timechannel.sampling import sample_protocol
from .validation import default_registry

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID_STATE = 3

QUANTITIES = ("S", "Sc", "I", "ledger")

# Create CLI application
app = typer.Typer(
    name="qinfo",
    help="qinfo - coherent entropy, local coherence and time correlations of quantum states",
    add_completion=False,
)

# Configuration commands
config_app = typer.Typer(name="config", help="Configuration management")
app.add_typer(config_app)

# Stdout stays machine-readable; everything human-facing goes to stderr
console = Console()
err_console = Console(stderr=True)


def setup_cli_logging(level: str = "WARNING") -> None:
    """Route qinfo logs and warnings through a RichHandler on stderr."""
    package_logger = logging.getLogger("qinfo")
    for handler in list(package_logger.handlers):
        if isinstance(handler, RichHandler):
            package_logger.removeHandler(handler)
    handler = RichHandler(console=err_console, show_path=False, show_time=False)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    package_logger.addHandler(handler)
    package_logger.setLevel(level.upper())

    logging.captureWarnings(True)
    warnings_logger = logging.getLogger("py.warnings")
    if not any(isinstance(h, RichHandler) for h in warnings_logger.handlers):
        warnings_logger.addHandler(handler)


def _fail(message: str, code: int) -> None:
    err_console.print(f"[red]{message}[/red]")
    raise typer.Exit(code)


def _emit_json(data: Any) -> None:
    typer.echo(json.dumps(data, indent=2))


def _load_config(
    config_file: Optional[str],
    seed: Optional[int] = None,
    threads: Optional[int] = None,
    restarts: Optional[int] = None,
    max_iters: Optional[int] = None,
    verbose: bool = False,
) -> QInfoConfig:
    """Configuration file (or defaults and QINFO_* variables) with flag overrides applied."""
    updates: Dict[str, Any] = {"optimizer": {}, "sampling": {}}
    if seed is not None:
        updates["seed"] = seed
        updates["optimizer"]["seed"] = seed
        updates["sampling"]["seed"] = seed
    if threads is not None:
        updates["threads"] = threads
        updates["optimizer"]["threads"] = threads
    if restarts is not None:
        updates["optimizer"]["restarts"] = restarts
    if max_iters is not None:
        updates["optimizer"]["max_iters"] = max_iters

    try:
        manager = ConfigManager(config_file)
        config = manager.load()
        config = manager.update_config(updates)
    except (OSError, ValueError, yaml.YAMLError) as e:
        setup_cli_logging("DEBUG" if verbose else "WARNING")
        _fail(f"Configuration error: {e}", EXIT_USAGE)

    setup_cli_logging("DEBUG" if verbose else config.logging_level)
    for issue in ConfigManager.validate_config(config):
        logging.getLogger(__name__).warning("Configuration: %s", issue)
    return config


def _load_state(spec: str) -> DensityOperator:
    try:
        return parse_state_spec(spec)
    except StateParseError as e:
        _fail(f"Could not parse state '{spec}': {e}", EXIT_USAGE)
    except (InvalidState, DimensionError) as e:
        _fail(f"Invalid state '{spec}': {e}", EXIT_INVALID_STATE)


def _load_parts(spec: Optional[str], rho: DensityOperator) -> List[PartitionLabel]:
    if spec is None:
        return singletons(rho.n_parts)
    try:
        return parse_partition(spec, rho.n_parts)
    except (StateParseError, InvalidPartition) as e:
        _fail(f"Invalid partition '{spec}': {e}", EXIT_USAGE)


@app.command()
def compute(
    state: str = typer.Option(..., "--state", "-s", help="State: bell, ghz3, w3, mixed:<d>, bloch:<x,y,z>, file:<path.json>, ..."),
    quantities: str = typer.Option("S,Sc", "--quantities", "-q", help="Comma-separated subset of S, Sc, I, ledger"),
    parts: Optional[str] = typer.Option(None, "--parts", "-p", help="Partition such as 0|1|2 or 01|2 (default: one part per subsystem)"),
    config_file: Optional[str] = typer.Option(None, "--config", "-c", help="Path to configuration file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """Entropies, mutual informations and ledgers of a state, as JSON."""
    _load_config(config_file, verbose=verbose)

    requested = [q.strip() for q in quantities.split(",") if q.strip()]
    unknown = [q for q in requested if q not in QUANTITIES]
    if not requested or unknown:
        _fail(f"Unknown quantities {unknown}; choose from {', '.join(QUANTITIES)}", EXIT_USAGE)

    rho = _load_state(state)
    labels = _load_parts(parts, rho)

    report: Dict[str, Any] = {"state": state, "dims": list(rho.dims)}
    if "S" in requested:
        report["S"] = von_neumann(rho)
    if "Sc" in requested:
        report["Sc"] = coherent_entropy(rho)
    if "I" in requested or "ledger" in requested:
        if len(labels) < 2:
            _fail("Mutual information and ledgers need at least two parts", EXIT_USAGE)
        ledger = chain_ledger(rho, labels)
        if "I" in requested:
            report["I"] = {f"{i.left}:{i.right}": i.value for i in ledger.informations}
        if "ledger" in requested:
            report["ledger"] = dict(ledger.to_flat_dict(), balanced=ledger.balanced)
        report["parts"] = format_partition(labels)

    _emit_json(report)


@app.command()
def table(
    state: str = typer.Argument(..., help="Named state: bell, ghz3 or w3"),
    format: OutputFormat = typer.Option(OutputFormat.MARKDOWN, "--format", "-f", help="Output format"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="Random restarts of the local search"),
    max_iters: Optional[int] = typer.Option(None, "--max-iters", help="Iteration cap per restart"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed (falls back to QINFO_SEED)"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads for restarts"),
    config_file: Optional[str] = typer.Option(None, "--config", "-c", help="Path to configuration file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """Summary table of S, S_c, G, L, I and E_f over every marginal of a named state."""
    config = _load_config(config_file, seed, threads, restarts, max_iters, verbose)
    name = state.lower()
    if name not in TABLE_STATES:
        _fail(f"Tables exist for {', '.join(TABLE_STATES)}, not '{state}'", EXIT_USAGE)

    result = named_state_table(name, config.optimizer)
    precision = config.table_precision
    if format == OutputFormat.JSON:
        _emit_json(result.to_json_dict())
    elif format == OutputFormat.CSV:
        typer.echo(result.to_csv(precision), nl=False)
    elif format == OutputFormat.RICH:
        console.print(result.to_rich(precision))
    else:
        typer.echo(result.to_markdown(precision))


@app.command()
def tcorr(
    spectrum: str = typer.Option(..., "--spectrum", help="Target spectrum, e.g. 0.8,0.2"),
    mode: TcorrMode = typer.Option(TcorrMode.ANALYTIC, "--mode", "-m", help="analytic or mc"),
    n_samples: Optional[int] = typer.Option(None, "--n", help="Monte Carlo shots"),
    shards: Optional[int] = typer.Option(None, "--shards", help="Independent sampling shards"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed (falls back to QINFO_SEED)"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads for shards"),
    counts_csv: Optional[Path] = typer.Option(None, "--counts-csv", help="Write sampled counts as s1,s2,count"),
    config_file: Optional[str] = typer.Option(None, "--config", "-c", help="Path to configuration file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """Time correlations of the optimal protocol for a target spectrum."""
    config = _load_config(config_file, seed, threads, verbose=verbose)
    try:
        spec = parse_spectrum(spectrum)
        protocol = optimal_protocol(spec)
    except QInfoError as e:
        _fail(f"Invalid spectrum '{spectrum}': {e}", EXIT_USAGE)

    report = analyze_protocol(protocol)
    target = coherent_entropy(spec.to_density())
    out: Dict[str, Any] = {
        "d": report.d,
        "spectrum": spec.eigenvalues.tolist(),
        "mutual_information": report.mutual_information,
        "coherent_entropy": target,
        "difference": report.mutual_information - target,
        "c1": report.c1,
        "c2": report.c2,
        "p1": report.p1,
        "p2": report.p2,
        "equivalent_intermediates": report.equivalent_intermediates,
    }

    if mode == TcorrMode.MC:
        sampling = config.sampling
        n = n_samples if n_samples is not None else sampling.n_samples
        k = shards if shards is not None else sampling.shards
        try:
            sample = sample_protocol(
                protocol.rho_in, protocol.meas1, protocol.channel, protocol.meas2,
                n_samples=n, seed=sampling.seed, shards=k, threads=config.threads,
            )
        except QInfoError as e:
            _fail(f"Sampling failed: {e}", EXIT_USAGE)
        se = sample.standard_error
        deviation = sample.mutual_information - sample.bias - report.mutual_information
        out["monte_carlo"] = {
            "n_samples": sample.n_samples,
            "seed": sample.seed,
            "shards": sample.shards,
            "estimate": sample.mutual_information,
            "standard_error": se,
            "bias": sample.bias,
            "z_score": deviation / se if se > 0 else 0.0,
        }
        if counts_csv is not None:
            counts_csv.write_text(sample.to_csv())

    _emit_json(out)


@app.command("optimize-local")
def optimize_local(
    state: str = typer.Option(..., "--state", "-s", help="State specification"),
    parts: Optional[str] = typer.Option(None, "--parts", "-p", help="Partition such as 0|1 (default: one part per subsystem)"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="Random restarts"),
    max_iters: Optional[int] = typer.Option(None, "--max-iters", help="Iteration cap per restart"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed (falls back to QINFO_SEED)"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads for restarts"),
    traces: bool = typer.Option(False, "--traces", help="Include per-restart traces"),
    config_file: Optional[str] = typer.Option(None, "--config", "-c", help="Path to configuration file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """Local coherent entropy, coherence gap and local correlations, as JSON."""
    config = _load_config(config_file, seed, threads, restarts, max_iters, verbose)
    rho = _load_state(state)
    labels = _load_parts(parts, rho)

    result = sc_local(rho, labels, config.optimizer)
    exclude = None if traces else {"traces_max", "traces_min"}
    data = result.model_dump(mode="json", exclude=exclude)
    data["converged"] = result.converged
    _emit_json(data)


@app.command()
def validate(
    suite: SuiteLevel = typer.Argument(SuiteLevel.FAST, help="fast or all"),
    check: Optional[List[str]] = typer.Option(None, "--check", help="Run only the named check (repeatable)"),
    list_only: bool = typer.Option(False, "--list", help="List check names and exit"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """Run the invariant suite; exit 1 when any check fails."""
    setup_cli_logging("DEBUG" if verbose else "WARNING")
    names = default_registry.list_checks(suite)
    if list_only:
        _emit_json(names)
        return
    if check:
        unknown = [c for c in check if default_registry.get(c) is None]
        if unknown:
            _fail(f"Unknown checks: {', '.join(unknown)}", EXIT_USAGE)
        names = list(check)

    report = default_registry.run(suite, names)
    _emit_json(report.to_summary())
    if not report.passed:
        for failure in report.failures:
            err_console.print(f"[red]FAILED {failure.name}: {failure.message}[/red]")
        raise typer.Exit(EXIT_FAILED)


@config_app.command("create")
def create_config(
    output: str = typer.Option("qinfo_config.json", "--output", "-o", help="Output file path (.json, .yaml or .toml)"),
):
    """Create a configuration file with default settings."""
    try:
        QInfoConfig().save_to_file(output)
    except OSError as e:
        _fail(f"Error creating configuration: {e}", EXIT_USAGE)
    err_console.print(f"[green]Configuration created: {output}[/green]")


@config_app.command("validate")
def validate_config(
    config_file: str = typer.Argument(..., help="Path to configuration file"),
):
    """Validate a configuration file."""
    try:
        config = QInfoConfig.from_file(config_file)
    except (OSError, ValueError, yaml.YAMLError) as e:
        _fail(f"Configuration validation failed: {e}", EXIT_USAGE)

    issues = ConfigManager.validate_config(config)
    if issues:
        for issue in issues:
            err_console.print(f"[yellow]{issue}[/yellow]")
        _fail(f"Configuration has {len(issues)} issue(s): {config_file}", EXIT_USAGE)
    err_console.print(f"[green]Configuration is valid: {config_file}[/green]")


@config_app.command("show")
def show_config(
    config_file: Optional[str] = typer.Argument(None, help="Path to configuration file (shows the effective default if omitted)"),
    as_json: bool = typer.Option(False, "--json", help="Print plain JSON"),
):
    """Display the effective configuration."""
    try:
        config = ConfigManager(config_file).load()
    except (OSError, ValueError, yaml.YAMLError) as e:
        _fail(f"Error loading configuration: {e}", EXIT_USAGE)

    text = json.dumps(config.to_dict(), indent=2)
    if as_json:
        typer.echo(text)
    else:
        console.print(Panel(Syntax(text, "json"), title="Configuration", border_style="blue"))


def main():
    """Main entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
