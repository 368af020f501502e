from __future__ import annotations

import argparse
import datetime as dt
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from src.algebra.errors import ConfigurationError, MathematicalFailure, NambuError
from src.config.schemas import CheckName, Command, OutputFormat, Status
from src.config.settings import RuntimeSettings
from src.pipeline.catalog import CATALOG, run_examples
from src.pipeline.problem import load_problem
from src.pipeline.runner import CommandOutcome, NambuPipelineRunner
from src.step4_perturb.models import DerivedBracketTable
from src.step5_report.models import ExampleReport

logger = logging.getLogger("nambu")

_HELP = {
    Command.VERIFY: "check the fundamental identity, decomposability and listed brackets",
    Command.Z: "compute the Z tensor of an ideal under Pi",
    Command.MC: "check the Maurer-Cartan equation, curvature and connection axiom",
    Command.RESOLVE: "build and check a resolvent truncation",
    Command.PERTURB: "run the perturbation expansion and write pi_stages.txt",
    Command.BRACKETS: "evaluate the brackets listed in the problem file",
    Command.EXAMPLES: "replay the bundled examples",
}


def _parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="nambu", description="Nambu-Poisson ideals and their P-infinity resolvents")
    commands = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = commands.add_parser(command.value, help=_HELP[command])
        if command == Command.EXAMPLES:
            sub.add_argument("name", nargs="?", default="all", choices=[*CATALOG, "all"])
        else:
            sub.add_argument("problem", type=Path, help="problem file (JSON)")
        sub.add_argument("--depth", type=int, default=None, help="perturbation depth")
        sub.add_argument("--cap", type=int, default=None, help="internal degree cap for Tate extension")
        sub.add_argument("--level", type=int, default=None, help="resolvent level to build")
        sub.add_argument("--threads", type=int, default=None, help="worker threads for identity checks")
        sub.add_argument("--mod-ideal", action="store_true", help="reduce results modulo the ideal")
        sub.add_argument("--derived", action="store_true", help="evaluate derived brackets of the resolvent")
        sub.add_argument(
            "--check",
            action="append",
            default=[],
            choices=[name.value for name in CheckName],
            help="extra check to run after perturb (repeatable)",
        )
        sub.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], default=None)
        sub.add_argument("--run-id", default="", help="optional run id")
        sub.add_argument("--verbose", action="store_true")
    return parser.parse_args(argv)


def _settings(args: argparse.Namespace) -> RuntimeSettings:
    checks = {CheckName.FI, *(CheckName(name) for name in args.check)}
    return RuntimeSettings.from_env(
        depth=args.depth,
        degree_cap=args.cap,
        level=args.level,
        threads=args.threads,
        output_format=args.format,
        checks=frozenset(checks),
    )


def _configure_logging(verbose: bool, console: Console) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


class _Terminal:
    """Prints to the console and keeps every line for terminal_output.log."""

    def __init__(self, console: Console) -> None:
        self.console = console
        self.lines: list[str] = []

    def emit(self, message: str) -> None:
        self.console.print(message, markup=False, highlight=False)
        self.lines.append(message)

    def table(self, table: Table) -> None:
        self.console.print(table)
        with self.console.capture() as captured:
            self.console.print(table)
        self.lines.extend(captured.get().rstrip("\n").splitlines())


def _render_outcome(terminal: _Terminal, outcome: CommandOutcome) -> None:
    trace = outcome.trace
    terminal.emit(f"{trace.command} {trace.label or trace.run_id}: {trace.status.value}")
    if trace.checks:
        table = Table(title="checks")
        for column in ("check", "status", "detail"):
            table.add_column(column)
        for check in trace.checks:
            name = check.name if check.required else f"{check.name} (informational)"
            table.add_row(name, check.status.value, check.detail)
        terminal.table(table)
    brackets = outcome.reports.get("brackets")
    if isinstance(brackets, DerivedBracketTable):
        for entry in brackets.entries:
            terminal.emit(f"[{', '.join(entry.arguments)}] = {entry.value}")
    if outcome.stages:
        for line in outcome.stages.rstrip("\n").splitlines():
            terminal.emit(line)


def _render_examples(terminal: _Terminal, report: ExampleReport) -> None:
    table = Table(title="examples")
    for column in ("problem", "command", "status", "failed checks"):
        table.add_column(column)
    for step in report.steps:
        table.add_row(step.problem, step.command, step.status.value, step.error or ", ".join(step.failed_checks))
    terminal.table(table)
    terminal.emit(f"examples {', '.join(report.names)}: {report.status.value}")


def _persist_terminal_output(*, run_dir: Path, lines: list[str]) -> None:
    if not lines:
        return
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "terminal_output.log").write_text("\n".join(lines) + "\n", encoding="utf-8")

    trace_path = run_dir / "run_trace.json"
    if trace_path.exists():
        try:
            payload = json.loads(trace_path.read_text(encoding="utf-8"))
            payload["terminal_output"] = lines
            trace_path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
        except (OSError, ValueError):
            logger.debug("could not attach terminal output to %s", trace_path)


def _exit_code(status: Status) -> int:
    """A run whose required checks fail exits like a mathematical failure."""
    return 0 if status == Status.PASS else MathematicalFailure.exit_code


def main(argv: Sequence[str] | None = None, *, console: Console | None = None) -> int:
    args = _parse_args(argv)
    load_dotenv()
    console = console or Console()
    _configure_logging(args.verbose, console)
    terminal = _Terminal(console)

    try:
        settings = _settings(args)
    except ValidationError as exc:
        terminal.emit(f"invalid options: {exc}")
        return ConfigurationError.exit_code

    command = Command(args.command)
    run_id = args.run_id or f"run_{dt.datetime.now(dt.timezone.utc).strftime('%Y%m%d_%H%M%S')}"
    run_dir = settings.artifacts_root / run_id
    runner = NambuPipelineRunner(settings=settings)

    try:
        if command == Command.EXAMPLES:
            report = run_examples(runner, args.name, run_id=run_id)
            if settings.output_format == OutputFormat.JSON:
                terminal.emit(report.model_dump_json(indent=2))
            else:
                _render_examples(terminal, report)
            status = report.status
        else:
            problem = load_problem(args.problem)
            outcome = runner.run(
                command=command,
                problem=problem,
                run_id=run_id,
                mod_ideal=args.mod_ideal,
                derived=args.derived,
            )
            if settings.output_format == OutputFormat.JSON:
                terminal.emit(outcome.trace.model_dump_json(indent=2))
            else:
                _render_outcome(terminal, outcome)
            status = outcome.trace.status
    except NambuError as exc:
        terminal.emit(f"{type(exc).__name__}: {exc}")
        _persist_terminal_output(run_dir=run_dir, lines=terminal.lines)
        return exc.exit_code

    _persist_terminal_output(run_dir=run_dir, lines=terminal.lines)
    return _exit_code(status)


if __name__ == "__main__":
    sys.exit(main())
