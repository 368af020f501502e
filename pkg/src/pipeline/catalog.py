from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from src.algebra.errors import ConfigurationError, NambuError
from src.config.schemas import Command, Status
from src.pipeline.problem import load_problem
from src.pipeline.runner import NambuPipelineRunner
from src.step5_report.models import ExampleReport, ExampleStep

logger = logging.getLogger(__name__)

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@dataclass(frozen=True)
class ExampleReplay:
    problem: str
    commands: tuple[Command, ...]
    mod_ideal: bool = False
    derived: bool = False


CATALOG: dict[str, tuple[ExampleReplay, ...]] = {
    "torus": (
        ExampleReplay("torus.json", (Command.VERIFY,)),
        ExampleReplay("torus_quotient.json", (Command.Z,)),
    ),
    "abelian24": (ExampleReplay("abelian24.json", (Command.VERIFY, Command.BRACKETS)),),
    "group-e108": (ExampleReplay("group_e108.json", (Command.VERIFY, Command.BRACKETS)),),
    "monomial-ci": (
        ExampleReplay("monomial_ci.json", (Command.Z, Command.MC, Command.RESOLVE, Command.PERTURB)),
    ),
    "monomial-nonci": (ExampleReplay("monomial_nonci.json", (Command.RESOLVE, Command.PERTURB)),),
    "angular-momentum": (
        ExampleReplay(
            "angular_momentum.json",
            (Command.VERIFY, Command.Z, Command.MC, Command.RESOLVE, Command.PERTURB),
        ),
    ),
}


def example_names(name: str) -> list[str]:
    if name == "all":
        return list(CATALOG)
    if name not in CATALOG:
        raise ConfigurationError(f"unknown example {name!r}; choose one of {', '.join(CATALOG)} or 'all'")
    return [name]


def run_examples(runner: NambuPipelineRunner, name: str, *, run_id: str) -> ExampleReport:
    """Replay catalogued examples; a failing step is recorded and the replay moves on."""
    names = example_names(name)
    report = ExampleReport(names=names)
    for example in names:
        for replay in CATALOG[example]:
            problem = load_problem(FIXTURES_DIR / replay.problem)
            stem = Path(replay.problem).stem
            for command in replay.commands:
                step_id = f"{run_id}/{stem}_{command.value}"
                try:
                    outcome = runner.run(
                        command=command,
                        problem=problem,
                        run_id=step_id,
                        mod_ideal=replay.mod_ideal,
                        derived=replay.derived,
                    )
                except NambuError as exc:
                    logger.warning("%s %s raised %s", stem, command.value, exc)
                    report.steps.append(
                        ExampleStep(
                            problem=stem,
                            command=command.value,
                            run_id=step_id,
                            status=Status.ERROR,
                            error=f"{type(exc).__name__}: {exc}",
                        )
                    )
                    continue
                trace = outcome.trace
                report.steps.append(
                    ExampleStep(
                        problem=stem,
                        command=command.value,
                        run_id=step_id,
                        status=trace.status,
                        failed_checks=[
                            check.name for check in trace.checks if check.required and check.status != Status.PASS
                        ],
                    )
                )
    return report
