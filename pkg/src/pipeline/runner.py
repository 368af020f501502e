from __future__ import annotations

import datetime as dt
import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from pydantic import BaseModel

from src.algebra.commutative import render_polynomial, to_super
from src.algebra.errors import ConfigurationError, NambuError
from src.algebra.superpoly import to_rational
from src.config.schemas import CheckName, Command, Duration, Status
from src.config.settings import RuntimeSettings
from src.pipeline.context import PipelineContext
from src.pipeline.problem import BracketCase, ProblemFile
from src.step1_nambu.models import BracketValue, VerifyReport
from src.step1_nambu.tensor import bracket_eval
from src.step1_nambu.verifier import check_fundamental_identity, scan_casimirs
from src.step2_connection.curvature import maurer_cartan_report
from src.step3_resolve.io import check_resolvent, save_resolvent
from src.step3_resolve.tate import koszul, tate_extend
from src.step3_resolve.truncation import ResolventTruncation
from src.step4_perturb.brackets import DerivedBrackets
from src.step4_perturb.checks import check_algebroid_anchor, check_linfty
from src.step4_perturb.models import BracketEntry, DerivedBracketTable
from src.step4_perturb.state import PerturbationState, init, report, run
from src.step5_report.models import RunTrace, StageCount
from src.step5_report.writer import JsonFileReportWriter, parse_stages

logger = logging.getLogger(__name__)


@dataclass
class CommandOutcome:
    trace: RunTrace
    reports: dict[str, BaseModel] = field(default_factory=dict)
    stages: str | None = None


class NambuPipelineRunner:
    """Runs one command on one problem: Nambu -> connection -> resolvent -> perturbation -> report.

    Every command writes ``problem.json``, its reports, ``run_trace.json`` and
    ``summary.json`` into the run directory, also when a step raises.
    """

    def __init__(
        self,
        *,
        settings: RuntimeSettings,
        writer: JsonFileReportWriter | None = None,
    ) -> None:
        self._settings = settings
        self._writer = writer or JsonFileReportWriter(settings.artifacts_root)
        self._handlers: dict[Command, Callable[[PipelineContext], None]] = {
            Command.VERIFY: self._verify,
            Command.Z: self._z,
            Command.MC: self._mc,
            Command.RESOLVE: self._resolve,
            Command.PERTURB: self._perturb,
            Command.BRACKETS: self._brackets,
        }

    def run(
        self,
        *,
        command: Command,
        problem: ProblemFile,
        run_id: str,
        mod_ideal: bool = False,
        derived: bool = False,
    ) -> CommandOutcome:
        handler = self._handlers.get(command)
        if handler is None:
            raise ConfigurationError(f"{command.value} is not a single-problem command")
        context = PipelineContext(
            run_id=run_id,
            command=command,
            problem=problem,
            settings=self._settings,
            mod_ideal=mod_ideal,
            derived=derived,
        )
        self._emit_json(context, "problem.json", problem.model_dump(mode="json", by_alias=True))

        error: NambuError | None = None
        try:
            handler(context)
        except NambuError as exc:
            error = exc

        for name, payload in context.reports.items():
            self._emit_json(context, f"{name}.json", payload)

        trace = self._trace(context, error)
        self._writer.write(trace=trace)
        logger.info("%s on %s: %s", command.value, problem.label or run_id, trace.status.value)
        if error is not None:
            raise error
        stages = None
        if "pi_stages.txt" in context.artifacts:
            stages = (context.run_dir / "pi_stages.txt").read_text(encoding="utf-8")
        return CommandOutcome(trace=trace, reports=dict(context.reports), stages=stages)

    # commands ---------------------------------------------------------------

    def _verify(self, context: PipelineContext) -> None:
        tensor = context.tensor
        fi = check_fundamental_identity(tensor, modulo_ideal=context.mod_ideal, threads=self._settings.threads)
        casimirs = scan_casimirs(tensor, context.ideal, modulo_ideal=context.mod_ideal)
        cases = [case for case in context.problem.brackets if len(case.arguments) == tensor.arity]
        brackets = [
            BracketValue(arguments=entry.arguments, value=entry.value)
            for entry in self._evaluate_cases(context, cases)
        ]
        context.reports["fi_report"] = VerifyReport(
            label=context.problem.label,
            fundamental_identity=fi,
            casimirs=casimirs,
            brackets=brackets,
            all_brackets_zero=bool(brackets) and all(b.value == "0" for b in brackets),
        )
        context.check("fundamental identity", fi.is_nambu, f"{len(fi.fi_violations)} violations")
        if fi.decomposability_checked:
            context.check(
                "decomposability", not fi.decomposability_violations, f"{len(fi.decomposability_violations)} violations"
            )
        if casimirs.entries:
            context.check("casimir scan", True, "all casimir" if casimirs.all_casimir else "not all casimir", required=False)
        for text in context.problem.relations:
            value = context.problem.polynomial(text)
            context.check(f"relation {text}", not value, render_polynomial(value))

    def _z(self, context: PipelineContext) -> None:
        z = context.z
        failures = z.verify()
        context.reports["z_tensor"] = z.report()
        context.check("Z expansion", not failures, f"{len(failures)} rows fail to re-expand")

    def _mc(self, context: PipelineContext) -> None:
        mc = maurer_cartan_report(context.tensor, context.z, context.ideal)
        context.reports["mc_report"] = mc
        context.check("Maurer-Cartan modulo I^2", mc.mc_holds, "defect vanishes" if mc.defect_zero else "defect nonzero")
        context.check("curvature", all(value.vanishes for value in mc.curvatures))
        context.check("connection axiom", not mc.connection_axiom_violations)

    def _resolve(self, context: PipelineContext) -> None:
        truncation = self._truncation(context, context.level)
        path = save_resolvent(truncation, context.run_dir / "resolvent.json")
        context.artifacts.append(path.name)
        checked = check_resolvent(truncation)
        context.reports["resolvent_check"] = checked
        context.check("resolvent", checked.status == Status.PASS, "; ".join(checked.problems))

    def _perturb(self, context: PipelineContext) -> None:
        depth = max(context.depth, 1)
        state = self._state(context, depth)
        result = report(state)
        context.reports["perturbation"] = result
        path = self._writer.write_stages(
            path=context.run_dir / "pi_stages.txt",
            stages=[(stage.index, stage.value) for stage in state.stages],
        )
        context.artifacts.append(path.name)
        context.check("perturbation relations", result.status == Status.PASS, f"nonzero stages {result.nonzero_stages}")
        self._compare_goldens(context)
        self._run_checks(context)

    def _brackets(self, context: PipelineContext) -> None:
        cases = context.problem.brackets
        if not cases:
            raise ConfigurationError("the problem file lists no brackets to evaluate")
        context.reports["brackets"] = DerivedBracketTable(entries=self._evaluate_cases(context, cases))

    # helpers ----------------------------------------------------------------

    def _truncation(self, context: PipelineContext, level: int) -> ResolventTruncation:
        """The problem's resolvent, Tate-extended up to ``level`` when it stops short."""
        if context.truncation is not None and context.truncation.depth >= level:
            return context.truncation
        problem = context.problem
        truncation = problem.resolvent_truncation()
        if truncation is None:
            truncation = koszul(context.ideal, problem.weights)
        if truncation.depth < level:
            truncation, tate = tate_extend(truncation, level, context.cap)
            context.reports["tate_report"] = tate
            context.check("Tate extension", True, f"counts {tate.counts}")
            context.check("minimal generators", tate.minimal, ", ".join(tate.non_minimal), required=False)
        context.truncation = truncation
        return truncation

    def _state(self, context: PipelineContext, depth: int) -> PerturbationState:
        if context.state is not None and context.state.level >= depth:
            return context.state
        truncation = self._truncation(context, max(depth - 1, 1))
        state = init(context.problem.nambu_tensor(), truncation, trusted=context.problem.trusted)
        context.state = run(state, depth)
        return context.state

    def _evaluate_cases(self, context: PipelineContext, cases: list[BracketCase]) -> list[BracketEntry]:
        problem = context.problem
        entries: list[BracketEntry] = []
        brackets = DerivedBrackets(self._state(context, max(context.depth, 1))) if context.derived else None
        for case in cases:
            label = "{" + ", ".join(case.arguments) + "}"
            if brackets is not None:
                value = brackets(*(problem.element(a) for a in case.arguments))
                rendered = value.render_line()
                if case.expected is not None:
                    context.check(label, value == problem.element(case.expected), rendered)
            else:
                poly = bracket_eval(context.tensor, *(problem.polynomial(a) for a in case.arguments))
                rendered = render_polynomial(poly)
                if case.point is not None:
                    at = poly(*(to_rational(c) for c in case.point))
                    if case.expected is not None:
                        context.check(f"{label} at ({', '.join(case.point)})", at == to_rational(case.expected), str(at))
                elif case.expected is not None:
                    expected = problem.polynomial(case.expected)
                    if context.tensor.ideal is not None:
                        expected = context.tensor.ideal.normal_form(expected)
                    context.check(label, poly == expected, rendered)
            entries.append(BracketEntry(arity=len(case.arguments), arguments=case.arguments, value=rendered))
        return entries

    def _compare_goldens(self, context: PipelineContext) -> None:
        problem, state = context.problem, context.state
        if problem.golden is not None:
            for index, expected in sorted(parse_stages(problem.read_text(problem.golden)).items()):
                if index > state.level:
                    continue
                context.check(f"golden pi_{index}", state.stage(index) == expected, f"{len(expected)} terms")
        if problem.printed is not None:
            for index, printed in sorted(parse_stages(problem.read_text(problem.printed)).items()):
                if index > state.level or index < 2:
                    continue
                stage = state.stages[index - 1]
                holds = state.truncation.differential(printed, index - 1) == stage.source.scale("-1/2")
                context.check(f"printed pi_{index} relation", holds, f"{len(printed)} terms")

    def _run_checks(self, context: PipelineContext) -> None:
        problem, state = context.problem, context.state
        checks = set(self._settings.checks) | set(problem.checks)
        if CheckName.FI in checks and not problem.trusted:
            fi = check_fundamental_identity(state.tensor, threads=self._settings.threads)
            context.check("fundamental identity", fi.is_nambu)
        if CheckName.MC in checks:
            mc = maurer_cartan_report(state.tensor, state.z, state.truncation.ideal())
            context.reports["mc_report"] = mc
            context.check("Maurer-Cartan modulo I^2", mc.mc_holds)
        if CheckName.LINFTY in checks or CheckName.ANCHOR in checks:
            brackets = DerivedBrackets(state)
            samples = [problem.element(text) for text in problem.samples] or [
                to_super(g) for g in context.ideal.ring.gens
            ]
            if CheckName.LINFTY in checks:
                linfty = check_linfty(brackets, samples, state.arity + 1)
                context.reports["linfty_report"] = linfty
                context.check("homotopy Jacobi", linfty.status == Status.PASS, f"{linfty.checked} tuples")
            if CheckName.ANCHOR in checks:
                anchor = check_algebroid_anchor(brackets, samples)
                context.reports["anchor_report"] = anchor
                context.check("anchor", anchor.status == Status.PASS, f"{anchor.checked} tuples")

    def _trace(self, context: PipelineContext, error: NambuError | None) -> RunTrace:
        end = dt.datetime.now(dt.timezone.utc)
        start = context.run_started_at_utc
        duration = Duration(
            started_at_utc=start,
            ended_at_utc=end,
            duration_ms=max(0, int((end - start).total_seconds() * 1000)),
        )
        if error is not None:
            status = Status.ERROR
        elif any(check.required and check.status != Status.PASS for check in context.checks):
            status = Status.FAIL
        else:
            status = Status.PASS
        stage_terms = []
        if context.state is not None:
            stage_terms = [StageCount(index=s.index, terms=len(s.value)) for s in context.state.stages]
        return RunTrace(
            run_id=context.run_id,
            command=context.command.value,
            label=context.problem.label,
            status=status,
            error=None if error is None else f"{type(error).__name__}: {error}",
            duration=duration,
            artifacts=list(context.artifacts),
            stage_terms=stage_terms,
            checks=list(context.checks),
        )

    def _emit_json(self, context: PipelineContext, name: str, payload: BaseModel | dict) -> None:
        self._writer.write_json(path=context.run_dir / name, payload=payload)
        if name not in context.artifacts:
            context.artifacts.append(name)
