import json

import pytest

from src.algebra.errors import OddArity
from src.config.schemas import Command, Status
from src.config.settings import RuntimeSettings
from src.pipeline.catalog import FIXTURES_DIR, run_examples
from src.pipeline.problem import load_problem
from src.pipeline.runner import NambuPipelineRunner
from src.step5_report.writer import parse_stages


def _runner(tmp_path, **settings) -> NambuPipelineRunner:
    settings.setdefault("checks", frozenset())
    return NambuPipelineRunner(settings=RuntimeSettings(artifacts_root=tmp_path, **settings))


def _run(tmp_path, fixture: str, command: Command, **options):
    problem = load_problem(FIXTURES_DIR / fixture)
    run_id = f"{problem.label}_{command.value}"
    return _runner(tmp_path).run(command=command, problem=problem, run_id=run_id, **options)


def _failed(outcome) -> list[str]:
    return [check.name for check in outcome.trace.checks if check.required and check.status != Status.PASS]


def test_monomial_complete_intersection_replays_its_expansion(tmp_path) -> None:
    outcome = _run(tmp_path, "monomial_ci.json", Command.PERTURB)
    assert outcome.trace.status == Status.PASS, _failed(outcome)
    names = [check.name for check in outcome.trace.checks]
    for index in range(1, 8):
        assert f"golden pi_{index}" in names
    assert "Maurer-Cartan modulo I^2" in names

    golden = parse_stages((FIXTURES_DIR / "monomial_ci_pi.txt").read_text(encoding="utf-8"))
    assert parse_stages(outcome.stages) == golden
    run_dir = tmp_path / "monomial-ci_perturb"
    assert (run_dir / "pi_stages.txt").exists()
    perturbation = json.loads((run_dir / "perturbation.json").read_text(encoding="utf-8"))
    assert perturbation["nonzero_stages"] == [1, 2, 3]
    assert perturbation["resolvent_counts"] == [2, 0, 0, 0, 0, 0]
    summary = json.loads((run_dir / "summary.json").read_text(encoding="utf-8"))
    assert summary["nonzero_stages"] == [1, 2, 3]


def test_monomial_complete_intersection_connection(tmp_path) -> None:
    z = _run(tmp_path, "monomial_ci.json", Command.Z)
    assert z.trace.status == Status.PASS
    assert not z.reports["z_tensor"].all_zero
    mc = _run(tmp_path, "monomial_ci.json", Command.MC)
    assert mc.trace.status == Status.PASS, _failed(mc)


def test_monomial_non_complete_intersection_satisfies_every_relation(tmp_path) -> None:
    resolved = _run(tmp_path, "monomial_nonci.json", Command.RESOLVE)
    assert resolved.trace.status == Status.PASS, _failed(resolved)
    assert resolved.reports["resolvent_check"].counts[:2] == [2, 1]
    assert (tmp_path / "monomial-nonci_resolve" / "resolvent.json").exists()

    outcome = _run(tmp_path, "monomial_nonci.json", Command.PERTURB)
    assert outcome.trace.status == Status.PASS, _failed(outcome)
    result = outcome.reports["perturbation"]
    assert result.depth == 5
    assert all(stage.relation_holds for stage in result.stages)
    golden = parse_stages((FIXTURES_DIR / "monomial_nonci_pi.txt").read_text(encoding="utf-8"))
    stages = parse_stages(outcome.stages)
    assert sorted(golden) == [1, 2, 3, 4, 5]
    for index in range(1, 6):
        assert stages[index] == golden[index], index
    names = [check.name for check in outcome.trace.checks]
    assert "golden pi_5" in names
    assert result.residual_terms == 0


def test_angular_momentum_expansion(tmp_path) -> None:
    outcome = _run(tmp_path, "angular_momentum.json", Command.PERTURB)
    assert outcome.trace.status == Status.PASS, _failed(outcome)
    stages = parse_stages(outcome.stages)
    assert [(index, len(stages[index])) for index in sorted(stages)] == [(1, 36), (2, 0), (3, 42), (4, 36)]
    result = outcome.reports["perturbation"]
    assert result.stages[3].filtration == 7
    assert result.stages[3].relation_holds
    assert result.residual_terms == 0

    golden = parse_stages((FIXTURES_DIR / "angular_momentum_pi.txt").read_text(encoding="utf-8"))
    assert stages[3] == golden[3]
    names = [check.name for check in outcome.trace.checks]
    assert "golden pi_3" in names
    printed = [check for check in outcome.trace.checks if check.name.startswith("printed")]
    assert [check.name for check in printed] == ["printed pi_3 relation"]
    assert all(check.required and check.status == Status.PASS for check in printed)


def test_angular_momentum_generators_are_casimirs(tmp_path) -> None:
    problem = load_problem(FIXTURES_DIR / "angular_momentum.json")
    runner = _runner(tmp_path, threads=2)
    verify = runner.run(command=Command.VERIFY, problem=problem, run_id="verify")
    assert verify.trace.status == Status.PASS, _failed(verify)
    assert verify.reports["fi_report"].casimirs.all_casimir
    z = runner.run(command=Command.Z, problem=problem, run_id="z")
    assert z.reports["z_tensor"].all_zero


@pytest.mark.parametrize("fixture", ["abelian24.json", "group_e108.json"])
def test_invariant_brackets(tmp_path, fixture: str) -> None:
    verify = _run(tmp_path, fixture, Command.VERIFY)
    assert verify.trace.status == Status.PASS, _failed(verify)
    brackets = _run(tmp_path, fixture, Command.BRACKETS)
    assert brackets.trace.status == Status.PASS, _failed(brackets)
    assert brackets.reports["brackets"].entries


def test_abelian_bracket_table(tmp_path) -> None:
    outcome = _run(tmp_path, "abelian24.json", Command.BRACKETS)
    table = outcome.reports["brackets"]
    assert len(table.entries) == 11
    checked = [check for check in outcome.trace.checks if check.name.startswith("{")]
    assert len(checked) == 11
    assert all(check.status == Status.PASS for check in checked)


def test_torus_bracket_vanishes(tmp_path) -> None:
    verify = _run(tmp_path, "torus.json", Command.VERIFY)
    assert verify.trace.status == Status.PASS, _failed(verify)
    assert verify.reports["fi_report"].all_brackets_zero
    z = _run(tmp_path, "torus_quotient.json", Command.Z)
    assert z.trace.status == Status.PASS
    assert z.reports["z_tensor"].all_zero


def test_derived_brackets_from_a_problem_file(tmp_path) -> None:
    path = tmp_path / "derived.json"
    path.write_text(
        json.dumps(
            {
                "label": "derived",
                "n": 4,
                "tensor": {"kind": "diagonal", "arity": 4, "scalars": {"1,2,3,4": "1"}},
                "ideal": ["x1*x2", "x3*x4"],
                "depth": 3,
                "brackets": [
                    {"arguments": ["x1", "x2", "x3", "x4"], "expected": "x1*x2*x3*x4"},
                    {"arguments": ["x2_1"], "expected": "x3*x4"},
                ],
            }
        ),
        encoding="utf-8",
    )
    problem = load_problem(path)
    outcome = _runner(tmp_path).run(command=Command.BRACKETS, problem=problem, run_id="derived", derived=True)
    assert outcome.trace.status == Status.PASS, _failed(outcome)
    assert outcome.reports["brackets"].value("x2_1") == "1 * x3_0*x4_0"


def test_a_raising_step_still_leaves_its_trace(tmp_path) -> None:
    problem = load_problem(FIXTURES_DIR / "abelian24.json")
    runner = _runner(tmp_path, depth=1)
    with pytest.raises(OddArity):
        runner.run(command=Command.PERTURB, problem=problem, run_id="odd")
    trace = json.loads((tmp_path / "odd" / "run_trace.json").read_text(encoding="utf-8"))
    assert trace["status"] == "error"
    assert trace["error"].startswith("OddArity")
    assert (tmp_path / "odd" / "problem.json").exists()


def test_examples_replay_records_each_step(tmp_path) -> None:
    report = run_examples(_runner(tmp_path), "torus", run_id="examples")
    assert report.status == Status.PASS
    assert [(step.problem, step.command) for step in report.steps] == [("torus", "verify"), ("torus_quotient", "z")]
    assert (tmp_path / "examples" / "torus_verify" / "run_trace.json").exists()
    assert (tmp_path / "examples" / "torus_quotient_z" / "summary.json").exists()
