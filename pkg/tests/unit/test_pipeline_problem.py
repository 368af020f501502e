import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.algebra.errors import ConfigurationError, ParseError
from src.algebra.superpoly import SuperPolynomial
from src.config.schemas import CheckName, Command
from src.config.settings import RuntimeSettings
from src.pipeline.catalog import CATALOG, FIXTURES_DIR, example_names
from src.pipeline.context import PipelineContext
from src.pipeline.problem import load_problem


def _write(tmp_path: Path, payload: dict | str) -> Path:
    path = tmp_path / "problem.json"
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return path


def test_torus_definitions_satisfy_their_relation() -> None:
    problem = load_problem(FIXTURES_DIR / "torus.json")
    assert problem.source == FIXTURES_DIR / "torus.json"
    definitions = problem.definition_map()
    assert set(definitions) == {"u1", "u2", "u3", "u4"}
    assert not problem.polynomial("u1*u4 - u2*u3")
    assert problem.polynomial("u1*u3 - u2*u4")


def test_bracket_arguments_accept_resolvent_variables() -> None:
    problem = load_problem(FIXTURES_DIR / "monomial_ci.json")
    assert problem.element("x1_1") == SuperPolynomial.parse("1 * x1_1")
    assert problem.element("x1*x2") == SuperPolynomial.parse("1 * x1_0*x2_0")


def test_aliases_reach_tensor_and_definitions() -> None:
    problem = load_problem(FIXTURES_DIR / "abelian24.json")
    tensor = problem.nambu_tensor()
    assert tensor.arity == 3 and tensor.n == 3
    assert problem.polynomial("u4") == problem.polynomial("x1*x2*x3")
    assert all(not problem.polynomial(text) for text in problem.relations)


def test_paths_inside_a_problem_are_relative_to_it() -> None:
    problem = load_problem(FIXTURES_DIR / "monomial_ci.json")
    assert problem.locate(problem.golden) == FIXTURES_DIR / "monomial_ci_pi.txt"
    assert problem.read_text(problem.golden).startswith("##")
    with pytest.raises(ParseError):
        problem.read_text("missing.txt")


def test_malformed_json_is_a_parse_error(tmp_path) -> None:
    with pytest.raises(ParseError):
        load_problem(_write(tmp_path, "{not json"))
    with pytest.raises(ParseError):
        load_problem(tmp_path / "absent.json")


@pytest.mark.parametrize(
    "payload",
    [
        {"n": 3, "tensor": {"kind": "diagonal", "n": 4, "arity": 2, "scalars": {"1,2": "1"}}},
        {"n": 3, "tensor": {"kind": "diagonal", "arity": 2, "scalars": {"1,5": "1"}}},
        {"n": 3, "tensor": {"kind": "diagonal", "arity": 2, "scalars": {"1,2,3": "1"}}},
        {"n": 3, "tensor": {"kind": "explicit"}},
        {"n": 4, "tensor": {"kind": "outer", "factors": [{"kind": "diagonal", "n": 2, "arity": 2}]}},
        {"n": 2, "tensor": {"kind": "diagonal", "arity": 2}, "weights": [1]},
        {"n": 2, "tensor": {"kind": "diagonal", "arity": 2}, "unexpected": True},
    ],
)
def test_inconsistent_problem_files_are_parse_errors(tmp_path, payload) -> None:
    with pytest.raises(ParseError):
        load_problem(_write(tmp_path, payload))


def test_outer_problem_builds_the_product(tmp_path) -> None:
    factor = {"kind": "diagonal", "n": 2, "arity": 2, "scalars": {"1,2": "1"}}
    problem = load_problem(_write(tmp_path, {"n": 4, "tensor": {"kind": "outer", "factors": [factor, factor]}}))
    tensor = problem.nambu_tensor()
    assert tensor.arity == 4
    assert tensor.coefficient((1, 2, 3, 4)) == problem.polynomial("x1*x2*x3*x4")


def test_settings_read_the_environment(monkeypatch, tmp_path) -> None:
    monkeypatch.setenv("NAMBU_THREADS", "3")
    monkeypatch.setenv("NAMBU_ARTIFACTS_ROOT", str(tmp_path))
    settings = RuntimeSettings.from_env(depth=5, checks=frozenset({CheckName.MC}))
    assert settings.threads == 3
    assert settings.artifacts_root == tmp_path
    assert settings.depth == 5
    assert settings.degree_cap == 8
    assert settings.checks == frozenset({CheckName.MC})


def test_settings_override_the_environment(monkeypatch) -> None:
    monkeypatch.setenv("NAMBU_THREADS", "3")
    assert RuntimeSettings.from_env(threads=2).threads == 2
    with pytest.raises(ValidationError):
        RuntimeSettings.from_env(threads=0)
    monkeypatch.setenv("NAMBU_THREADS", "many")
    with pytest.raises(ValidationError):
        RuntimeSettings.from_env()


def test_explicit_settings_win_over_the_problem_file(monkeypatch, tmp_path) -> None:
    monkeypatch.delenv("NAMBU_THREADS", raising=False)
    problem = load_problem(FIXTURES_DIR / "monomial_ci.json")

    defaults = RuntimeSettings(artifacts_root=tmp_path)
    context = PipelineContext(run_id="a", command=Command.PERTURB, problem=problem, settings=defaults)
    assert (context.depth, context.level, context.cap) == (7, 6, 8)
    assert context.run_dir.is_dir()

    explicit = RuntimeSettings.from_env(depth=2, artifacts_root=tmp_path)
    context = PipelineContext(run_id="b", command=Command.PERTURB, problem=problem, settings=explicit)
    assert context.depth == 2
    assert context.level == 6


def test_context_attaches_the_ideal_only_modulo_i(tmp_path) -> None:
    problem = load_problem(FIXTURES_DIR / "monomial_ci.json")
    settings = RuntimeSettings(artifacts_root=tmp_path)
    plain = PipelineContext(run_id="p", command=Command.Z, problem=problem, settings=settings)
    reduced = PipelineContext(run_id="q", command=Command.Z, problem=problem, settings=settings, mod_ideal=True)
    assert plain.tensor.ideal is None
    assert reduced.tensor.ideal is not None
    assert plain.z.get((2, 3, 4), 1, 1) == -problem.polynomial("x2*x3*x4")


def test_example_names() -> None:
    assert example_names("all") == list(CATALOG)
    assert example_names("torus") == ["torus"]
    with pytest.raises(ConfigurationError):
        example_names("sphere")
