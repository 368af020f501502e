import datetime as dt
import json

import pytest

from src.algebra.errors import ParseError
from src.algebra.superpoly import SuperPolynomial
from src.config.schemas import Duration, Status
from src.step5_report.models import CheckOutcome, ExampleReport, ExampleStep, RunTrace, StageCount
from src.step5_report.summarizer import RunSummarizer
from src.step5_report.writer import JsonFileReportWriter, parse_stages, render_stages, stage_header


def _trace(status: Status = Status.PASS, **overrides) -> RunTrace:
    payload = dict(
        run_id="run_001",
        command="perturb",
        label="monomial-ci",
        status=status,
        duration=Duration(
            started_at_utc=dt.datetime(2026, 3, 6, 0, 0, 0, tzinfo=dt.timezone.utc),
            ended_at_utc=dt.datetime(2026, 3, 6, 0, 0, 1, tzinfo=dt.timezone.utc),
            duration_ms=1000,
        ),
        artifacts=["problem.json", "pi_stages.txt"],
        stage_terms=[StageCount(index=1, terms=1), StageCount(index=2, terms=4), StageCount(index=3, terms=0)],
        checks=[
            CheckOutcome(name="perturbation relations", status=Status.PASS),
            CheckOutcome(name="golden pi_2", status=Status.FAIL),
            CheckOutcome(name="printed pi_3 relation", status=Status.FAIL, required=False),
        ],
    )
    payload.update(overrides)
    return RunTrace(**payload)


def test_stage_header_reports_filtration_and_degrees() -> None:
    value = SuperPolynomial.parse("1 * x1_0*x2_0*xi1_0*xi2_0 + 1 * x1_1*xi1_0*xi2_0*xi1_1")
    assert stage_header(2, value) == "# pi_2 fd=2 cohdeg={2,3}"
    assert stage_header(5, SuperPolynomial()) == "# pi_5 fd=- cohdeg={}"


def test_rendered_stages_read_back() -> None:
    stages = [
        (1, SuperPolynomial.parse("1 * x1_0*x2_0*xi1_0*xi2_0")),
        (2, SuperPolynomial.parse("-1/2 * x1_1*xi1_0*xi2_0*xi1_1")),
        (3, SuperPolynomial()),
    ]
    text = render_stages(stages)
    assert text.endswith("# pi_3 fd=- cohdeg={}\n0\n")
    assert parse_stages(text) == dict(stages)


def test_parse_stages_skips_provenance_comments() -> None:
    text = "## written by hand\n# pi_1 fd=2 cohdeg={2}\n1 * x1_0*xi1_0*xi2_0\n\n## tail\n"
    assert parse_stages(text) == {1: SuperPolynomial.parse("1 * x1_0*xi1_0*xi2_0")}


def test_parse_stages_rejects_malformed_headers() -> None:
    with pytest.raises(ParseError):
        parse_stages("# pi_one fd=2 cohdeg={2}\n0\n")
    with pytest.raises(ParseError):
        parse_stages("1 * x1_0\n# pi_1 fd=0 cohdeg={0}\n")
    with pytest.raises(ParseError):
        parse_stages("# pi_1 fd=1 cohdeg={1}\n2 * z1_0\n")


def test_writer_creates_trace_and_summary(tmp_path) -> None:
    writer = JsonFileReportWriter(tmp_path)
    writer.write(trace=_trace(Status.FAIL))

    run_dir = tmp_path / "run_001"
    trace = json.loads((run_dir / "run_trace.json").read_text(encoding="utf-8"))
    assert trace["run_id"] == "run_001"
    assert trace["status"] == "fail"
    assert trace["duration"]["duration_ms"] == 1000

    summary = json.loads((run_dir / "summary.json").read_text(encoding="utf-8"))
    assert summary["overall_status"] == "fail"
    assert summary["total_artifacts"] == 2
    assert summary["total_stages"] == 3
    assert summary["nonzero_stages"] == [1, 2]
    assert summary["passed_checks"] == 1
    assert summary["failed_checks"] == 1


def test_writer_records_errors(tmp_path) -> None:
    writer = JsonFileReportWriter(tmp_path)
    writer.write(trace=_trace(Status.ERROR, error="CapTooLow: raise the cap", checks=[], stage_terms=[]))
    summary = RunSummarizer().build(_trace(Status.ERROR, checks=[]))
    assert summary.passed_checks == 0
    trace = json.loads((tmp_path / "run_001" / "run_trace.json").read_text(encoding="utf-8"))
    assert trace["error"] == "CapTooLow: raise the cap"
    assert trace["status"] == "error"


def test_writer_writes_stage_files(tmp_path) -> None:
    writer = JsonFileReportWriter(tmp_path)
    stages = [(1, SuperPolynomial.parse("1 * xi1_0"))]
    path = writer.write_stages(path=tmp_path / "out" / "pi_stages.txt", stages=stages)
    assert path.read_text(encoding="utf-8") == "# pi_1 fd=1 cohdeg={1}\n1 * xi1_0\n"


def test_example_report_status_prefers_errors() -> None:
    steps = [
        ExampleStep(problem="torus.json", command="verify", run_id="r/torus_verify", status=Status.PASS),
        ExampleStep(
            problem="torus.json", command="z", run_id="r/torus_z", status=Status.FAIL, failed_checks=["Z expansion"]
        ),
    ]
    assert ExampleReport(names=["torus"], steps=steps).status == Status.FAIL
    errored = steps + [
        ExampleStep(problem="abelian24.json", command="perturb", run_id="r/x", status=Status.ERROR, error="OddArity")
    ]
    assert ExampleReport(names=["torus"], steps=errored).status == Status.ERROR
    assert ExampleReport().status == Status.PASS
