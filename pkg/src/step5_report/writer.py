from __future__ import annotations

import json
import re
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from src.algebra.errors import ParseError
from src.algebra.grading import Grading
from src.algebra.superpoly import SuperPolynomial
from src.step5_report.models import RunTrace
from src.step5_report.summarizer import RunSummarizer

_HEADER_RE = re.compile(r"^# pi_(\d+) fd=(\S+) cohdeg=\{([^}]*)\}$")


def stage_header(index: int, value: SuperPolynomial) -> str:
    fd = value.filtration()
    cohdegs = ",".join(str(d) for d in sorted(value.degree_values(Grading.COHOMOLOGICAL)))
    return f"# pi_{index} fd={'-' if fd is None else fd} cohdeg={{{cohdegs}}}"


def render_stages(stages: Iterable[tuple[int, SuperPolynomial]]) -> str:
    """One section per stage: the header line, then one term per line (or ``0``)."""
    sections = [f"{stage_header(index, value)}\n{value.render()}" for index, value in stages]
    return "\n".join(sections) + "\n"


def parse_stages(text: str) -> dict[int, SuperPolynomial]:
    """Read a stage file back; lines starting with ``##`` are provenance comments."""
    stages: dict[int, SuperPolynomial] = {}
    current: int | None = None
    body: list[str] = []

    def flush() -> None:
        if current is not None:
            stages[current] = SuperPolynomial.parse("\n".join(body))

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("##"):
            continue
        match = _HEADER_RE.match(line)
        if match is not None:
            flush()
            current, body = int(match.group(1)), []
            continue
        if line.startswith("#"):
            raise ParseError(f"malformed stage header {line!r}")
        if current is None:
            raise ParseError("stage text before the first '# pi_<l>' header")
        body.append(line)
    flush()
    return stages


class JsonFileReportWriter:
    """Writes every artifact of a run below ``artifacts_root/<run_id>``."""

    def __init__(self, artifacts_root: Path, *, summarizer: RunSummarizer | None = None) -> None:
        self._artifacts_root = artifacts_root
        self._summarizer = summarizer or RunSummarizer()

    def run_dir(self, run_id: str) -> Path:
        run_dir = self._artifacts_root / run_id
        run_dir.mkdir(parents=True, exist_ok=True)
        return run_dir

    @staticmethod
    def write_json(*, path: Path, payload: BaseModel | Mapping[str, Any]) -> Path:
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json", by_alias=True)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            json.dumps(payload, ensure_ascii=False, indent=2),
            encoding="utf-8",
        )
        return path

    @staticmethod
    def write_text(*, path: Path, text: str) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    def write_stages(self, *, path: Path, stages: Iterable[tuple[int, SuperPolynomial]]) -> Path:
        return self.write_text(path=path, text=render_stages(stages))

    def write(self, *, trace: RunTrace) -> None:
        run_dir = self.run_dir(trace.run_id)
        self.write_json(path=run_dir / "run_trace.json", payload=trace)
        self._summarizer.write(trace=trace, run_dir=run_dir)
