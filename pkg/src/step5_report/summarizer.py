from __future__ import annotations

import json
from pathlib import Path

from src.config.schemas import Status
from src.step5_report.models import RunSummary, RunTrace


class RunSummarizer:
    def build(self, trace: RunTrace) -> RunSummary:
        required = [check for check in trace.checks if check.required]
        passed = sum(1 for check in required if check.status == Status.PASS)
        failed = sum(1 for check in required if check.status in {Status.FAIL, Status.ERROR})
        return RunSummary(
            run_id=trace.run_id,
            command=trace.command,
            label=trace.label,
            overall_status=trace.status,
            total_duration_ms=trace.duration.duration_ms,
            total_artifacts=len(trace.artifacts),
            total_stages=len(trace.stage_terms),
            nonzero_stages=[stage.index for stage in trace.stage_terms if stage.terms],
            passed_checks=passed,
            failed_checks=failed,
        )

    def write(self, *, trace: RunTrace, run_dir: Path) -> RunSummary:
        summary = self.build(trace)
        summary_path = run_dir / "summary.json"
        summary_path.write_text(
            json.dumps(summary.model_dump(mode="json"), ensure_ascii=False, indent=2),
            encoding="utf-8",
        )
        return summary
