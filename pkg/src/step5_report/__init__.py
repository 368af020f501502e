from src.step5_report.models import (
    CheckOutcome,
    ExampleReport,
    ExampleStep,
    RunSummary,
    RunTrace,
    StageCount,
)
from src.step5_report.summarizer import RunSummarizer
from src.step5_report.writer import JsonFileReportWriter, parse_stages, render_stages, stage_header

__all__ = [
    "CheckOutcome",
    "ExampleReport",
    "ExampleStep",
    "JsonFileReportWriter",
    "RunSummarizer",
    "RunSummary",
    "RunTrace",
    "StageCount",
    "parse_stages",
    "render_stages",
    "stage_header",
]
