from __future__ import annotations

from pydantic import Field

from src.config.schemas import Duration, JsonSchemaModel, Status


class StageCount(JsonSchemaModel):
    index: int = Field(ge=1)
    terms: int = Field(ge=0)


class CheckOutcome(JsonSchemaModel):
    name: str = Field(min_length=1)
    status: Status
    detail: str = ""
    required: bool = True


class RunTrace(JsonSchemaModel):
    run_id: str = Field(min_length=1)
    command: str = Field(min_length=1)
    label: str = ""
    status: Status
    error: str | None = None
    duration: Duration
    artifacts: list[str] = Field(default_factory=list)
    stage_terms: list[StageCount] = Field(default_factory=list)
    checks: list[CheckOutcome] = Field(default_factory=list)


class RunSummary(JsonSchemaModel):
    run_id: str = Field(min_length=1)
    command: str = Field(min_length=1)
    label: str = ""
    overall_status: Status
    total_duration_ms: int = Field(ge=0)
    total_artifacts: int = Field(ge=0)
    total_stages: int = Field(ge=0)
    nonzero_stages: list[int] = Field(default_factory=list)
    passed_checks: int = Field(ge=0)
    failed_checks: int = Field(ge=0)


class ExampleStep(JsonSchemaModel):
    problem: str = Field(min_length=1)
    command: str = Field(min_length=1)
    run_id: str = Field(min_length=1)
    status: Status
    error: str | None = None
    failed_checks: list[str] = Field(default_factory=list)


class ExampleReport(JsonSchemaModel):
    """Outcome of replaying one or more catalogued examples."""

    names: list[str] = Field(default_factory=list)
    steps: list[ExampleStep] = Field(default_factory=list)

    @property
    def status(self) -> Status:
        if any(step.status == Status.ERROR for step in self.steps):
            return Status.ERROR
        if any(step.status == Status.FAIL for step in self.steps):
            return Status.FAIL
        return Status.PASS
