from __future__ import annotations

from pydantic import Field

from src.config.schemas import GammaMode, JsonSchemaModel, Status


class StageReport(JsonSchemaModel):
    index: int = Field(ge=1)
    terms: int = Field(ge=0)
    filtration: int | None = None
    cohomological: list[int] = Field(default_factory=list)
    max_level: int = Field(default=0, ge=0)
    relation_holds: bool = True
    within_filtration: bool = True
    within_levels: bool = True
    within_cohdeg_bound: bool = True

    @property
    def is_zero(self) -> bool:
        return self.terms == 0


class PerturbationReport(JsonSchemaModel):
    """Stage table of a perturbation run; zeros are reported, termination never claimed."""

    arity: int = Field(ge=2)
    gamma_mode: GammaMode
    depth: int = Field(ge=1)
    resolvent_counts: list[int] = Field(default_factory=list)
    stages: list[StageReport] = Field(default_factory=list)
    nonzero_stages: list[int] = Field(default_factory=list)
    zero_tail: int = Field(default=0, ge=0)
    # [[P, P]] terms below filtration depth + m after the last stage
    residual_terms: int = Field(default=0, ge=0)

    @property
    def status(self) -> Status:
        ok = self.residual_terms == 0 and all(
            stage.relation_holds and stage.within_filtration and stage.within_levels
            for stage in self.stages
        )
        return Status.PASS if ok else Status.FAIL


class BracketEntry(JsonSchemaModel):
    arity: int = Field(ge=1)
    arguments: list[str] = Field(min_length=1)
    value: str


class DerivedBracketTable(JsonSchemaModel):
    entries: list[BracketEntry] = Field(default_factory=list)

    def value(self, *arguments: str) -> str | None:
        for entry in self.entries:
            if tuple(entry.arguments) == arguments:
                return entry.value
        return None


class JacobiResidual(JsonSchemaModel):
    arity: int = Field(ge=1)
    arguments: list[str] = Field(min_length=1)
    residual: str


class LinftyReport(JsonSchemaModel):
    max_arity: int = Field(ge=1)
    checked: int = Field(default=0, ge=0)
    skipped: int = Field(default=0, ge=0)
    residuals: list[JacobiResidual] = Field(default_factory=list)

    @property
    def status(self) -> Status:
        return Status.PASS if not self.residuals else Status.FAIL


class AnchorViolation(JsonSchemaModel):
    arity: int = Field(ge=1)
    arguments: list[str] = Field(min_length=1)
    expected: str
    found: str


class AnchorReport(JsonSchemaModel):
    checked: int = Field(default=0, ge=0)
    violations: list[AnchorViolation] = Field(default_factory=list)

    @property
    def status(self) -> Status:
        return Status.PASS if not self.violations else Status.FAIL
