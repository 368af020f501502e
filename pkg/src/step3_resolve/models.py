from __future__ import annotations

from pydantic import ConfigDict, Field

from src.config.schemas import JsonSchemaModel, Status


class ResolventVariableFile(JsonSchemaModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    index: int = Field(ge=1)
    weight: int | None = Field(default=None, gt=0)
    image: str = Field(alias="F", min_length=1)


class ResolventLevelFile(JsonSchemaModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    level: int = Field(alias="l", ge=1)
    variables: list[ResolventVariableFile] = Field(alias="vars", default_factory=list)


class ResolventFile(JsonSchemaModel):
    """On-disk resolvent truncation; images use the super-polynomial text format."""

    n: int = Field(ge=1)
    weights: list[int] | None = None
    levels: list[ResolventLevelFile] = Field(default_factory=list)


class ResolventCheckReport(JsonSchemaModel):
    n: int = Field(ge=1)
    counts: list[int] = Field(default_factory=list)
    closed: bool = True
    problems: list[str] = Field(default_factory=list)

    @property
    def status(self) -> Status:
        return Status.PASS if self.closed and not self.problems else Status.FAIL


class HomologyProbe(JsonSchemaModel):
    level: int = Field(ge=1)
    weight: int = Field(gt=0)
    dimension: int = Field(ge=0)


class TateReport(JsonSchemaModel):
    n: int = Field(ge=1)
    target_level: int = Field(ge=1)
    cap: int = Field(gt=0)
    counts: list[int] = Field(default_factory=list)
    added: list[str] = Field(default_factory=list)
    minimal: bool = True
    non_minimal: list[str] = Field(default_factory=list)
    probes: list[HomologyProbe] = Field(default_factory=list)
