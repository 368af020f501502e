from __future__ import annotations

from pydantic import Field

from src.config.schemas import JsonSchemaModel, Status


class FundamentalIdentityViolation(JsonSchemaModel):
    """Nonzero residual of the coordinate fundamental identity for (I, J)."""

    outer: list[int] = Field(min_length=1)
    inner: list[int] = Field(min_length=1)
    residual: str = Field(min_length=1)


class DecomposabilityViolation(JsonSchemaModel):
    """Nonzero quadratic Pluecker residual for the index tuples (I, J)."""

    outer: list[int] = Field(min_length=1)
    inner: list[int] = Field(min_length=1)
    residual: str = Field(min_length=1)


class FundamentalIdentityReport(JsonSchemaModel):
    n: int = Field(ge=1)
    arity: int = Field(ge=2)
    modulo_ideal: bool = False
    decomposability_checked: bool = True
    fi_violations: list[FundamentalIdentityViolation] = Field(default_factory=list)
    decomposability_violations: list[DecomposabilityViolation] = Field(default_factory=list)

    @property
    def is_nambu(self) -> bool:
        return not self.fi_violations and not self.decomposability_violations

    @property
    def status(self) -> Status:
        return Status.PASS if self.is_nambu else Status.FAIL


class CasimirEntry(JsonSchemaModel):
    generator: int = Field(ge=1)
    polynomial: str = Field(min_length=1)
    is_casimir: bool


class CasimirScan(JsonSchemaModel):
    modulo_ideal: bool = False
    entries: list[CasimirEntry] = Field(default_factory=list)

    @property
    def all_casimir(self) -> bool:
        return all(entry.is_casimir for entry in self.entries)


class BracketValue(JsonSchemaModel):
    arguments: list[str] = Field(min_length=1)
    value: str


class VerifyReport(JsonSchemaModel):
    label: str = ""
    fundamental_identity: FundamentalIdentityReport
    casimirs: CasimirScan = Field(default_factory=CasimirScan)
    brackets: list[BracketValue] = Field(default_factory=list)
    all_brackets_zero: bool = False
