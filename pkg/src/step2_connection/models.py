from __future__ import annotations

from pydantic import Field

from src.config.schemas import JsonSchemaModel, Status


class ZEntry(JsonSchemaModel):
    indices: list[int] = Field(min_length=1)
    mu: int = Field(ge=1)
    nu: int = Field(ge=1)
    value: str = Field(min_length=1)


class ZTensorReport(JsonSchemaModel):
    n: int = Field(ge=1)
    arity: int = Field(ge=2)
    k: int = Field(ge=0)
    generators: list[str] = Field(default_factory=list)
    entries: list[ZEntry] = Field(default_factory=list)
    all_zero: bool = True
    # the lift is a choice, never a canonical invariant
    non_unique: bool = True
    diagonal_lifts: int = Field(default=0, ge=0)
    groebner_lifts: int = Field(default=0, ge=0)


class MatrixEntryText(JsonSchemaModel):
    row: int = Field(ge=1)
    column: int = Field(ge=1)
    value: str = Field(min_length=1)


class CurvatureValue(JsonSchemaModel):
    vector: list[str] = Field(default_factory=list)
    residual: list[str] = Field(default_factory=list)

    @property
    def vanishes(self) -> bool:
        return all(text == "0" for text in self.residual)


class ConnectionAxiomViolation(JsonSchemaModel):
    first: list[int] = Field(min_length=1)
    second: list[int] = Field(min_length=1)
    mu: int = Field(ge=1)
    residual: str = Field(min_length=1)


class MaurerCartanReport(JsonSchemaModel):
    k: int = Field(ge=0)
    delta_z: list[MatrixEntryText] = Field(default_factory=list)
    bracket_z: list[MatrixEntryText] = Field(default_factory=list)
    defect: list[MatrixEntryText] = Field(default_factory=list)
    defect_zero: bool = True
    mc_holds: bool = True
    curvatures: list[CurvatureValue] = Field(default_factory=list)
    connection_axiom_violations: list[ConnectionAxiomViolation] = Field(default_factory=list)

    @property
    def status(self) -> Status:
        flat = all(value.vanishes for value in self.curvatures)
        ok = self.mc_holds and flat and not self.connection_axiom_violations
        return Status.PASS if ok else Status.FAIL
