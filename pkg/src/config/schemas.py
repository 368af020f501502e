from __future__ import annotations

import datetime as dt
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"
    SKIPPED = "skipped"


class Command(str, Enum):
    VERIFY = "verify"
    Z = "z"
    MC = "mc"
    RESOLVE = "resolve"
    PERTURB = "perturb"
    BRACKETS = "brackets"
    EXAMPLES = "examples"


class GammaMode(str, Enum):
    """Grading group of the P-infinity structure: Z for binary brackets, Z/2 otherwise."""

    Z = "Z"
    Z2 = "Z2"

    @classmethod
    def for_arity(cls, arity: int) -> GammaMode:
        return cls.Z if arity == 2 else cls.Z2


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CheckName(str, Enum):
    FI = "fi"
    MC = "mc"
    LINFTY = "linfty"
    ANCHOR = "anchor"


class JsonSchemaModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class Duration(JsonSchemaModel):
    started_at_utc: dt.datetime
    ended_at_utc: dt.datetime
    duration_ms: int = Field(ge=0)
