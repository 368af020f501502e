from __future__ import annotations

import os
from pathlib import Path

from pydantic import ConfigDict, Field

from src.config.schemas import CheckName, JsonSchemaModel, OutputFormat


class RuntimeSettings(JsonSchemaModel):
    model_config = ConfigDict(extra="forbid")

    depth: int = Field(default=3, ge=0)
    degree_cap: int = Field(default=8, gt=0)
    level: int = Field(default=1, ge=1)
    threads: int = Field(default=1, gt=0)
    artifacts_root: Path = Path("artifacts") / "runs"
    output_format: OutputFormat = OutputFormat.TEXT
    checks: frozenset[CheckName] = frozenset({CheckName.FI})

    @classmethod
    def from_env(cls, **overrides: object) -> RuntimeSettings:
        """Read NAMBU_* variables (after load_dotenv) and apply explicit overrides on top."""
        values: dict[str, object] = {}
        threads = (os.getenv("NAMBU_THREADS") or "").strip()
        if threads:
            values["threads"] = threads
        artifacts = (os.getenv("NAMBU_ARTIFACTS_ROOT") or "").strip()
        if artifacts:
            values["artifacts_root"] = Path(artifacts)
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls.model_validate(values)
