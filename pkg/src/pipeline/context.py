from __future__ import annotations

import datetime as dt
from pathlib import Path

from pydantic import BaseModel

from src.algebra.groebner import IdealPresentation
from src.config.schemas import Command, Status
from src.config.settings import RuntimeSettings
from src.pipeline.problem import ProblemFile
from src.step1_nambu.tensor import NambuTensor
from src.step2_connection.ztensor import ZTensor, compute_Z
from src.step3_resolve.truncation import ResolventTruncation
from src.step4_perturb.state import PerturbationState
from src.step5_report.models import CheckOutcome


class PipelineContext:
    """Per-run state: the parsed problem, effective parameters and what each step produced."""

    def __init__(
        self,
        *,
        run_id: str,
        command: Command,
        problem: ProblemFile,
        settings: RuntimeSettings,
        mod_ideal: bool = False,
        derived: bool = False,
    ) -> None:
        self.run_id = run_id
        self.command = command
        self.problem = problem
        self.settings = settings
        self.mod_ideal = mod_ideal
        self.derived = derived
        self.run_started_at_utc = dt.datetime.now(dt.timezone.utc)
        self.run_dir: Path = settings.artifacts_root / run_id
        self.run_dir.mkdir(parents=True, exist_ok=True)

        self.reports: dict[str, BaseModel] = {}
        self.artifacts: list[str] = []
        self.checks: list[CheckOutcome] = []
        self.truncation: ResolventTruncation | None = None
        self.state: PerturbationState | None = None
        self._tensor: NambuTensor | None = None
        self._ideal: IdealPresentation | None = None
        self._z: ZTensor | None = None

    def parameter(self, name: str, from_problem: int | None) -> int:
        """An explicit setting (flag or environment) wins over the problem file, which wins over the default."""
        if name in self.settings.model_fields_set or from_problem is None:
            return getattr(self.settings, name)
        return from_problem

    @property
    def depth(self) -> int:
        return self.parameter("depth", self.problem.depth)

    @property
    def cap(self) -> int:
        return self.parameter("degree_cap", self.problem.cap)

    @property
    def level(self) -> int:
        return self.parameter("level", self.problem.level)

    @property
    def ideal(self) -> IdealPresentation:
        if self._ideal is None:
            self._ideal = self.problem.ideal_presentation()
        return self._ideal

    @property
    def tensor(self) -> NambuTensor:
        """Pi, carrying the ideal only when results are reduced modulo I."""
        if self._tensor is None:
            tensor = self.problem.nambu_tensor()
            self._tensor = tensor.with_ideal(self.ideal) if self.mod_ideal and self.ideal.k else tensor
        return self._tensor

    @property
    def z(self) -> ZTensor:
        if self._z is None:
            self._z = compute_Z(self.tensor, self.ideal)
        return self._z

    def check(self, name: str, passed: bool, detail: str = "", *, required: bool = True) -> None:
        self.checks.append(
            CheckOutcome(
                name=name,
                status=Status.PASS if passed else Status.FAIL,
                detail=detail,
                required=required,
            )
        )
