from __future__ import annotations

import json
from pathlib import Path

from pydantic import ValidationError

from src.algebra.errors import MissingGrading, ParseError
from src.algebra.grading import Grading
from src.algebra.superpoly import SuperPolynomial, monomial_degree
from src.algebra.variables import Kind
from src.step3_resolve.models import (
    ResolventCheckReport,
    ResolventFile,
    ResolventLevelFile,
    ResolventVariableFile,
)
from src.step3_resolve.truncation import AdjoinedVariable, ResolventLevel, ResolventTruncation


def from_file_model(model: ResolventFile) -> ResolventTruncation:
    levels = []
    for position, level in enumerate(sorted(model.levels, key=lambda item: item.level), start=1):
        if level.level != position:
            raise ParseError(f"resolvent levels must run 1, 2, ...; level {position} is missing")
        variables = tuple(
            AdjoinedVariable(
                level=level.level,
                index=var.index,
                image=SuperPolynomial.parse(var.image),
                weight=var.weight,
            )
            for var in sorted(level.variables, key=lambda item: item.index)
        )
        levels.append(ResolventLevel(level=level.level, variables=variables))
    if model.weights is not None and len(model.weights) != model.n:
        raise ParseError(f"expected {model.n} base weights, got {len(model.weights)}")
    return ResolventTruncation(n=model.n, levels=levels, base_weights=model.weights)


def to_file_model(truncation: ResolventTruncation) -> ResolventFile:
    return ResolventFile(
        n=truncation.n,
        weights=list(truncation.base_weights) if truncation.base_weights is not None else None,
        levels=[
            ResolventLevelFile(
                level=level.level,
                variables=[
                    ResolventVariableFile(index=var.index, weight=var.weight, image=var.image.render_line())
                    for var in level.variables
                ],
            )
            for level in truncation.levels
        ],
    )


def load_resolvent(path: Path) -> ResolventTruncation:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        model = ResolventFile.model_validate(payload)
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise ParseError(f"cannot read resolvent file {path}: {exc}") from exc
    return from_file_model(model)


def save_resolvent(truncation: ResolventTruncation, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = to_file_model(truncation).model_dump(mode="json", by_alias=True)
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
    return path


def check_resolvent(truncation: ResolventTruncation) -> ResolventCheckReport:
    """Semifreeness, degrees of the images and d^2 = 0 on every generator."""
    problems: list[str] = []
    for var in truncation.adjoined():
        name = var.variable.render()
        for used in var.image.variables():
            if used.kind == Kind.ODD:
                problems.append(f"d {name} contains {used.render()}")
            elif used.level >= var.level:
                problems.append(f"d {name} uses {used.render()} of level {used.level}")
            elif used.level and used.index not in {v.index for v in truncation.level(used.level).variables}:
                problems.append(f"d {name} uses the unknown variable {used.render()}")
        cohdegs = var.image.degree_values(Grading.COHOMOLOGICAL)
        if cohdegs - {1 - var.level}:
            problems.append(f"d {name} has cohomological degrees {sorted(cohdegs)}, expected {1 - var.level}")
        if var.image.is_zero:
            problems.append(f"d {name} is zero")
    if truncation.has_grading:
        grading = truncation.grading
        for var in truncation.adjoined():
            weights = {monomial_degree(mono, Grading.INTERNAL, grading) for mono in var.image.terms}
            if weights - {var.weight}:
                problems.append(
                    f"d {var.variable.render()} has weights {sorted(weights)}, expected {var.weight}"
                )
    closed = not problems and truncation.is_closed()
    return ResolventCheckReport(n=truncation.n, counts=truncation.counts(), closed=closed, problems=problems)


def require_grading(truncation: ResolventTruncation) -> None:
    if not truncation.has_grading:
        raise MissingGrading("degree-sliced solving needs internal weights on every resolvent variable")
