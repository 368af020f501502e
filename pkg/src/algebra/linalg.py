from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

# A sparse column: row key -> nonzero rational.
Column = Mapping[Hashable, Any]


def _row_index(columns: Sequence[Column], extra: Sequence[Column] = ()) -> dict[Hashable, int]:
    keys: set[Hashable] = set()
    for column in list(columns) + list(extra):
        keys.update(key for key, value in column.items() if value)
    return {key: i for i, key in enumerate(sorted(keys))}


def _rref(columns: Sequence[Column], rows: Mapping[Hashable, int]) -> tuple[dict[int, dict[int, Any]], tuple[int, ...]]:
    data: dict[int, dict[int, Any]] = {}
    for j, column in enumerate(columns):
        for key, value in column.items():
            if value:
                data.setdefault(rows[key], {})[j] = QQ.convert(value)
    matrix = DomainMatrix(data, (max(len(rows), 1), len(columns)), QQ)
    reduced, pivots = matrix.rref()
    rep = reduced.to_sparse().rep
    return {i: dict(row) for i, row in rep.items()}, tuple(pivots)


def rank(columns: Sequence[Column]) -> int:
    if not columns:
        return 0
    rows = _row_index(columns)
    if not rows:
        return 0
    _, pivots = _rref(columns, rows)
    return len(pivots)


def solve_particular(columns: Sequence[Column], target: Column) -> dict[int, Any] | None:
    """Solve sum_j c_j * columns[j] = target.

    Returns the reduced-row-echelon solution with free unknowns set to zero,
    or None when the system is inconsistent.
    """
    if not any(target.values()):
        return {}
    rows = _row_index(columns, [target])
    width = len(columns)
    if width == 0:
        return None
    reduced, pivots = _rref(list(columns) + [target], rows)
    if width in pivots:
        return None
    solution: dict[int, Any] = {}
    for i, pivot in enumerate(pivots):
        value = reduced.get(i, {}).get(width)
        if value:
            solution[pivot] = value
    return solution


def kernel_basis(columns: Sequence[Column]) -> list[dict[int, Any]]:
    """Basis of {c : sum_j c_j columns[j] = 0}, one vector per free column."""
    width = len(columns)
    if width == 0:
        return []
    rows = _row_index(columns)
    if not rows:
        return [{j: QQ(1)} for j in range(width)]
    reduced, pivots = _rref(columns, rows)
    pivot_rows = {pivot: i for i, pivot in enumerate(pivots)}
    basis: list[dict[int, Any]] = []
    for free in range(width):
        if free in pivot_rows:
            continue
        vector = {free: QQ(1)}
        for pivot, i in pivot_rows.items():
            value = reduced.get(i, {}).get(free)
            if value:
                vector[pivot] = -value
        basis.append(vector)
    return basis


def independent_modulo(span: Sequence[Column], candidates: Sequence[Column]) -> list[int]:
    """Indices of candidates forming a basis of span(span + candidates) / span(span).

    Pivot columns of [span | candidates] decide, so the choice is the
    row-echelon one under the sorted row order.
    """
    if not candidates:
        return []
    rows = _row_index(span, candidates)
    if not rows:
        return []
    _, pivots = _rref(list(span) + list(candidates), rows)
    offset = len(span)
    return [p - offset for p in pivots if p >= offset]
