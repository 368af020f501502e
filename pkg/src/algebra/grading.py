from __future__ import annotations

from collections.abc import Mapping
from enum import Enum
from typing import Literal

from src.algebra.errors import MissingGrading
from src.algebra.variables import Kind, Variable

Mixed = Literal["mixed"]


class Grading(str, Enum):
    COHOMOLOGICAL = "cohomological"
    FILTRATION = "filtration"
    INTERNAL = "internal"
    PARITY = "parity"
    XI_LEVEL = "xi_level"
    XI_DEGREE = "xi_degree"


class InternalGrading:
    """Positive internal weights of the even generators x_j^(l).

    The conjugate xi^j_(l) carries the negative weight, so every Schouten
    bracket and the differential have internal degree 0.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights: Mapping[tuple[int, int], int]) -> None:
        for key, value in weights.items():
            if value <= 0:
                raise ValueError(f"internal weight of x{key[1]}_{key[0]} must be positive")
        self._weights: dict[tuple[int, int], int] = dict(weights)

    @classmethod
    def standard(cls, n: int) -> InternalGrading:
        return cls({(0, i): 1 for i in range(1, n + 1)})

    @classmethod
    def from_coordinate_weights(cls, weights: list[int]) -> InternalGrading:
        return cls({(0, i): w for i, w in enumerate(weights, start=1)})

    def extended(self, level: int, weights: Mapping[int, int]) -> InternalGrading:
        merged = dict(self._weights)
        merged.update({(level, index): w for index, w in weights.items()})
        return InternalGrading(merged)

    def weight(self, var: Variable) -> int:
        value = self._weights.get((var.level, var.index))
        if value is None:
            raise MissingGrading(f"no internal weight for {var.render()}")
        return -value if var.kind == Kind.ODD else value

    def has(self, var: Variable) -> bool:
        return (var.level, var.index) in self._weights

    def items(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self._weights.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, InternalGrading) and self._weights == other._weights

    def __hash__(self) -> int:
        return hash(frozenset(self._weights.items()))

    def __repr__(self) -> str:
        return f"InternalGrading({self.items()!r})"
