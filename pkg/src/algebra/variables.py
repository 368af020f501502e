from __future__ import annotations

import re
from enum import IntEnum
from typing import NamedTuple


class Kind(IntEnum):
    EVEN = 0
    ODD = 1


class Variable(NamedTuple):
    """A generator x_index^(level) (kind EVEN) or its conjugate xi^index_(level) (kind ODD).

    ``kind`` records the symbol family only. The parity that drives Koszul signs is
    derived from the level, see :func:`parity`. Tuple order is the canonical
    variable order: every x sorts before every xi.
    """

    kind: Kind
    level: int
    index: int

    @classmethod
    def x(cls, index: int, level: int = 0) -> Variable:
        return cls(Kind.EVEN, level, index)

    @classmethod
    def xi(cls, index: int, level: int = 0) -> Variable:
        return cls(Kind.ODD, level, index)

    @property
    def is_xi(self) -> bool:
        return self.kind == Kind.ODD

    def conjugate(self) -> Variable:
        other = Kind.EVEN if self.kind == Kind.ODD else Kind.ODD
        return Variable(other, self.level, self.index)

    def render(self) -> str:
        prefix = "xi" if self.kind == Kind.ODD else "x"
        return f"{prefix}{self.index}_{self.level}"


_NAME_RE = re.compile(r"^(xi|x)(\d+)_(\d+)$")


def parse_variable(name: str) -> Variable:
    match = _NAME_RE.match(name.strip())
    if match is None:
        raise ValueError(f"not a variable name: {name!r}")
    prefix, index, level = match.groups()
    kind = Kind.ODD if prefix == "xi" else Kind.EVEN
    if int(index) < 1:
        raise ValueError(f"variable index must be >= 1: {name!r}")
    return Variable(kind, int(level), int(index))


def parity(var: Variable) -> int:
    if var.kind == Kind.ODD:
        return (var.level + 1) % 2
    return var.level % 2


def cohomological_degree(var: Variable) -> int:
    if var.kind == Kind.ODD:
        return var.level + 1
    return -var.level


def filtration_degree(var: Variable) -> int:
    # level-0 xi's count one; every x counts zero
    if var.kind == Kind.ODD:
        return var.level + 1
    return 0


def xi_level(var: Variable) -> int:
    return var.level if var.kind == Kind.ODD else 0
