from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from sympy import QQ

from src.algebra.commutative import coordinate_ring, from_super
from src.algebra.errors import InvalidInput, MissingGrading
from src.algebra.grading import Grading, InternalGrading
from src.algebra.groebner import IdealPresentation
from src.algebra.superpoly import Monomial, SuperPolynomial, monomial_degree
from src.algebra.variables import Variable, parity


@dataclass(frozen=True)
class AdjoinedVariable:
    """x_index^(level) with differential image F in the variables of lower level."""

    level: int
    index: int
    image: SuperPolynomial
    weight: int | None = None

    @property
    def variable(self) -> Variable:
        return Variable.x(self.index, self.level)

    @property
    def conjugate(self) -> Variable:
        return Variable.xi(self.index, self.level)


@dataclass(frozen=True)
class ResolventLevel:
    level: int
    variables: tuple[AdjoinedVariable, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.variables)


class ResolventTruncation:
    """Semifree truncation R_{<=r}: QQ[x1..xn] with adjoined variables on levels 1..r.

    Levels may be empty. The differential acts on x's only and treats xi's as
    constants, which is the d of the perturbation recursion.
    """

    def __init__(
        self,
        *,
        n: int,
        levels: Sequence[ResolventLevel] = (),
        base_weights: Sequence[int] | None = None,
    ) -> None:
        self.n = n
        self.base_weights: tuple[int, ...] | None = tuple(base_weights) if base_weights is not None else None
        if self.base_weights is not None and len(self.base_weights) != n:
            raise InvalidInput(f"expected {n} base weights, got {len(self.base_weights)}")
        self.levels: tuple[ResolventLevel, ...] = tuple(levels)
        for position, level in enumerate(self.levels, start=1):
            if level.level != position:
                raise InvalidInput(f"levels must be consecutive from 1, got level {level.level} at {position}")
        self._images: dict[Variable, SuperPolynomial] = {
            var.variable: var.image for level in self.levels for var in level.variables
        }
        self._slice_cache: dict[tuple[int, int, int], tuple[Monomial, ...]] = {}
        self._diff_cache: dict[Monomial, SuperPolynomial] = {}

    # structure ---------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, level: int) -> ResolventLevel:
        return self.levels[level - 1]

    def adjoined(self, max_level: int | None = None) -> list[AdjoinedVariable]:
        top = self.depth if max_level is None else min(max_level, self.depth)
        return [var for level in self.levels[:top] for var in level.variables]

    def variables(self, max_level: int | None = None) -> list[Variable]:
        """Every even generator x_j^(l) with l <= max_level, in canonical order."""
        base = [Variable.x(i) for i in range(1, self.n + 1)]
        return sorted(base + [var.variable for var in self.adjoined(max_level)])

    def image(self, var: Variable) -> SuperPolynomial:
        return self._images.get(var, SuperPolynomial())

    def counts(self) -> list[int]:
        return [len(level) for level in self.levels]

    def truncated(self, level: int) -> ResolventTruncation:
        return ResolventTruncation(n=self.n, levels=self.levels[:level], base_weights=self.base_weights)

    def with_variables(self, level: int, variables: Iterable[AdjoinedVariable]) -> ResolventTruncation:
        """Append variables to ``level`` (which may be one past the current depth)."""
        new = tuple(variables)
        levels = list(self.levels)
        if level == self.depth + 1:
            levels.append(ResolventLevel(level=level, variables=new))
        elif 1 <= level <= self.depth:
            current = levels[level - 1]
            levels[level - 1] = ResolventLevel(level=level, variables=current.variables + new)
        else:
            raise InvalidInput(f"cannot add variables at level {level} to a truncation of depth {self.depth}")
        return ResolventTruncation(n=self.n, levels=levels, base_weights=self.base_weights)

    def next_index(self, level: int) -> int:
        if level > self.depth:
            return 1
        return max((var.index for var in self.level(level).variables), default=0) + 1

    # gradings ----------------------------------------------------------

    @cached_property
    def grading(self) -> InternalGrading:
        if self.base_weights is None:
            raise MissingGrading("the truncation carries no internal weights")
        weights = {(0, i): w for i, w in enumerate(self.base_weights, start=1)}
        for var in self.adjoined():
            if var.weight is None:
                raise MissingGrading(f"no internal weight for {var.variable.render()}")
            weights[(var.level, var.index)] = var.weight
        return InternalGrading(weights)

    @property
    def has_grading(self) -> bool:
        if self.base_weights is None:
            return False
        return all(var.weight is not None for var in self.adjoined())

    def ideal(self) -> IdealPresentation:
        """The ideal generated by the level-1 images."""
        ring = coordinate_ring(self.n)
        if self.depth == 0:
            return IdealPresentation([], ring)
        return IdealPresentation([from_super(var.image, ring) for var in self.level(1).variables], ring)

    # the differential --------------------------------------------------

    def pi0(self, max_level: int | None = None) -> SuperPolynomial:
        """sum_l sum_j F_j xi^j_(l) with F on the left."""
        return SuperPolynomial.sum(
            var.image * SuperPolynomial.variable(var.conjugate) for var in self.adjoined(max_level)
        )

    def differential(self, value: SuperPolynomial, max_level: int | None = None) -> SuperPolynomial:
        """d X = sum_v F_v * dX/dx_v (left derivative), xi's inert."""
        if value.is_zero:
            return SuperPolynomial()
        present = value.variables()
        parts = [
            var.image * value.left_deriv(var.variable)
            for var in self.adjoined(max_level)
            if var.variable in present
        ]
        return SuperPolynomial.sum(parts)

    def differential_of_monomial(self, mono: Monomial) -> SuperPolynomial:
        cached = self._diff_cache.get(mono)
        if cached is None:
            cached = self.differential(SuperPolynomial({mono: QQ(1)}))
            self._diff_cache[mono] = cached
        return cached

    def is_closed(self) -> bool:
        """d^2 = 0 on every generator."""
        return all(self.differential(var.image).is_zero for var in self.adjoined())

    # degree slices -----------------------------------------------------

    def slice(self, max_level: int, cohdeg: int, weight: int) -> tuple[Monomial, ...]:
        """Monomials in x's of level <= max_level with the given cohomological degree and weight."""
        key = (min(max_level, self.depth), cohdeg, weight)
        cached = self._slice_cache.get(key)
        if cached is not None:
            return cached
        grading = self.grading
        candidates = [(var, grading.weight(var)) for var in self.variables(key[0])]
        found: list[Monomial] = []

        def extend(position: int, weight_left: int, depth_left: int, acc: list[tuple[Variable, int]]) -> None:
            if weight_left == 0:
                if depth_left == 0:
                    found.append(tuple(acc))
                return
            if position == len(candidates):
                return
            var, w = candidates[position]
            top = weight_left // w
            if parity(var):
                top = min(top, 1)
            if var.level:
                top = min(top, depth_left // var.level)
            for exp in range(top, -1, -1):
                if exp:
                    acc.append((var, exp))
                extend(position + 1, weight_left - exp * w, depth_left - exp * var.level, acc)
                if exp:
                    acc.pop()

        if cohdeg <= 0 and weight > 0:
            extend(0, weight, -cohdeg, [])
        result = tuple(sorted(found))
        self._slice_cache[key] = result
        return result

    def slice_degrees(self, mono: Monomial) -> tuple[int, int]:
        return (
            monomial_degree(mono, Grading.COHOMOLOGICAL),
            monomial_degree(mono, Grading.INTERNAL, self.grading),
        )

    def __repr__(self) -> str:
        return f"ResolventTruncation(n={self.n}, counts={self.counts()})"
