from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from itertools import combinations

from sympy.polys.rings import PolyElement

from src.algebra.commutative import render_polynomial
from src.algebra.errors import InvalidInput, NotInIdeal, NotNambuIdeal
from src.algebra.groebner import IdealPresentation
from src.step1_nambu.tensor import NambuTensor, bracket_eval, sort_with_sign
from src.step2_connection.models import ZEntry, ZTensorReport

logger = logging.getLogger(__name__)

ZKey = tuple[tuple[int, ...], int]


class ZTensor:
    """Cofactors with sum_nu Z^nu_{I mu} f_nu = {x_I, f_mu}, stored on sorted I.

    ``values[(I, mu)]`` is the tuple (Z^1_{I mu}, ..., Z^k_{I mu}); missing keys are zero.
    """

    def __init__(
        self,
        *,
        tensor: NambuTensor,
        ideal: IdealPresentation,
        values: Mapping[ZKey, Sequence[PolyElement]],
        diagonal_keys: frozenset[ZKey] = frozenset(),
    ) -> None:
        self.tensor = tensor
        self.ideal = ideal
        self.ring = tensor.ring
        self.k = ideal.k
        self.diagonal_keys = diagonal_keys
        self._values: dict[ZKey, tuple[PolyElement, ...]] = {}
        for (indices, mu), row in values.items():
            if len(row) != self.k:
                raise InvalidInput(f"Z row for {indices}, {mu} has {len(row)} entries, expected {self.k}")
            if any(row):
                self._values[(tuple(indices), mu)] = tuple(self.ring(c) for c in row)

    @property
    def arity(self) -> int:
        return self.tensor.arity

    @property
    def is_zero(self) -> bool:
        return not self._values

    def row(self, indices: Sequence[int], mu: int) -> tuple[PolyElement, ...]:
        """Z^._{I mu} for any index tuple, antisymmetric in I."""
        sign, ordered = sort_with_sign(indices)
        zero = tuple(self.ring.zero for _ in range(self.k))
        if sign == 0:
            return zero
        values = self._values.get((ordered, mu))
        if values is None:
            return zero
        return values if sign > 0 else tuple(-c for c in values)

    def get(self, indices: Sequence[int], mu: int, nu: int) -> PolyElement:
        return self.row(indices, mu)[nu - 1]

    def items(self) -> Iterator[tuple[ZKey, tuple[PolyElement, ...]]]:
        return iter(sorted(self._values.items()))

    def combination(self, indices: Sequence[int], mu: int) -> PolyElement:
        """sum_nu Z^nu_{I mu} f_nu."""
        out = self.ring.zero
        for c, f in zip(self.row(indices, mu), self.ideal.generators):
            if c:
                out = out + c * f
        return out

    def verify(self) -> list[ZKey]:
        """Keys where the defining identity fails when re-expanded in S."""
        failures: list[ZKey] = []
        for indices in combinations(range(1, self.tensor.n + 1), self.arity - 1):
            coords = [self.tensor.coordinate(i) for i in indices]
            for mu, f in enumerate(self.ideal.generators, start=1):
                bracket = bracket_eval(self.tensor, *coords, f, reduce=False)
                if bracket != self.combination(indices, mu):
                    failures.append((indices, mu))
        return failures

    def report(self) -> ZTensorReport:
        entries = [
            ZEntry(indices=list(indices), mu=mu, nu=nu, value=render_polynomial(c))
            for (indices, mu), row in self.items()
            for nu, c in enumerate(row, start=1)
            if c
        ]
        return ZTensorReport(
            n=self.tensor.n,
            arity=self.arity,
            k=self.k,
            generators=self.ideal.render(),
            entries=entries,
            all_zero=self.is_zero,
            diagonal_lifts=len(self.diagonal_keys),
            groebner_lifts=len(self._values) - len(self.diagonal_keys & set(self._values)),
        )


def compute_Z(tensor: NambuTensor, ideal: IdealPresentation) -> ZTensor:
    """Lift every bracket {x_I, f_mu} into the generators.

    A bracket that f_mu divides gets the diagonal cofactor; anything else goes
    through the Groebner lift. Raises NotNambuIdeal on the first bracket outside I.
    """
    values: dict[ZKey, tuple[PolyElement, ...]] = {}
    diagonal_keys: set[ZKey] = set()
    ring = tensor.ring
    k = ideal.k
    for indices in combinations(range(1, tensor.n + 1), tensor.arity - 1):
        coords = [tensor.coordinate(i) for i in indices]
        for mu, f in enumerate(ideal.generators, start=1):
            bracket = bracket_eval(tensor, *coords, f, reduce=False)
            if not bracket:
                continue
            row = [ring.zero] * k
            if f:
                quotient, remainder = bracket.div(f)
                if not remainder:
                    row[mu - 1] = quotient
                    values[(indices, mu)] = tuple(row)
                    diagonal_keys.add((indices, mu))
                    continue
            try:
                values[(indices, mu)] = ideal.lift(bracket)
            except NotInIdeal:
                raise NotNambuIdeal(indices, mu, render_polynomial(ideal.normal_form(bracket))) from None
    logger.info(
        "Z tensor: %d nonzero rows (%d diagonal) over %d generators",
        len(values),
        len(diagonal_keys),
        k,
    )
    return ZTensor(tensor=tensor, ideal=ideal, values=values, diagonal_keys=frozenset(diagonal_keys))
