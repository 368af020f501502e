from __future__ import annotations

from collections.abc import Callable, Sequence
from itertools import combinations

from src.algebra.commutative import to_super
from src.algebra.errors import InvalidInput
from src.algebra.superpoly import SuperPolynomial
from src.algebra.variables import Variable
from src.step2_connection.models import MatrixEntryText
from src.step2_connection.ztensor import ZTensor


class MatrixMultiVector:
    """k x k matrix of level-0 multivectors, an element of the gl_k-valued Schouten algebra.

    ``entries[mu][nu]`` is the (mu, nu) entry; products are ordinary matrix
    products with the super-polynomial product on entries.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[SuperPolynomial]]) -> None:
        size = len(entries)
        if any(len(row) != size for row in entries):
            raise InvalidInput("a gl_k-valued multivector needs a square matrix")
        self.entries: tuple[tuple[SuperPolynomial, ...], ...] = tuple(tuple(row) for row in entries)

    @classmethod
    def zero(cls, k: int) -> MatrixMultiVector:
        return cls([[SuperPolynomial() for _ in range(k)] for _ in range(k)])

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self.entries for entry in row)

    def parity(self) -> int | None:
        values = {entry.parity() for row in self.entries for entry in row if not entry.is_zero}
        return values.pop() if len(values) == 1 else None

    def map(self, fn: Callable[[SuperPolynomial], SuperPolynomial]) -> MatrixMultiVector:
        return MatrixMultiVector([[fn(entry) for entry in row] for row in self.entries])

    def __add__(self, other: MatrixMultiVector) -> MatrixMultiVector:
        return MatrixMultiVector(
            [[a + b for a, b in zip(row_a, row_b)] for row_a, row_b in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: MatrixMultiVector) -> MatrixMultiVector:
        return MatrixMultiVector(
            [[a - b for a, b in zip(row_a, row_b)] for row_a, row_b in zip(self.entries, other.entries)]
        )

    def scale(self, value: object) -> MatrixMultiVector:
        return self.map(lambda entry: entry.scale(value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixMultiVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def render(self) -> list[MatrixEntryText]:
        return [
            MatrixEntryText(row=mu, column=nu, value=entry.render_line())
            for mu, row in enumerate(self.entries, start=1)
            for nu, entry in enumerate(row, start=1)
            if not entry.is_zero
        ]


def z_element(z: ZTensor) -> MatrixMultiVector:
    """Entry (mu, nu) = sum over sorted J of Z^nu_{J mu} xi^J.

    The sorted sum equals the full sum over index tuples divided by (m-1)!.
    """
    k = z.k
    cells: list[list[list[SuperPolynomial]]] = [[[] for _ in range(k)] for _ in range(k)]
    for indices in combinations(range(1, z.tensor.n + 1), z.arity - 1):
        xis = SuperPolynomial.product([Variable.xi(i) for i in indices])
        for mu in range(1, k + 1):
            for nu, c in enumerate(z.row(indices, mu), start=1):
                if c:
                    cells[mu - 1][nu - 1].append(to_super(c) * xis)
    return MatrixMultiVector([[SuperPolynomial.sum(cell) for cell in row] for row in cells])


def compose(p: MatrixMultiVector, q: MatrixMultiVector) -> MatrixMultiVector:
    k = p.k
    return MatrixMultiVector(
        [
            [SuperPolynomial.sum(p.entries[mu][lam] * q.entries[lam][nu] for lam in range(k)) for nu in range(k)]
            for mu in range(k)
        ]
    )


def lie_bracket(p: MatrixMultiVector, q: MatrixMultiVector) -> MatrixMultiVector:
    """[P, Q] = P o Q - (-1)^{|P||Q|} Q o P for parity-homogeneous P and Q."""
    if p.is_zero or q.is_zero:
        return MatrixMultiVector.zero(p.k)
    sign = -1 if ((p.parity() or 0) * (q.parity() or 0)) % 2 else 1
    forward = compose(p, q)
    backward = compose(q, p)
    return forward - backward if sign > 0 else forward + backward
