from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from functools import cached_property
from itertools import combinations, product

from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.commutative import coordinate_ring, render_polynomial, support, to_super
from src.algebra.errors import InvalidInput
from src.algebra.groebner import IdealPresentation
from src.algebra.schouten import schouten
from src.algebra.superpoly import SuperPolynomial
from src.algebra.variables import Variable


def sort_with_sign(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, tuple(sorted(items))
    inversions = sum(1 for a in range(len(items)) for b in range(a + 1, len(items)) if items[a] > items[b])
    return (-1 if inversions % 2 else 1), tuple(sorted(items))


def determinant(matrix: Sequence[Sequence[PolyElement]], ring: PolyRing) -> PolyElement:
    """Laplace expansion along rows with minors memoized by column mask."""
    size = len(matrix)
    if size == 0:
        return ring.one
    memo: dict[tuple[int, int], PolyElement] = {}

    def minor(row: int, used: int) -> PolyElement:
        if row == size:
            return ring.one
        key = (row, used)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = ring.zero
        sign = 1
        for col in range(size):
            if used & (1 << col):
                continue
            entry = matrix[row][col]
            if entry:
                rest = minor(row + 1, used | (1 << col))
                if rest:
                    total = total + entry * rest if sign > 0 else total - entry * rest
            sign = -sign
        memo[key] = total
        return total

    return minor(0, 0)


class NambuTensor:
    """Antisymmetric family Pi_{i1..im} in QQ[x1..xn], stored on sorted index tuples."""

    def __init__(
        self,
        *,
        n: int,
        arity: int,
        coeffs: Mapping[tuple[int, ...], PolyElement],
        ideal: IdealPresentation | None = None,
        label: str = "",
    ) -> None:
        if arity < 2:
            raise InvalidInput(f"arity must be at least 2, got {arity}")
        if arity > n:
            raise InvalidInput(f"arity {arity} exceeds the number of coordinates {n}")
        self.n = n
        self.arity = arity
        self.ring = coordinate_ring(n)
        self.ideal = ideal
        self.label = label
        stored: dict[tuple[int, ...], PolyElement] = {}
        for key, value in coeffs.items():
            if len(key) != arity or any(i < 1 or i > n for i in key):
                raise InvalidInput(f"index tuple {key} does not fit arity {arity} on {n} coordinates")
            sign, ordered = sort_with_sign(key)
            if sign == 0:
                if value:
                    raise InvalidInput(f"repeated indices {key} must carry a zero coefficient")
                continue
            poly = self.ring(value) * sign
            if ordered in stored and stored[ordered] != poly:
                raise InvalidInput(f"coefficients for {key} contradict antisymmetry")
            if poly:
                stored[ordered] = poly
        self.coeffs: dict[tuple[int, ...], PolyElement] = dict(sorted(stored.items()))

    def coefficient(self, indices: Sequence[int]) -> PolyElement:
        sign, ordered = sort_with_sign(indices)
        if sign == 0:
            return self.ring.zero
        value = self.coeffs.get(ordered)
        if value is None:
            return self.ring.zero
        return value if sign > 0 else -value

    def index_tuples(self, size: int | None = None) -> Iterable[tuple[int, ...]]:
        return combinations(range(1, self.n + 1), self.arity if size is None else size)

    def with_ideal(self, ideal: IdealPresentation | None) -> NambuTensor:
        return NambuTensor(n=self.n, arity=self.arity, coeffs=self.coeffs, ideal=ideal, label=self.label)

    def coordinate(self, i: int) -> PolyElement:
        return self.ring.gens[i - 1]

    @cached_property
    def multivector(self) -> SuperPolynomial:
        """Pi as sum over sorted I of Pi_I xi^I with level-0 xi's."""
        parts = []
        for key, value in self.coeffs.items():
            xis = SuperPolynomial.product([Variable.xi(i) for i in key])
            parts.append(to_super(value) * xis)
        return SuperPolynomial.sum(parts)

    def render(self) -> dict[str, str]:
        return {",".join(map(str, key)): render_polynomial(value) for key, value in self.coeffs.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NambuTensor):
            return NotImplemented
        return (self.n, self.arity, self.coeffs) == (other.n, other.arity, other.coeffs)

    def __repr__(self) -> str:
        return f"NambuTensor(n={self.n}, arity={self.arity}, terms={len(self.coeffs)})"


class HamiltonianField:
    """Derivation X = sum_r X_r d/dx_r of QQ[x1..xn]."""

    def __init__(self, ring: PolyRing, coefficients: Mapping[int, PolyElement]) -> None:
        self.ring = ring
        self.coefficients: dict[int, PolyElement] = {r: c for r, c in sorted(coefficients.items()) if c}

    def __call__(self, b: PolyElement) -> PolyElement:
        out = self.ring.zero
        for r, c in self.coefficients.items():
            derivative = b.diff(self.ring.gens[r - 1])
            if derivative:
                out = out + c * derivative
        return out

    @property
    def is_zero(self) -> bool:
        return not self.coefficients


def bracket_eval(tensor: NambuTensor, *args: PolyElement, reduce: bool = True) -> PolyElement:
    """{g_1, ..., g_m} = sum Pi_{i1..im} dg_1/dx_{i1} ... dg_m/dx_{im}.

    Reduced to normal form when the tensor carries an ideal and ``reduce`` holds.
    """
    if len(args) != tensor.arity:
        raise InvalidInput(f"bracket of arity {tensor.arity} got {len(args)} arguments")
    ring = tensor.ring
    gens = ring.gens
    grads: list[dict[int, PolyElement]] = []
    for g in args:
        g = ring(g)
        grads.append({i + 1: g.diff(gens[i]) for i in support(g)})
        if not grads[-1]:
            return ring.zero
    total = ring.zero
    for choice in product(*(sorted(grad) for grad in grads)):
        coeff = tensor.coefficient(choice)
        if not coeff:
            continue
        term = coeff
        for grad, i in zip(grads, choice):
            term = term * grad[i]
        total = total + term
    if reduce and tensor.ideal is not None:
        return tensor.ideal.normal_form(total)
    return total


def hamiltonian_field(tensor: NambuTensor, *args: PolyElement) -> HamiltonianField:
    """X_{a_1..a_{m-1}} with coefficients {a_1, ..., a_{m-1}, x_r}."""
    if len(args) != tensor.arity - 1:
        raise InvalidInput(f"a Hamiltonian field needs {tensor.arity - 1} arguments, got {len(args)}")
    coefficients = {
        r: bracket_eval(tensor, *args, tensor.coordinate(r), reduce=False) for r in range(1, tensor.n + 1)
    }
    return HamiltonianField(tensor.ring, coefficients)


def is_casimir(tensor: NambuTensor, f: PolyElement, ideal: IdealPresentation | None = None) -> bool:
    for indices in tensor.index_tuples(tensor.arity - 1):
        value = bracket_eval(tensor, *(tensor.coordinate(i) for i in indices), f, reduce=False)
        if not value:
            continue
        if ideal is None or not ideal.member(value):
            return False
    return True


def delta_nambu(tensor: NambuTensor, Y: SuperPolynomial) -> SuperPolynomial:
    """Nambu-cohomology differential [[Pi, Y]] on level-0 multivectors."""
    return schouten(tensor.multivector, Y)
