from __future__ import annotations

from collections.abc import Mapping, Sequence
from itertools import combinations
from typing import Any

from sympy.polys.rings import PolyElement

from src.algebra.commutative import coordinate_ring, parse_polynomial, substitute
from src.algebra.errors import InvalidInput, OddArity
from src.algebra.groebner import IdealPresentation
from src.algebra.superpoly import to_rational
from src.step1_nambu.tensor import NambuTensor, determinant, sort_with_sign


def diagonal(
    c: Mapping[tuple[int, ...], Any],
    *,
    n: int,
    arity: int,
    ideal: IdealPresentation | None = None,
) -> NambuTensor:
    """Diagonal bracket Pi_I = c_I x_{i1} ... x_{im} for an antisymmetric scalar c."""
    if arity % 2:
        raise OddArity(f"the diagonal bracket needs an even arity, got {arity}")
    ring = coordinate_ring(n)
    scalars: dict[tuple[int, ...], Any] = {}
    for key, value in c.items():
        sign, ordered = sort_with_sign(key)
        if sign == 0:
            continue
        scalar = to_rational(value) * sign
        if ordered in scalars and scalars[ordered] != scalar:
            raise InvalidInput(f"scalar tensor is not antisymmetric at {key}")
        scalars[ordered] = scalar
    coeffs: dict[tuple[int, ...], PolyElement] = {}
    for key, scalar in scalars.items():
        if any(i < 1 or i > n for i in key):
            raise InvalidInput(f"index tuple {key} outside 1..{n}")
        monomial = ring.one
        for i in key:
            monomial = monomial * ring.gens[i - 1]
        coeffs[key] = monomial * scalar
    return NambuTensor(n=n, arity=arity, coeffs=coeffs, ideal=ideal, label="diagonal")


def determinantal(
    g: PolyElement,
    casimirs: Sequence[PolyElement],
    *,
    n: int,
    arity: int,
    derivations: Sequence[int] | None = None,
    ideal: IdealPresentation | None = None,
) -> NambuTensor:
    """{a_1..a_m} = g * Det(d/dx_d of f_1..f_k, a_1..a_m) over the chosen coordinate derivations.

    ``derivations`` lists the coordinate partials used as columns; it defaults to
    x_1 .. x_{k+m}.
    """
    ring = coordinate_ring(n)
    k = len(casimirs)
    columns = list(derivations) if derivations is not None else list(range(1, k + arity + 1))
    if len(columns) != k + arity:
        raise InvalidInput(f"{k} Casimirs and arity {arity} need {k + arity} derivations, got {len(columns)}")
    if len(set(columns)) != len(columns):
        raise InvalidInput(f"repeated coordinate derivations {columns}")
    if any(d < 1 or d > n for d in columns):
        raise InvalidInput(f"derivations {columns} outside 1..{n}")

    g = ring(g)
    rows = [[ring(f).diff(ring.gens[d - 1]) for d in columns] for f in casimirs]
    position = {d: col for col, d in enumerate(columns)}
    coeffs: dict[tuple[int, ...], PolyElement] = {}
    if g:
        for key in combinations(range(1, n + 1), arity):
            if any(i not in position for i in key):
                continue
            units = [[ring.one if col == position[i] else ring.zero for col in range(len(columns))] for i in key]
            value = determinant(rows + units, ring)
            if value:
                coeffs[key] = g * value
    return NambuTensor(n=n, arity=arity, coeffs=coeffs, ideal=ideal, label="determinantal")


def outer(a: NambuTensor, b: NambuTensor) -> NambuTensor:
    """Outer tensor product on the disjoint union of both coordinate alphabets.

    B's coordinates are renumbered after A's, so Pi_{I u J} = Pi^A_I * Pi^B_J with
    no shuffle sign, and every mixed tuple of the wrong shape is zero.
    """
    n = a.n + b.n
    ring = coordinate_ring(n)
    left = list(ring.gens[: a.n])
    right = list(ring.gens[a.n :])
    coeffs: dict[tuple[int, ...], PolyElement] = {}
    for key_a, value_a in a.coeffs.items():
        lifted_a = substitute(value_a, left)
        for key_b, value_b in b.coeffs.items():
            shifted = tuple(j + a.n for j in key_b)
            coeffs[key_a + shifted] = lifted_a * substitute(value_b, right)
    generators: list[PolyElement] = []
    if a.ideal is not None:
        generators.extend(substitute(f, left) for f in a.ideal.generators)
    if b.ideal is not None:
        generators.extend(substitute(f, right) for f in b.ideal.generators)
    ideal = IdealPresentation(generators, ring) if generators else None
    return NambuTensor(n=n, arity=a.arity + b.arity, coeffs=coeffs, ideal=ideal, label="outer")


def explicit(
    coeffs: Mapping[tuple[int, ...], str | PolyElement],
    *,
    n: int,
    arity: int,
    aliases: Mapping[str, str] | None = None,
    ideal: IdealPresentation | None = None,
) -> NambuTensor:
    ring = coordinate_ring(n)
    parsed = {
        key: parse_polynomial(value, ring, aliases) if isinstance(value, str) else ring(value)
        for key, value in coeffs.items()
    }
    return NambuTensor(n=n, arity=arity, coeffs=parsed, ideal=ideal, label="explicit")


def embed(p: PolyElement, n: int) -> PolyElement:
    """Read a polynomial of a smaller coordinate ring inside QQ[x1..xn]."""
    ring = coordinate_ring(n)
    return substitute(p, list(ring.gens[: p.ring.ngens])) if p else ring.zero
