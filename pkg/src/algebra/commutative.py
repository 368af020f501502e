from __future__ import annotations

from collections.abc import Mapping, Sequence
from functools import lru_cache
from typing import Any

from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.errors import InvalidInput, ParseError
from src.algebra.superpoly import SuperPolynomial
from src.algebra.variables import Kind, Variable

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


@lru_cache(maxsize=None)
def coordinate_ring(n: int) -> PolyRing:
    """QQ[x1..xn] with graded reverse lexicographic order."""
    if n < 1:
        raise InvalidInput("at least one coordinate is required")
    return PolyRing([f"x{i}" for i in range(1, n + 1)], QQ, grevlex)


def parse_polynomial(
    text: str,
    ring: PolyRing,
    aliases: Mapping[str, str] | None = None,
    definitions: Mapping[str, PolyElement] | None = None,
) -> PolyElement:
    """Parse ``x1*x2 - 3/4*x3^2`` style input; aliases map e.g. ``y`` to ``x2``.

    ``definitions`` names whole polynomials (``u4`` -> x1*x2*x3) usable inside ``text``.
    """
    names = {str(sym): sym for sym in ring.symbols}
    local: dict[str, Any] = dict(names)
    for alias, target in (aliases or {}).items():
        if target not in names:
            raise ParseError(f"alias {alias!r} points to unknown coordinate {target!r}")
        local[alias] = names[target]
    for name, poly in (definitions or {}).items():
        local[name] = ring(poly).as_expr()
    try:
        expr = parse_expr(str(text), local_dict=local, transformations=_TRANSFORMATIONS)
        unknown = {str(s) for s in expr.free_symbols if isinstance(s, Symbol)} - set(names)
        if unknown:
            raise ParseError(f"unknown variables {sorted(unknown)} in {text!r}")
        return ring.from_expr(expr)
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"cannot parse polynomial {text!r}: {exc}") from exc


def render_polynomial(p: PolyElement) -> str:
    return "0" if not p else str(p.as_expr())


def to_super(p: PolyElement) -> SuperPolynomial:
    terms = {}
    for monom, coeff in p.terms():
        mono = tuple((Variable.x(i + 1), e) for i, e in enumerate(monom) if e)
        terms[mono] = coeff
    return SuperPolynomial(terms)


def from_super(value: SuperPolynomial, ring: PolyRing) -> PolyElement:
    """Read a super-polynomial in level-0 x's back into the commutative ring."""
    ngens = ring.ngens
    data = {}
    for mono, coeff in value.items():
        exps = [0] * ngens
        for var, e in mono:
            if var.kind != Kind.EVEN or var.level != 0 or var.index > ngens:
                raise InvalidInput(f"{var.render()} is not a coordinate of the base ring")
            exps[var.index - 1] = e
        data[tuple(exps)] = coeff
    return ring.from_dict(data) if data else ring.zero


def partials(p: PolyElement) -> list[PolyElement]:
    return [p.diff(gen) for gen in p.ring.gens]


def support(p: PolyElement) -> list[int]:
    """Indices (0-based) of coordinates that occur in p."""
    used: set[int] = set()
    for monom in p.itermonoms():
        used.update(i for i, e in enumerate(monom) if e)
    return sorted(used)


def weighted_degree(p: PolyElement, weights: Sequence[int]) -> int | None:
    """Internal degree of a weighted-homogeneous p; None when p is zero or inhomogeneous."""
    degrees = {sum(w * e for w, e in zip(weights, monom)) for monom in p.itermonoms()}
    return degrees.pop() if len(degrees) == 1 else None


def substitute(p: PolyElement, images: Sequence[PolyElement]) -> PolyElement:
    """Compose p(x1..xn) with xi -> images[i] (images may live in another ring)."""
    target = images[0].ring
    out = target.zero
    for monom, coeff in p.terms():
        term = target.one * coeff
        for image, e in zip(images, monom):
            if e:
                term = term * image**e
        out = out + term
    return out
