from __future__ import annotations

import re
from bisect import bisect_right
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from functools import lru_cache
from typing import Any

from sympy import QQ

from src.algebra.errors import ParseError
from src.algebra.grading import Grading, InternalGrading, Mixed
from src.algebra.variables import (
    Kind,
    Variable,
    cohomological_degree,
    filtration_degree,
    parse_variable,
    parity,
    xi_level,
)
from src.config.schemas import JsonSchemaModel

# Sorted by the canonical variable order; parity-odd variables carry exponent 1.
Monomial = tuple[tuple[Variable, int], ...]

ONE: Monomial = ()


def to_rational(value: Any) -> Any:
    """Coerce ints, strings like "3/4", Fractions and sympy rationals into QQ."""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return QQ(int(num), int(den))
        return QQ(int(text))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def render_rational(value: Any) -> str:
    num, den = QQ.numer(value), QQ.denom(value)
    return str(num) if den == 1 else f"{num}/{den}"


@lru_cache(maxsize=1 << 18)
def monomial_product(a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
    """Product of two canonical monomials as (sign, monomial), None when it vanishes."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    merged = dict(a)
    odd_a = [v for v, _ in a if parity(v)]
    inversions = 0
    for v, e in b:
        if parity(v):
            if v in merged:
                return None
            inversions += len(odd_a) - bisect_right(odd_a, v)
            merged[v] = 1
        else:
            merged[v] = merged.get(v, 0) + e
    return (-1 if inversions % 2 else 1), tuple(sorted(merged.items()))


def monomial_parity(mono: Monomial) -> int:
    return sum(e * parity(v) for v, e in mono) % 2


def monomial_degree(mono: Monomial, grading: Grading, internal: InternalGrading | None = None) -> int:
    if grading is Grading.COHOMOLOGICAL:
        return sum(e * cohomological_degree(v) for v, e in mono)
    if grading is Grading.FILTRATION:
        return sum(e * filtration_degree(v) for v, e in mono)
    if grading is Grading.XI_LEVEL:
        return sum(e * xi_level(v) for v, e in mono)
    if grading is Grading.XI_DEGREE:
        return sum(e for v, e in mono if v.kind == Kind.ODD)
    if grading is Grading.PARITY:
        return monomial_parity(mono)
    if internal is None:
        raise ValueError("internal degrees need an InternalGrading")
    return sum(e * internal.weight(v) for v, e in mono)


def split_xi(mono: Monomial) -> tuple[Monomial, Monomial]:
    """Split into (x-part, xi-part); x's precede xi's so the split costs no sign."""
    for pos, (v, _) in enumerate(mono):
        if v.kind == Kind.ODD:
            return mono[:pos], mono[pos:]
    return mono, ()


class DegreeReport(JsonSchemaModel):
    is_zero: bool = False
    cohomological: int | Mixed | None = None
    filtration: int | None = None
    internal: int | Mixed | None = None
    parity: int | Mixed | None = None
    xi_level: int | Mixed | None = None


class SuperPolynomial:
    """Sparse exact-rational polynomial in the graded variables x_i^(l), xi^i_(l).

    Values are immutable. Terms are kept in canonical form: monomials sorted by
    the global variable order with the Koszul sign folded into the coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Any] | None = None) -> None:
        self._terms: dict[Monomial, Any] = {m: c for m, c in (terms or {}).items() if c}
        self._hash: int | None = None

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> SuperPolynomial:
        return cls()

    @classmethod
    def constant(cls, value: Any) -> SuperPolynomial:
        return cls({ONE: to_rational(value)})

    @classmethod
    def one(cls) -> SuperPolynomial:
        return cls.constant(1)

    @classmethod
    def variable(cls, var: Variable) -> SuperPolynomial:
        return cls({((var, 1),): QQ(1)})

    @classmethod
    def product(cls, factors: Iterable[Variable | tuple[Variable, int]], coeff: Any = 1) -> SuperPolynomial:
        """Ordered product of variables, normalized with the Koszul sign."""
        result = cls.constant(coeff)
        for factor in factors:
            var, exp = (factor, 1) if isinstance(factor, Variable) else factor
            for _ in range(exp):
                result = result * cls.variable(var)
        return result

    # container protocol ----------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Any]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[Monomial, Any]]:
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SuperPolynomial):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"SuperPolynomial({self.render_line()!r})"

    def __str__(self) -> str:
        return self.render_line()

    # arithmetic -------------------------------------------------------

    def __add__(self, other: SuperPolynomial) -> SuperPolynomial:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return SuperPolynomial(out)

    def __neg__(self) -> SuperPolynomial:
        return SuperPolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: SuperPolynomial) -> SuperPolynomial:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) - c
        return SuperPolynomial(out)

    def scale(self, value: Any) -> SuperPolynomial:
        factor = to_rational(value)
        if not factor:
            return SuperPolynomial()
        return SuperPolynomial({m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other: Any) -> SuperPolynomial:
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        out: dict[Monomial, Any] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                res = monomial_product(m1, m2)
                if res is None:
                    continue
                sign, mono = res
                value = c1 * c2 if sign > 0 else -(c1 * c2)
                out[mono] = out.get(mono, 0) + value
        return SuperPolynomial(out)

    def __rmul__(self, other: Any) -> SuperPolynomial:
        return self.scale(other)

    @staticmethod
    def sum(parts: Iterable[SuperPolynomial]) -> SuperPolynomial:
        out: dict[Monomial, Any] = {}
        for part in parts:
            for m, c in part._terms.items():
                out[m] = out.get(m, 0) + c
        return SuperPolynomial(out)

    # derivatives ------------------------------------------------------

    def left_deriv(self, var: Variable) -> SuperPolynomial:
        return self._deriv(var, from_left=True)

    def right_deriv(self, var: Variable) -> SuperPolynomial:
        return self._deriv(var, from_left=False)

    def _deriv(self, var: Variable, *, from_left: bool) -> SuperPolynomial:
        odd = parity(var) == 1
        out: dict[Monomial, Any] = {}
        for mono, coeff in self._terms.items():
            for pos, (v, e) in enumerate(mono):
                if v == var:
                    break
            else:
                continue
            if odd:
                passed = mono[:pos] if from_left else mono[pos + 1 :]
                crossings = sum(1 for w, _ in passed if parity(w))
                value = -coeff if crossings % 2 else coeff
                rest = mono[:pos] + mono[pos + 1 :]
            else:
                value = coeff * e
                rest = mono[:pos] + (((var, e - 1),) if e > 1 else ()) + mono[pos + 1 :]
            out[rest] = out.get(rest, 0) + value
        return SuperPolynomial(out)

    # gradings ---------------------------------------------------------

    def variables(self) -> set[Variable]:
        return {v for mono in self._terms for v, _ in mono}

    def max_level(self) -> int:
        return max((v.level for v in self.variables()), default=0)

    def parity(self) -> int | None:
        """Parity of a parity-homogeneous value; None for zero or mixed values."""
        values = {monomial_parity(m) for m in self._terms}
        return values.pop() if len(values) == 1 else None

    def degree_values(self, grading: Grading, internal: InternalGrading | None = None) -> set[int]:
        return {monomial_degree(m, grading, internal) for m in self._terms}

    def degrees(self, internal: InternalGrading | None = None) -> DegreeReport:
        if not self._terms:
            return DegreeReport(is_zero=True)

        def _single(grading: Grading) -> int | Mixed:
            values = self.degree_values(grading, internal)
            return values.pop() if len(values) == 1 else "mixed"

        return DegreeReport(
            cohomological=_single(Grading.COHOMOLOGICAL),
            filtration=min(self.degree_values(Grading.FILTRATION)),
            internal=_single(Grading.INTERNAL) if internal is not None else None,
            parity=_single(Grading.PARITY),
            xi_level=_single(Grading.XI_LEVEL),
        )

    def filtration(self) -> int | None:
        values = self.degree_values(Grading.FILTRATION)
        return min(values) if values else None

    def homogeneous_part(
        self,
        grading: Grading,
        value: int,
        internal: InternalGrading | None = None,
    ) -> SuperPolynomial:
        return SuperPolynomial(
            {m: c for m, c in self._terms.items() if monomial_degree(m, grading, internal) == value}
        )

    def filtration_below(self, bound: int) -> SuperPolynomial:
        return SuperPolynomial(
            {m: c for m, c in self._terms.items() if monomial_degree(m, Grading.FILTRATION) < bound}
        )

    def augmentation(self) -> SuperPolynomial:
        """Set every xi to zero."""
        return SuperPolynomial(
            {m: c for m, c in self._terms.items() if all(v.kind == Kind.EVEN for v, _ in m)}
        )

    def xi_patterns(self) -> dict[Monomial, SuperPolynomial]:
        """Decompose as sum over xi-monomials P of r_P * P, with r_P free of xi's."""
        out: dict[Monomial, dict[Monomial, Any]] = {}
        for mono, coeff in self._terms.items():
            x_part, xi_part = split_xi(mono)
            out.setdefault(xi_part, {})[x_part] = coeff
        return {pattern: SuperPolynomial(terms) for pattern, terms in out.items()}

    # text format ------------------------------------------------------

    @staticmethod
    def render_monomial(mono: Monomial) -> str:
        if not mono:
            return "1"
        return "*".join(v.render() if e == 1 else f"{v.render()}^{e}" for v, e in mono)

    def render_terms(self) -> list[str]:
        return [f"{render_rational(c)} * {self.render_monomial(m)}" for m, c in self.sorted_items()]

    def render(self) -> str:
        """Golden-file form: one term per line."""
        lines = self.render_terms()
        return "\n".join(lines) if lines else "0"

    def render_line(self) -> str:
        lines = self.render_terms()
        return " + ".join(lines) if lines else "0"

    @classmethod
    def parse(cls, text: str) -> SuperPolynomial:
        """Read the canonical text format; factors may come in any order and " - " separates too."""
        pieces = [
            piece.strip()
            for line in text.strip().splitlines()
            for piece in line.replace(" - ", " + -").split(" + ")
        ]
        parts: list[SuperPolynomial] = []
        for piece in pieces:
            if not piece or piece == "0":
                continue
            try:
                parts.append(_parse_term(piece))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"cannot parse term {piece!r}: {exc}") from exc
        return cls.sum(parts)


_TERM_RE = re.compile(r"^([+-]?\s*\d+(?:/\d+)?)\s*\*\s*(.+)$")
_FACTOR_RE = re.compile(r"^(xi\d+_\d+|x\d+_\d+)(?:\^(\d+))?$")


def _parse_term(piece: str) -> SuperPolynomial:
    coeff: Any = QQ(1)
    body = piece
    match = _TERM_RE.match(piece)
    if match is not None:
        coeff = to_rational(match.group(1).replace(" ", ""))
        body = match.group(2).strip()
    elif re.fullmatch(r"[+-]?\s*\d+(?:/\d+)?", piece):
        return SuperPolynomial.constant(to_rational(piece.replace(" ", "")))
    elif body.startswith("-"):
        coeff = QQ(-1)
        body = body[1:].strip()
    if body == "1":
        return SuperPolynomial.constant(coeff)
    factors: list[tuple[Variable, int]] = []
    for token in body.split("*"):
        found = _FACTOR_RE.match(token.strip())
        if found is None:
            raise ValueError(f"bad factor {token!r}")
        factors.append((parse_variable(found.group(1)), int(found.group(2) or 1)))
    return SuperPolynomial.product(factors, coeff)
