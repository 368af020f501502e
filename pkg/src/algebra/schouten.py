from __future__ import annotations

from src.algebra.grading import Grading
from src.algebra.superpoly import SuperPolynomial, monomial_degree, monomial_product
from src.algebra.variables import Kind


def _product(left: SuperPolynomial, right: SuperPolynomial, max_filtration: int | None) -> SuperPolynomial:
    if max_filtration is None:
        return left * right
    right_fd = {m: monomial_degree(m, Grading.FILTRATION) for m in right.terms}
    out: dict = {}
    for m1, c1 in left.items():
        fd1 = monomial_degree(m1, Grading.FILTRATION)
        if fd1 > max_filtration:
            continue
        for m2, c2 in right.items():
            if fd1 + right_fd[m2] > max_filtration:
                continue
            res = monomial_product(m1, m2)
            if res is None:
                continue
            sign, mono = res
            value = c1 * c2 if sign > 0 else -(c1 * c2)
            out[mono] = out.get(mono, 0) + value
    return SuperPolynomial(out)


def schouten(X: SuperPolynomial, Y: SuperPolynomial, *, max_filtration: int | None = None) -> SuperPolynomial:
    """Schouten bracket in Darboux coordinates (x_v, xi_v) of every level.

    [[X, Y]] = sum_v  X <d/dxi_v  d/dx_v> Y  -  X <d/dx_v  d/dxi_v> Y,
    normalized so that [[xi^i, x_j]] = delta_ij. With ``max_filtration`` set,
    terms above that filtration degree are never formed.
    """
    if X.is_zero or Y.is_zero:
        return SuperPolynomial()
    x_vars = X.variables()
    y_vars = Y.variables()
    parts: list[SuperPolynomial] = []
    for xi in sorted(v for v in x_vars if v.kind == Kind.ODD):
        x = xi.conjugate()
        if x in y_vars:
            parts.append(_product(X.right_deriv(xi), Y.left_deriv(x), max_filtration))
    for x in sorted(v for v in x_vars if v.kind == Kind.EVEN):
        xi = x.conjugate()
        if xi in y_vars:
            parts.append(-_product(X.right_deriv(x), Y.left_deriv(xi), max_filtration))
    return SuperPolynomial.sum(parts)


def contract_coordinate(X: SuperPolynomial, a: SuperPolynomial) -> SuperPolynomial:
    """[[X, a]] for an a without xi's: only the first half of the bracket survives."""
    parts: list[SuperPolynomial] = []
    x_vars = X.variables()
    for x in sorted(v for v in a.variables() if v.kind == Kind.EVEN):
        xi = x.conjugate()
        if xi in x_vars:
            parts.append(X.right_deriv(xi) * a.left_deriv(x))
    return SuperPolynomial.sum(parts)
