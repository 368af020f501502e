from __future__ import annotations

import logging
from collections.abc import Sequence
from itertools import combinations, combinations_with_replacement

from src.algebra.commutative import from_super, render_polynomial, to_super
from src.algebra.superpoly import SuperPolynomial
from src.step1_nambu.tensor import bracket_eval
from src.step4_perturb.brackets import DerivedBrackets, argument_parity
from src.step4_perturb.models import AnchorReport, AnchorViolation, JacobiResidual, LinftyReport

logger = logging.getLogger(__name__)


def _unshuffles(n: int, i: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    out = []
    for head in combinations(range(n), i):
        chosen = set(head)
        out.append((head, tuple(t for t in range(n) if t not in chosen)))
    return out


def _koszul_sign(order: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of moving elements with the given Z/2 degrees into ``order``."""
    exponent = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                exponent += degrees[order[a]] * degrees[order[b]]
    return -1 if exponent % 2 else 1


def jacobi_residual(brackets: DerivedBrackets, args: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """sum over i and (i, n-i) unshuffles of eps l_{n-i+1}(l_i(a_head), a_tail), shifted parities."""
    n = len(args)
    shifted = [(argument_parity(a) + 1) % 2 for a in args]
    parts = []
    for i in range(1, n + 1):
        for head, tail in _unshuffles(n, i):
            inner = brackets.raw(*(args[t] for t in head))
            if inner.is_zero:
                continue
            value = brackets.raw(inner, *(args[t] for t in tail))
            if value.is_zero:
                continue
            parts.append(value if _koszul_sign(head + tail, shifted) > 0 else -value)
    return SuperPolynomial.sum(parts)


def _contraction_filtration(value: SuperPolynomial) -> int:
    """Filtration degree of the xi that contracting against ``value`` removes."""
    return max((v.level + 1 for v in value.variables()), default=1)


def check_linfty(
    brackets: DerivedBrackets,
    samples: Sequence[SuperPolynomial],
    max_arity: int,
) -> LinftyReport:
    """Homotopy-Jacobi identities on every multiset of samples up to ``max_arity``.

    pi is only known modulo filtration level + m, so tuples whose contractions
    reach that window are skipped and counted.
    """
    window = brackets.state.level + brackets.state.arity
    checked = skipped = 0
    residuals: list[JacobiResidual] = []
    for n in range(1, max_arity + 1):
        for args in combinations_with_replacement(samples, n):
            if sum(_contraction_filtration(a) for a in args) >= window:
                skipped += 1
                continue
            checked += 1
            residual = jacobi_residual(brackets, args)
            if not residual.is_zero:
                residuals.append(
                    JacobiResidual(
                        arity=n,
                        arguments=[a.render_line() for a in args],
                        residual=residual.render_line(),
                    )
                )
    logger.info("homotopy Jacobi: %d tuples checked, %d skipped, %d residuals", checked, skipped, len(residuals))
    return LinftyReport(max_arity=max_arity, checked=checked, skipped=skipped, residuals=residuals)


def anchor_projection(brackets: DerivedBrackets, value: SuperPolynomial) -> SuperPolynomial:
    """kappa: drop every term with a variable of level >= 1, then reduce modulo I."""
    base = SuperPolynomial(
        {mono: c for mono, c in value.items() if all(v.level == 0 for v, _ in mono)}
    )
    ideal = brackets.state.truncation.ideal()
    return to_super(ideal.normal_form(from_super(base, ideal.ring)))


def check_algebroid_anchor(brackets: DerivedBrackets, samples: Sequence[SuperPolynomial]) -> AnchorReport:
    """The m-ary bracket descends to A exactly on level-0 arguments; every other slot combination
    and the unary bracket vanish after kappa."""
    state = brackets.state
    m = state.arity
    tensor = state.tensor.with_ideal(state.truncation.ideal())
    checked = 0
    violations: list[AnchorViolation] = []
    for arity in (1, m):
        for args in combinations(samples, arity):
            checked += 1
            found = anchor_projection(brackets, brackets(*args))
            if arity == m and all(a.max_level() == 0 for a in args):
                ring = tensor.ring
                expected_poly = bracket_eval(tensor, *(from_super(a, ring) for a in args))
                expected = render_polynomial(expected_poly)
                ok = found == to_super(expected_poly)
            else:
                expected = "0"
                ok = found.is_zero
            if not ok:
                violations.append(
                    AnchorViolation(
                        arity=arity,
                        arguments=[a.render_line() for a in args],
                        expected=expected,
                        found=found.render_line(),
                    )
                )
    return AnchorReport(checked=checked, violations=violations)


def leibniz_residual(
    brackets: DerivedBrackets,
    leading: Sequence[SuperPolynomial],
    a: SuperPolynomial,
    b: SuperPolynomial,
) -> SuperPolynomial:
    """{.., ab} - {.., a} b - (-1)^{p(a)(sum p(a_i) + j)} a {.., b} in the last slot."""
    j = len(leading) + 1
    exponent = argument_parity(a) * (sum(argument_parity(x) for x in leading) + j)
    lhs = brackets(*leading, a * b)
    first = brackets(*leading, a) * b
    second = a * brackets(*leading, b)
    return lhs - first - (second if exponent % 2 == 0 else -second)

