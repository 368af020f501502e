from __future__ import annotations

import logging
from collections import defaultdict

from src.algebra.errors import NoPreimage
from src.algebra.grading import Grading
from src.algebra.linalg import solve_particular
from src.algebra.superpoly import Monomial, SuperPolynomial, monomial_degree
from src.step3_resolve.truncation import ResolventTruncation

logger = logging.getLogger(__name__)

# (xi-pattern, cohomological degree of the x-part, internal weight of the x-part)
SliceKey = tuple[Monomial, int, int]


def _split_by_slice(target: SuperPolynomial, truncation: ResolventTruncation) -> dict[SliceKey, SuperPolynomial]:
    grading = truncation.grading
    groups: dict[SliceKey, dict[Monomial, object]] = defaultdict(dict)
    for pattern, coefficient in target.xi_patterns().items():
        for mono, c in coefficient.items():
            key = (
                pattern,
                monomial_degree(mono, Grading.COHOMOLOGICAL),
                monomial_degree(mono, Grading.INTERNAL, grading),
            )
            groups[key][mono] = c
    return {key: SuperPolynomial(terms) for key, terms in groups.items()}


def graded_preimage(target: SuperPolynomial, truncation: ResolventTruncation, *, max_level: int) -> SuperPolynomial:
    """Some r with d r = target, r built from x's of level <= max_level.

    xi's are inert under d, so the target splits by xi-pattern and by the
    (cohomological, internal) degree of the x-part; each piece is one finite
    linear system on the slice one cohomological step below. Raises
    NoPreimage when a piece is not a boundary.
    """
    if target.is_zero:
        return SuperPolynomial()
    pieces = []
    for (pattern, cohdeg, weight), part in sorted(_split_by_slice(target, truncation).items()):
        basis = truncation.slice(max_level, cohdeg - 1, weight)
        columns = [dict(truncation.differential_of_monomial(mono).items()) for mono in basis]
        solution = solve_particular(columns, dict(part.items()))
        if solution is None:
            raise NoPreimage(
                f"{part.render_line()} (xi-pattern {SuperPolynomial.render_monomial(pattern)}, "
                f"cohdeg {cohdeg}, weight {weight}) is not a boundary in levels <= {max_level}"
            )
        x_part = SuperPolynomial({basis[j]: c for j, c in solution.items()})
        pieces.append(x_part * SuperPolynomial.product([v for v, _ in pattern]))
        logger.debug("slice cohdeg=%d weight=%d: %d unknowns", cohdeg - 1, weight, len(basis))
    return SuperPolynomial.sum(pieces)
