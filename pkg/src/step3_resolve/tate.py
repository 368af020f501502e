from __future__ import annotations

import logging
from collections.abc import Sequence

from src.algebra.commutative import to_super, weighted_degree
from src.algebra.errors import CapTooLow, InvalidInput
from src.algebra.groebner import IdealPresentation
from src.algebra.linalg import independent_modulo, kernel_basis, rank
from src.algebra.superpoly import Monomial, SuperPolynomial
from src.step3_resolve.models import HomologyProbe, TateReport
from src.step3_resolve.truncation import AdjoinedVariable, ResolventLevel, ResolventTruncation

logger = logging.getLogger(__name__)


def koszul(ideal: IdealPresentation, weights: Sequence[int] | None = None) -> ResolventTruncation:
    """Level-1 truncation with d x_mu^(1) = f_mu; weights default to the standard grading."""
    base = list(weights) if weights is not None else [1] * ideal.n
    variables = tuple(
        AdjoinedVariable(level=1, index=mu, image=to_super(f), weight=weighted_degree(f, base))
        for mu, f in enumerate(ideal.generators, start=1)
    )
    return ResolventTruncation(n=ideal.n, levels=[ResolventLevel(level=1, variables=variables)], base_weights=base)


def _cycles(truncation: ResolventTruncation, level: int, weight: int) -> list[SuperPolynomial]:
    """Basis of the d-closed elements of cohomological degree -(level-1) and the given weight."""
    basis = truncation.slice(level - 1, -(level - 1), weight)
    columns = [dict(truncation.differential_of_monomial(mono).items()) for mono in basis]
    return [SuperPolynomial({basis[j]: c for j, c in vector.items()}) for vector in kernel_basis(columns)]


def _boundaries(truncation: ResolventTruncation, level: int, weight: int) -> list[dict[Monomial, object]]:
    basis = truncation.slice(level, -level, weight)
    return [dict(truncation.differential_of_monomial(mono).items()) for mono in basis]


def _new_classes(truncation: ResolventTruncation, level: int, weight: int) -> list[SuperPolynomial]:
    cycles = _cycles(truncation, level, weight)
    if not cycles:
        return []
    # cycles inside m^2 first, so the choice stays minimal where it can
    cycles.sort(key=lambda cycle: (not _is_decomposable(cycle), len(cycle)))
    chosen = independent_modulo(_boundaries(truncation, level, weight), [dict(c.items()) for c in cycles])
    return [cycles[j] for j in chosen]


def _is_decomposable(value: SuperPolynomial) -> bool:
    return all(sum(e for _, e in mono) >= 2 for mono in value.terms)


def homology_dimension(truncation: ResolventTruncation, level: int, weight: int) -> int:
    """dim H in cohomological degree -(level-1) at the given weight, by ranks."""
    source = truncation.slice(level - 1, -(level - 1), weight)
    cycles = len(source) - rank([dict(truncation.differential_of_monomial(m).items()) for m in source])
    return cycles - rank(_boundaries(truncation, level, weight))


def tate_extend(
    truncation: ResolventTruncation,
    target_level: int,
    cap: int,
    *,
    probe: bool = True,
) -> tuple[ResolventTruncation, TateReport]:
    """Adjoin variables level by level until homology vanishes up to ``target_level - 1``.

    Each level is filled weight by weight up to ``cap``; representatives are
    chosen among cycles modulo boundaries, which already include the
    variables of lower weight added on the same level.
    """
    if truncation.depth < 1:
        raise InvalidInput("Tate extension starts from a truncation with level 1")
    if target_level < truncation.depth:
        raise InvalidInput(f"target level {target_level} is below the current depth {truncation.depth}")
    current = truncation
    added: list[str] = []
    for level in range(truncation.depth + 1, target_level + 1):
        current = current.with_variables(level, ())
        for weight in range(1, cap + 1):
            classes = _new_classes(current, level, weight)
            if not classes:
                continue
            start = current.next_index(level)
            new = [
                AdjoinedVariable(level=level, index=start + offset, image=image, weight=weight)
                for offset, image in enumerate(classes)
            ]
            current = current.with_variables(level, new)
            added.extend(f"{var.variable.render()} -> {var.image.render_line()}" for var in new)
        logger.info("level %d: %d variables (cap %d)", level, len(current.level(level)), cap)

    probes: list[HomologyProbe] = []
    if probe:
        for level in range(2, target_level + 1):
            dimension = homology_dimension(current.truncated(level), level, cap + 1)
            probes.append(HomologyProbe(level=level, weight=cap + 1, dimension=dimension))
        unstable = [p for p in probes if p.dimension]
        if unstable:
            first = unstable[0]
            raise CapTooLow(
                f"homology of dimension {first.dimension} needs a level-{first.level} variable "
                f"at weight {first.weight}; raise the cap above {cap}"
            )

    non_minimal = [
        var.variable.render() for var in current.adjoined() if var.level > 1 and not _is_decomposable(var.image)
    ]
    if non_minimal:
        logger.warning("non-minimal generators: %s", ", ".join(non_minimal))
    report = TateReport(
        n=current.n,
        target_level=target_level,
        cap=cap,
        counts=current.counts(),
        added=added,
        minimal=not non_minimal,
        non_minimal=non_minimal,
        probes=probes,
    )
    return current, report


def resolve(
    ideal: IdealPresentation,
    target_level: int,
    cap: int,
    *,
    weights: Sequence[int] | None = None,
    probe: bool = True,
) -> tuple[ResolventTruncation, TateReport]:
    return tate_extend(koszul(ideal, weights), max(target_level, 1), cap, probe=probe)

