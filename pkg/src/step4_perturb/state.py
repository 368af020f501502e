from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from itertools import combinations

from src.algebra.commutative import to_super
from src.algebra.errors import ClosednessFailure, NotNambuTensor, OddArity, TruncationTooShallow
from src.algebra.grading import Grading
from src.algebra.schouten import schouten
from src.algebra.superpoly import SuperPolynomial
from src.algebra.variables import Variable
from src.config.schemas import GammaMode
from src.step1_nambu.tensor import NambuTensor
from src.step2_connection.ztensor import ZTensor, compute_Z
from src.step3_resolve.io import require_grading
from src.step3_resolve.preimage import graded_preimage
from src.step3_resolve.truncation import ResolventTruncation
from src.step4_perturb.models import PerturbationReport, StageReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PerturbationStage:
    """pi_index together with the source A it solves d pi = -A/2 against (None for pi_1)."""

    index: int
    value: SuperPolynomial
    source: SuperPolynomial | None = None

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero


@dataclass(frozen=True)
class PerturbationState:
    tensor: NambuTensor
    truncation: ResolventTruncation
    z: ZTensor
    stages: tuple[PerturbationStage, ...]

    @property
    def arity(self) -> int:
        return self.tensor.arity

    @property
    def gamma_mode(self) -> GammaMode:
        return GammaMode.for_arity(self.arity)

    @property
    def level(self) -> int:
        return len(self.stages)

    def stage(self, index: int) -> SuperPolynomial:
        return self.stages[index - 1].value

    def corrections(self) -> SuperPolynomial:
        return SuperPolynomial.sum(stage.value for stage in self.stages)

    def total(self, max_level: int | None = None) -> SuperPolynomial:
        """pi_0^{<=max_level} + pi_1 + ... + pi_level."""
        return self.truncation.pi0(max_level) + self.corrections()


def init(tensor: NambuTensor, truncation: ResolventTruncation, *, trusted: bool = False) -> PerturbationState:
    if tensor.arity % 2:
        raise OddArity(f"the perturbation recursion needs an even arity, got {tensor.arity}")
    pi1 = tensor.multivector
    if not trusted and not schouten(pi1, pi1).is_zero:
        raise NotNambuTensor("[[Pi, Pi]] does not vanish")
    z = compute_Z(tensor, truncation.ideal())
    logger.info("pi_1 installed: %d terms, gamma mode %s", len(pi1), GammaMode.for_arity(tensor.arity).value)
    return PerturbationState(
        tensor=tensor,
        truncation=truncation,
        z=z,
        stages=(PerturbationStage(index=1, value=pi1),),
    )


def first_correction(z: ZTensor) -> SuperPolynomial:
    """pi_2 = -sum over sorted J, mu, nu of Z^nu_{J mu} x^(1)_nu xi^J xi^mu_(1)."""
    parts = []
    for indices in combinations(range(1, z.tensor.n + 1), z.arity - 1):
        xis = SuperPolynomial.product([Variable.xi(i) for i in indices])
        for mu in range(1, z.k + 1):
            for nu, c in enumerate(z.row(indices, mu), start=1):
                if c:
                    parts.append(
                        to_super(c)
                        * SuperPolynomial.variable(Variable.x(nu, 1))
                        * xis
                        * SuperPolynomial.variable(Variable.xi(mu, 1))
                    )
    return -SuperPolynomial.sum(parts)


def _windowed_bracket(state: PerturbationState) -> tuple[SuperPolynomial, int]:
    window = state.level + state.arity
    total = state.total(state.level)
    return schouten(total, total, max_filtration=window), window


def residual_below_window(state: PerturbationState) -> SuperPolynomial:
    """Terms of [[P, P]] below filtration level + m; zero once every stage solved its relation."""
    bracket, window = _windowed_bracket(state)
    return bracket.filtration_below(window)


def source_term(state: PerturbationState) -> SuperPolynomial:
    """A_l: the filtration-(l+m) part of [[pi_0^{<=l} + sum pi_i, same]].

    Raises ClosednessFailure when lower filtration terms survive or A_l is not d-closed.
    """
    level = state.level
    bracket, window = _windowed_bracket(state)
    below = bracket.filtration_below(window)
    if not below.is_zero:
        raise ClosednessFailure(
            f"[[P, P]] keeps {len(below)} terms below filtration {window} at level {level}"
        )
    source = bracket.homogeneous_part(Grading.FILTRATION, window)
    if not state.truncation.differential(source, level).is_zero:
        raise ClosednessFailure(f"A_{level} is not closed under d")
    return source


def step(state: PerturbationState) -> PerturbationState:
    level = state.level
    if state.truncation.depth < level:
        raise TruncationTooShallow(
            f"step {level} needs resolvent level {level}, the truncation stops at {state.truncation.depth}"
        )
    source = source_term(state)
    target = source.scale("-1/2")
    if level == 1:
        value = first_correction(state.z)
        if state.truncation.differential(value, 1) != target:
            raise ClosednessFailure("the Z-tensor correction does not solve d pi_2 = -A_1/2")
    else:
        require_grading(state.truncation)
        value = graded_preimage(target, state.truncation, max_level=level)
    logger.info("pi_%d: %d terms", level + 1, len(value))
    stage = PerturbationStage(index=level + 1, value=value, source=source)
    return replace(state, stages=state.stages + (stage,))


def run(state: PerturbationState, depth: int) -> PerturbationState:
    """Step until pi_depth exists; depth <= current level leaves the state unchanged."""
    while state.level < depth:
        state = step(state)
    return state


def cohdeg_bound(arity: int, index: int) -> set[int]:
    """Cohomological degrees pi_index may occupy."""
    if arity == 2:
        return {2}
    top = max(1, (index - arity - 1) // (arity - 1) + 2)
    return {r * arity - 2 * (r - 1) for r in range(1, top + 1)}


def stage_report(state: PerturbationState, stage: PerturbationStage) -> StageReport:
    value, m = stage.value, state.arity
    cohdegs = sorted(value.degree_values(Grading.COHOMOLOGICAL))
    levels = [v.level for v in value.variables()]
    relation = True
    if stage.source is not None:
        relation = state.truncation.differential(value, stage.index - 1) == stage.source.scale("-1/2")
    return StageReport(
        index=stage.index,
        terms=len(value),
        filtration=value.filtration(),
        cohomological=cohdegs,
        max_level=max(levels, default=0),
        relation_holds=relation,
        within_filtration=value.degree_values(Grading.FILTRATION) <= {stage.index + m - 1},
        within_levels=max(levels, default=0) <= max(stage.index - 1, 0),
        within_cohdeg_bound=set(cohdegs) <= cohdeg_bound(m, stage.index),
    )


def report(state: PerturbationState) -> PerturbationReport:
    stages = [stage_report(state, stage) for stage in state.stages]
    tail = 0
    for stage in reversed(stages):
        if not stage.is_zero:
            break
        tail += 1
    for stage in stages:
        if not stage.within_cohdeg_bound:
            logger.warning("pi_%d leaves the cohomological degree bound: %s", stage.index, stage.cohomological)
    residual = residual_below_window(state)
    if not residual.is_zero:
        logger.warning("[[P, P]] keeps %d terms below filtration %d", len(residual), state.level + state.arity)
    return PerturbationReport(
        arity=state.arity,
        gamma_mode=state.gamma_mode,
        depth=state.level,
        resolvent_counts=state.truncation.counts(),
        stages=stages,
        nonzero_stages=[stage.index for stage in stages if not stage.is_zero],
        zero_tail=tail,
        residual_terms=len(residual),
    )
