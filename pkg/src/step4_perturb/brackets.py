from __future__ import annotations

from collections.abc import Iterable, Sequence

from src.algebra.errors import InvalidInput
from src.algebra.grading import Grading
from src.algebra.schouten import contract_coordinate
from src.algebra.superpoly import SuperPolynomial
from src.algebra.variables import Kind
from src.step4_perturb.models import BracketEntry, DerivedBracketTable
from src.step4_perturb.state import PerturbationState


def argument_parity(value: SuperPolynomial) -> int:
    if any(v.kind == Kind.ODD for v in value.variables()):
        raise InvalidInput(f"bracket arguments live in R and carry no xi: {value.render_line()}")
    parity = value.parity()
    if parity is None and not value.is_zero:
        raise InvalidInput(f"bracket argument {value.render_line()} mixes parities")
    return parity or 0


def decalage_sign(parities: Sequence[int]) -> int:
    """(-1)^{sum_i (j-i)(p_i+1)} for arguments of parities p_1..p_j."""
    j = len(parities)
    exponent = sum((j - i) * (p + 1) for i, p in enumerate(parities, start=1))
    return -1 if exponent % 2 else 1


class DerivedBrackets:
    """Higher derived brackets of pi = pi_0 + sum pi_i on the resolvent algebra R.

    ``raw`` is the graded-symmetric l_j = eps [[..[[pi, a_1]], ..], a_j]];
    calling the object applies the decalage sign and gives {a_1, .., a_j}_j.
    Only the xi-degree-j part of pi survives j contractions and eps.
    """

    def __init__(self, state: PerturbationState) -> None:
        self.state = state
        self.pi = state.total()
        self._components: dict[int, SuperPolynomial] = {}
        self._cache: dict[tuple[SuperPolynomial, ...], SuperPolynomial] = {}

    def component(self, arity: int) -> SuperPolynomial:
        cached = self._components.get(arity)
        if cached is None:
            cached = self.pi.homogeneous_part(Grading.XI_DEGREE, arity)
            self._components[arity] = cached
        return cached

    def raw(self, *args: SuperPolynomial) -> SuperPolynomial:
        if not args:
            raise InvalidInput("a derived bracket needs at least one argument")
        key = tuple(args)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        value = self.component(len(args))
        for a in args:
            if value.is_zero:
                break
            value = contract_coordinate(value, a)
        value = value.augmentation()
        self._cache[key] = value
        return value

    def __call__(self, *args: SuperPolynomial) -> SuperPolynomial:
        sign = decalage_sign([argument_parity(a) for a in args])
        value = self.raw(*args)
        return value if sign > 0 else -value


def derived_bracket(state: PerturbationState, *args: SuperPolynomial) -> SuperPolynomial:
    return DerivedBrackets(state)(*args)


def bracket_table(brackets: DerivedBrackets, tuples: Iterable[Sequence[SuperPolynomial]]) -> DerivedBracketTable:
    entries = [
        BracketEntry(
            arity=len(args),
            arguments=[a.render_line() for a in args],
            value=brackets(*args).render_line(),
        )
        for args in tuples
    ]
    return DerivedBracketTable(entries=entries)
