from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from sympy.polys.monomials import monomial_divides, monomial_div, monomial_lcm
from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.commutative import coordinate_ring, parse_polynomial, render_polynomial
from src.algebra.errors import NotInIdeal

logger = logging.getLogger(__name__)

Lift = tuple[PolyElement, ...]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis together with each element written in the generators."""

    basis: tuple[PolyElement, ...]
    lifts: tuple[Lift, ...]


def _combine(ring: PolyRing, k: int, pieces: Sequence[tuple[PolyElement, Lift]]) -> Lift:
    out = [ring.zero] * k
    for factor, lift in pieces:
        if not factor:
            continue
        for mu in range(k):
            if lift[mu]:
                out[mu] = out[mu] + factor * lift[mu]
    return tuple(out)


def _term(ring: PolyRing, monom: tuple[int, ...], coeff: object) -> PolyElement:
    return ring.from_dict({monom: coeff})


def buchberger(generators: Sequence[PolyElement], ring: PolyRing) -> GroebnerBasis:
    """Buchberger's algorithm with cofactor tracking.

    Works on a plain pair queue with the coprime-leading-monomial criterion;
    the result is minimal, inter-reduced and monic, sorted by leading monomial.
    """
    k = len(generators)
    zero_lift = tuple(ring.zero for _ in range(k))
    basis: list[PolyElement] = []
    lifts: list[Lift] = []
    for mu, f in enumerate(generators):
        if not f:
            continue
        unit = list(zero_lift)
        unit[mu] = ring.one
        lc = f.LC
        basis.append(f.quo_ground(lc))
        lifts.append(tuple(c.quo_ground(lc) for c in unit))

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        gi, gj = basis[i], basis[j]
        lm_i, lm_j = gi.LM, gj.LM
        lcm = monomial_lcm(lm_i, lm_j)
        if lcm == tuple(a + b for a, b in zip(lm_i, lm_j)):
            continue
        ti = _term(ring, monomial_div(lcm, lm_i), ring.domain.one)
        tj = _term(ring, monomial_div(lcm, lm_j), ring.domain.one)
        spoly = ti * gi - tj * gj
        spoly_lift = _combine(ring, k, [(ti, lifts[i]), (-tj, lifts[j])])
        quotients, remainder = spoly.div(basis)
        if not remainder:
            continue
        rem_lift = _combine(ring, k, [(ring.one, spoly_lift)] + [(-q, lifts[s]) for s, q in enumerate(quotients)])
        lc = remainder.LC
        basis.append(remainder.quo_ground(lc))
        lifts.append(tuple(c.quo_ground(lc) for c in rem_lift))
        new = len(basis) - 1
        pairs.extend((s, new) for s in range(new))

    # minimalize: drop elements whose leading monomial is divisible by another's
    keep: list[int] = []
    for s, g in enumerate(basis):
        redundant = any(
            t != s
            and monomial_divides(basis[t].LM, g.LM)
            and (basis[t].LM != g.LM or t < s)
            for t in range(len(basis))
        )
        if not redundant:
            keep.append(s)

    reduced: list[tuple[PolyElement, Lift]] = []
    for s in keep:
        others = [basis[t] for t in keep if t != s]
        other_lifts = [lifts[t] for t in keep if t != s]
        if others:
            quotients, remainder = basis[s].div(others)
            lift = _combine(ring, k, [(ring.one, lifts[s])] + [(-q, other_lifts[u]) for u, q in enumerate(quotients)])
        else:
            remainder, lift = basis[s], lifts[s]
        lc = remainder.LC
        reduced.append((remainder.quo_ground(lc), tuple(c.quo_ground(lc) for c in lift)))

    reduced.sort(key=lambda item: ring.order(item[0].LM), reverse=True)
    logger.debug("groebner basis with %d elements from %d generators", len(reduced), k)
    return GroebnerBasis(basis=tuple(g for g, _ in reduced), lifts=tuple(l for _, l in reduced))


class IdealPresentation:
    """Generators f_1..f_k of an ideal of QQ[x1..xn] with a lazily cached Groebner basis."""

    def __init__(self, generators: Sequence[PolyElement], ring: PolyRing | None = None) -> None:
        if ring is None:
            if not generators:
                raise ValueError("an empty presentation needs an explicit ring")
            ring = generators[0].ring
        self.ring = ring
        self.generators: tuple[PolyElement, ...] = tuple(ring(g) for g in generators)
        self._groebner: GroebnerBasis | None = None

    @classmethod
    def from_strings(
        cls,
        texts: Sequence[str],
        n: int,
        aliases: Mapping[str, str] | None = None,
    ) -> IdealPresentation:
        ring = coordinate_ring(n)
        return cls([parse_polynomial(text, ring, aliases) for text in texts], ring)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def n(self) -> int:
        return self.ring.ngens

    def groebner(self) -> GroebnerBasis:
        if self._groebner is None:
            self._groebner = buchberger(self.generators, self.ring)
        return self._groebner

    def normal_form(self, p: PolyElement) -> PolyElement:
        basis = self.groebner().basis
        if not basis:
            return p
        return p.rem(list(basis))

    def member(self, p: PolyElement) -> bool:
        return not self.normal_form(p)

    def lift(self, p: PolyElement) -> tuple[PolyElement, ...]:
        """Cofactors c with p = sum c_mu f_mu."""
        gb = self.groebner()
        if not p:
            return tuple(self.ring.zero for _ in range(self.k))
        if not gb.basis:
            raise NotInIdeal(f"{render_polynomial(p)} is not in the zero ideal")
        quotients, remainder = p.div(list(gb.basis))
        if remainder:
            raise NotInIdeal(f"{render_polynomial(p)} is not in the ideal (normal form {render_polynomial(remainder)})")
        return _combine(self.ring, self.k, list(zip(quotients, gb.lifts)))

    def square(self) -> IdealPresentation:
        """I^2 presented by the products f_mu f_nu, mu <= nu."""
        gens = self.generators
        return IdealPresentation(
            [gens[a] * gens[b] for a in range(len(gens)) for b in range(a, len(gens))],
            self.ring,
        )

    def render(self) -> list[str]:
        return [render_polynomial(f) for f in self.generators]
