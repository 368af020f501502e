from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from sympy import QQ
from sympy.polys.rings import PolyElement

from src.algebra.commutative import from_super, render_polynomial, to_super
from src.algebra.errors import InvalidInput, OddArity
from src.algebra.groebner import IdealPresentation
from src.algebra.superpoly import SuperPolynomial
from src.step1_nambu.tensor import HamiltonianField, NambuTensor, delta_nambu, hamiltonian_field
from src.step2_connection.matrix import MatrixMultiVector, lie_bracket, z_element
from src.step2_connection.models import (
    ConnectionAxiomViolation,
    CurvatureValue,
    MaurerCartanReport,
)
from src.step2_connection.ztensor import ZTensor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaurerCartanDefect:
    """delta Z, [Z, Z] and the defect delta Z - 1/2 [Z, Z], which annihilates f mod I^2."""

    delta: MatrixMultiVector
    bracket: MatrixMultiVector
    defect: MatrixMultiVector


def delta_matrix(tensor: NambuTensor, p: MatrixMultiVector) -> MatrixMultiVector:
    return p.map(lambda entry: delta_nambu(tensor, entry))


def mc_defect(tensor: NambuTensor, z: ZTensor) -> MaurerCartanDefect:
    if tensor.arity % 2:
        raise OddArity(f"the Maurer-Cartan defect needs an even arity, got {tensor.arity}")
    element = z_element(z)
    delta = delta_matrix(tensor, element)
    bracket = lie_bracket(element, element)
    defect = delta - bracket.scale("1/2")
    return MaurerCartanDefect(delta=delta, bracket=bracket, defect=defect)


def _reduce_coefficients(value: SuperPolynomial, modulus: IdealPresentation) -> SuperPolynomial:
    """Normal form of every xi-pattern coefficient modulo the given ideal."""
    ring = modulus.ring
    parts = []
    for pattern, coefficient in value.xi_patterns().items():
        reduced = modulus.normal_form(from_super(coefficient, ring))
        if reduced:
            parts.append(to_super(reduced) * SuperPolynomial({pattern: QQ(1)}))
    return SuperPolynomial.sum(parts)


def _apply_to_generators(matrix: MatrixMultiVector, ideal: IdealPresentation) -> list[SuperPolynomial]:
    generators = [to_super(f) for f in ideal.generators]
    return [
        SuperPolynomial.sum(entry * f for entry, f in zip(row, generators) if not entry.is_zero)
        for row in matrix.entries
    ]


def annihilates_mod_square(matrix: MatrixMultiVector, ideal: IdealPresentation) -> bool:
    """True when every coefficient of the column M f lies in I^2."""
    square = ideal.square()
    return all(_reduce_coefficients(row, square).is_zero for row in _apply_to_generators(matrix, ideal))


def mc_check(tensor: NambuTensor, z: ZTensor, ideal: IdealPresentation) -> bool:
    """True when every coefficient of D f lies in I^2."""
    return annihilates_mod_square(mc_defect(tensor, z).defect, ideal)


def defect_action(
    tensor: NambuTensor,
    z: ZTensor,
    ideal: IdealPresentation,
    vector: Sequence[PolyElement],
    *,
    defect: MaurerCartanDefect | None = None,
) -> SuperPolynomial:
    """sum v^mu D_{mu lambda} f_lambda mod I^2 for v = sum_mu v^mu f_mu."""
    _require_vector(ideal, vector)
    defect = defect or mc_defect(tensor, z)
    rows = _apply_to_generators(defect.defect, ideal)
    value = SuperPolynomial.sum(to_super(v) * row for v, row in zip(vector, rows) if v)
    return _reduce_coefficients(value, ideal.square())


def _require_vector(ideal: IdealPresentation, vector: Sequence[PolyElement]) -> None:
    if len(vector) != ideal.k:
        raise InvalidInput(f"a vector of I needs {ideal.k} coefficients, got {len(vector)}")


@dataclass(frozen=True)
class CurvatureComponent:
    """R(X_I, X_J) v mod I^2 for one pair of sorted index tuples."""

    first: tuple[int, ...]
    second: tuple[int, ...]
    value: PolyElement


Coefficients = tuple[PolyElement, ...]


class HamiltonianConnection:
    """nabla_{X_I} v = X_I(v) on I / I^2, carried in the coordinates v = sum v^mu f_mu.

    X_I(f_mu) = sum_nu Z^nu_{I mu} f_nu moves the coordinates without leaving the generators,
    so the connection never re-expands a polynomial in I.
    """

    def __init__(self, tensor: NambuTensor, z: ZTensor, ideal: IdealPresentation) -> None:
        self.tensor = tensor
        self.z = z
        self.ideal = ideal
        self.ring = tensor.ring
        self.square = ideal.square()
        self._fields: dict[tuple[int, ...], HamiltonianField] = {}

    def field(self, indices: tuple[int, ...]) -> HamiltonianField:
        if indices not in self._fields:
            coords = (self.tensor.coordinate(i) for i in indices)
            self._fields[indices] = hamiltonian_field(self.tensor, *coords)
        return self._fields[indices]

    def covariant(self, indices: tuple[int, ...], coefficients: Coefficients) -> Coefficients:
        """Coordinates of nabla_{X_I}(sum v^mu f_mu) = sum X_I(v^mu) f_mu + v^mu Z^nu_{I mu} f_nu."""
        field = self.field(indices)
        out = [field(v) if v else self.ring.zero for v in coefficients]
        for mu, v in enumerate(coefficients, start=1):
            if not v:
                continue
            for nu, c in enumerate(self.z.row(indices, mu), start=1):
                if c:
                    out[nu - 1] = out[nu - 1] + v * c
        return tuple(out)

    def along_commutator(
        self,
        first: tuple[int, ...],
        second: tuple[int, ...],
        coefficients: Coefficients,
    ) -> Coefficients:
        """nabla along [X_I, X_J] = sum_l sum_r d_r Pi_{I j_l} X_{J(j_l -> r)}."""
        gens = self.ring.gens
        out = [self.ring.zero] * len(coefficients)
        for pos, j in enumerate(second):
            hamiltonian = self.tensor.coefficient(first + (j,))
            if not hamiltonian:
                continue
            for r in range(1, self.tensor.n + 1):
                derivative = hamiltonian.diff(gens[r - 1])
                if not derivative:
                    continue
                replaced = second[:pos] + (r,) + second[pos + 1 :]
                for nu, w in enumerate(self.covariant(replaced, coefficients)):
                    if w:
                        out[nu] = out[nu] + derivative * w
        return tuple(out)

    def curvature(
        self,
        first: tuple[int, ...],
        second: tuple[int, ...],
        coefficients: Coefficients,
    ) -> PolyElement:
        """[nabla_{X_I}, nabla_{X_J}] v - nabla_{[X_I, X_J]} v, as a polynomial reduced mod I^2."""
        one = self.covariant(first, self.covariant(second, coefficients))
        other = self.covariant(second, self.covariant(first, coefficients))
        commutator = self.along_commutator(first, second, coefficients)
        value = self.ring.zero
        for a, b, c, f in zip(one, other, commutator, self.ideal.generators):
            difference = a - b - c
            if difference:
                value = value + difference * f
        return self.square.normal_form(value)


def curvature(
    tensor: NambuTensor,
    z: ZTensor,
    ideal: IdealPresentation,
    vector: Sequence[PolyElement],
    *,
    connection: HamiltonianConnection | None = None,
) -> list[CurvatureComponent]:
    """Nonzero R(X_I, X_J) v mod I^2 over all pairs I < J; empty when the connection is flat on v."""
    _require_vector(ideal, vector)
    connection = connection or HamiltonianConnection(tensor, z, ideal)
    coefficients = tuple(tensor.ring(v) for v in vector)
    tuples = list(tensor.index_tuples(tensor.arity - 1))
    components: list[CurvatureComponent] = []
    for a, first in enumerate(tuples):
        for second in tuples[a + 1 :]:
            value = connection.curvature(first, second, coefficients)
            if value:
                components.append(CurvatureComponent(first=first, second=second, value=value))
    return components


def _unit_vectors(ideal: IdealPresentation) -> list[list[PolyElement]]:
    ring = ideal.ring
    return [[ring.one if nu == mu else ring.zero for nu in range(ideal.k)] for mu in range(ideal.k)]


def connection_axiom_violations(
    tensor: NambuTensor,
    z: ZTensor,
    ideal: IdealPresentation,
    *,
    connection: HamiltonianConnection | None = None,
) -> list[ConnectionAxiomViolation]:
    """Check [nabla_{X_I}, nabla_{X_J}] f_mu = sum d_r Pi_{I j_l} nabla_{X_{J(j_l -> r)}} f_mu mod I^2."""
    connection = connection or HamiltonianConnection(tensor, z, ideal)
    violations: list[ConnectionAxiomViolation] = []
    for mu, vector in enumerate(_unit_vectors(ideal), start=1):
        for component in curvature(tensor, z, ideal, vector, connection=connection):
            violations.append(
                ConnectionAxiomViolation(
                    first=list(component.first),
                    second=list(component.second),
                    mu=mu,
                    residual=render_polynomial(component.value),
                )
            )
    return violations


def maurer_cartan_report(
    tensor: NambuTensor,
    z: ZTensor,
    ideal: IdealPresentation,
    *,
    check_connection: bool = True,
) -> MaurerCartanReport:
    defect = mc_defect(tensor, z)
    mc_holds = annihilates_mod_square(defect.defect, ideal)
    connection = HamiltonianConnection(tensor, z, ideal)
    curvatures = []
    for vector in _unit_vectors(ideal):
        components = curvature(tensor, z, ideal, vector, connection=connection)
        curvatures.append(
            CurvatureValue(
                vector=[render_polynomial(v) for v in vector],
                residual=[
                    f"{list(c.first)}|{list(c.second)}: {render_polynomial(c.value)}" for c in components
                ]
                or ["0"],
            )
        )
    flat = all(value.vanishes for value in curvatures)
    if flat != mc_holds:
        logger.warning("the defect and the Hamiltonian curvature disagree: mc %s, flat %s", mc_holds, flat)
    violations = connection_axiom_violations(tensor, z, ideal, connection=connection) if check_connection else []
    logger.info(
        "Maurer-Cartan defect %s, mod I^2 %s",
        "vanishes" if defect.defect.is_zero else "is nonzero",
        "holds" if mc_holds else "fails",
    )
    return MaurerCartanReport(
        k=ideal.k,
        delta_z=defect.delta.render(),
        bracket_z=defect.bracket.render(),
        defect=defect.defect.render(),
        defect_zero=defect.defect.is_zero,
        mc_holds=mc_holds,
        curvatures=curvatures,
        connection_axiom_violations=violations,
    )
