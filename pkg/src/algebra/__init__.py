from src.algebra.grading import Grading, InternalGrading
from src.algebra.groebner import GroebnerBasis, IdealPresentation, buchberger
from src.algebra.schouten import contract_coordinate, schouten
from src.algebra.superpoly import DegreeReport, Monomial, SuperPolynomial
from src.algebra.variables import Kind, Variable

__all__ = [
    "DegreeReport",
    "Grading",
    "GroebnerBasis",
    "IdealPresentation",
    "InternalGrading",
    "Kind",
    "Monomial",
    "SuperPolynomial",
    "Variable",
    "buchberger",
    "contract_coordinate",
    "schouten",
]
