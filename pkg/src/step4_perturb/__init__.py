from src.step4_perturb.brackets import DerivedBrackets, bracket_table, derived_bracket
from src.step4_perturb.checks import check_algebroid_anchor, check_linfty, jacobi_residual, leibniz_residual
from src.step4_perturb.models import AnchorReport, DerivedBracketTable, LinftyReport, PerturbationReport
from src.step4_perturb.state import PerturbationStage, PerturbationState, init, report, run, step

__all__ = [
    "AnchorReport",
    "DerivedBracketTable",
    "DerivedBrackets",
    "LinftyReport",
    "PerturbationReport",
    "PerturbationStage",
    "PerturbationState",
    "bracket_table",
    "check_algebroid_anchor",
    "check_linfty",
    "derived_bracket",
    "init",
    "jacobi_residual",
    "leibniz_residual",
    "report",
    "run",
    "step",
]
