from src.step2_connection.curvature import (
    CurvatureComponent,
    HamiltonianConnection,
    MaurerCartanDefect,
    annihilates_mod_square,
    connection_axiom_violations,
    curvature,
    defect_action,
    maurer_cartan_report,
    mc_check,
    mc_defect,
)
from src.step2_connection.matrix import MatrixMultiVector, compose, lie_bracket, z_element
from src.step2_connection.models import MaurerCartanReport, ZTensorReport
from src.step2_connection.ztensor import ZTensor, compute_Z

__all__ = [
    "CurvatureComponent",
    "HamiltonianConnection",
    "MatrixMultiVector",
    "MaurerCartanDefect",
    "MaurerCartanReport",
    "ZTensor",
    "ZTensorReport",
    "annihilates_mod_square",
    "compose",
    "compute_Z",
    "connection_axiom_violations",
    "curvature",
    "defect_action",
    "lie_bracket",
    "maurer_cartan_report",
    "mc_check",
    "mc_defect",
    "z_element",
]
