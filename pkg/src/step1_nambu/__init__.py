from src.step1_nambu.constructors import determinantal, diagonal, explicit, outer
from src.step1_nambu.models import CasimirScan, FundamentalIdentityReport, VerifyReport
from src.step1_nambu.tensor import (
    HamiltonianField,
    NambuTensor,
    bracket_eval,
    delta_nambu,
    hamiltonian_field,
    is_casimir,
)
from src.step1_nambu.verifier import FundamentalIdentityVerifier, check_fundamental_identity, scan_casimirs

__all__ = [
    "CasimirScan",
    "FundamentalIdentityReport",
    "FundamentalIdentityVerifier",
    "HamiltonianField",
    "NambuTensor",
    "VerifyReport",
    "bracket_eval",
    "check_fundamental_identity",
    "delta_nambu",
    "determinantal",
    "diagonal",
    "explicit",
    "hamiltonian_field",
    "is_casimir",
    "outer",
    "scan_casimirs",
]
