from src.step3_resolve.io import check_resolvent, load_resolvent, require_grading, save_resolvent
from src.step3_resolve.models import ResolventCheckReport, ResolventFile, TateReport
from src.step3_resolve.preimage import graded_preimage
from src.step3_resolve.tate import homology_dimension, koszul, resolve, tate_extend
from src.step3_resolve.truncation import AdjoinedVariable, ResolventLevel, ResolventTruncation

__all__ = [
    "AdjoinedVariable",
    "ResolventCheckReport",
    "ResolventFile",
    "ResolventLevel",
    "ResolventTruncation",
    "TateReport",
    "check_resolvent",
    "graded_preimage",
    "homology_dimension",
    "koszul",
    "load_resolvent",
    "require_grading",
    "resolve",
    "save_resolvent",
    "tate_extend",
]
