from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from sympy.polys.rings import PolyElement

from src.algebra.commutative import render_polynomial
from src.algebra.errors import ConfigurationError
from src.algebra.groebner import IdealPresentation
from src.step1_nambu.models import (
    CasimirEntry,
    CasimirScan,
    DecomposabilityViolation,
    FundamentalIdentityReport,
    FundamentalIdentityViolation,
)
from src.step1_nambu.tensor import NambuTensor, is_casimir

logger = logging.getLogger(__name__)


def _fi_residual(tensor: NambuTensor, outer: tuple[int, ...], inner: tuple[int, ...]) -> PolyElement:
    """{x_I, {x_J}} - sum_l {x_j1, .., {x_I, x_jl}, .., x_jm} in coordinates."""
    gens = tensor.ring.gens
    residual = tensor.ring.zero
    target = tensor.coefficient(inner)
    if target:
        for s in range(1, tensor.n + 1):
            weight = tensor.coefficient(outer + (s,))
            if weight:
                residual = residual + weight * target.diff(gens[s - 1])
    for pos, j in enumerate(inner):
        hamiltonian = tensor.coefficient(outer + (j,))
        if not hamiltonian:
            continue
        for s in range(1, tensor.n + 1):
            derivative = hamiltonian.diff(gens[s - 1])
            if not derivative:
                continue
            replaced = inner[:pos] + (s,) + inner[pos + 1 :]
            weight = tensor.coefficient(replaced)
            if weight:
                residual = residual - weight * derivative
    return residual


def _plucker_residual(tensor: NambuTensor, outer: tuple[int, ...], inner: tuple[int, ...]) -> PolyElement:
    """sum_k (-1)^k Pi_{I j_k} Pi_{J minus j_k}; vanishes for decomposable tensors."""
    residual = tensor.ring.zero
    for pos, j in enumerate(inner):
        left = tensor.coefficient(outer + (j,))
        if not left:
            continue
        right = tensor.coefficient(inner[:pos] + inner[pos + 1 :])
        if right:
            residual = residual + left * right if pos % 2 == 0 else residual - left * right
    return residual


class FundamentalIdentityVerifier:
    """Checks the coordinate fundamental identity and the decomposability relations.

    Work is split by the outer index tuple; with ``threads`` > 1 the chunks run in
    a thread pool and are merged back in tuple order.
    """

    def __init__(self, *, threads: int = 1) -> None:
        self._threads = max(1, threads)

    def run(self, tensor: NambuTensor, *, modulo_ideal: bool = False) -> FundamentalIdentityReport:
        if modulo_ideal and tensor.ideal is None:
            raise ConfigurationError("modulo-ideal verification needs an attached ideal")
        reduce = tensor.ideal.normal_form if modulo_ideal and tensor.ideal is not None else None
        outers = list(combinations(range(1, tensor.n + 1), tensor.arity - 1))
        decomposability = tensor.arity > 2

        def check(outer: tuple[int, ...]) -> tuple[list, list]:
            fi: list[FundamentalIdentityViolation] = []
            plucker: list[DecomposabilityViolation] = []
            for inner in combinations(range(1, tensor.n + 1), tensor.arity):
                residual = _fi_residual(tensor, outer, inner)
                if reduce is not None and residual:
                    residual = reduce(residual)
                if residual:
                    fi.append(
                        FundamentalIdentityViolation(
                            outer=list(outer), inner=list(inner), residual=render_polynomial(residual)
                        )
                    )
            if decomposability:
                for inner in combinations(range(1, tensor.n + 1), tensor.arity + 1):
                    residual = _plucker_residual(tensor, outer, inner)
                    if reduce is not None and residual:
                        residual = reduce(residual)
                    if residual:
                        plucker.append(
                            DecomposabilityViolation(
                                outer=list(outer), inner=list(inner), residual=render_polynomial(residual)
                            )
                        )
            return fi, plucker

        if self._threads > 1 and len(outers) > 1:
            with ThreadPoolExecutor(max_workers=self._threads) as pool:
                chunks = list(pool.map(check, outers))
        else:
            chunks = [check(outer) for outer in outers]

        report = FundamentalIdentityReport(
            n=tensor.n,
            arity=tensor.arity,
            modulo_ideal=modulo_ideal,
            decomposability_checked=decomposability,
            fi_violations=[v for fi, _ in chunks for v in fi],
            decomposability_violations=[v for _, plucker in chunks for v in plucker],
        )
        logger.info(
            "fundamental identity: %d violations, decomposability: %d violations",
            len(report.fi_violations),
            len(report.decomposability_violations),
        )
        return report


def check_fundamental_identity(
    tensor: NambuTensor,
    *,
    modulo_ideal: bool = False,
    threads: int = 1,
) -> FundamentalIdentityReport:
    return FundamentalIdentityVerifier(threads=threads).run(tensor, modulo_ideal=modulo_ideal)


def scan_casimirs(tensor: NambuTensor, ideal: IdealPresentation, *, modulo_ideal: bool = False) -> CasimirScan:
    entries = [
        CasimirEntry(
            generator=mu,
            polynomial=render_polynomial(f),
            is_casimir=is_casimir(tensor, f, ideal if modulo_ideal else None),
        )
        for mu, f in enumerate(ideal.generators, start=1)
    ]
    return CasimirScan(modulo_ideal=modulo_ideal, entries=entries)
