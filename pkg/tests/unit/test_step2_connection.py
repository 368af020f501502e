import random

import pytest

from src.algebra.commutative import parse_polynomial
from src.algebra.errors import NotNambuIdeal
from src.algebra.groebner import IdealPresentation
from src.step1_nambu.constructors import diagonal, explicit
from src.step1_nambu.tensor import bracket_eval
from src.step2_connection.curvature import (
    annihilates_mod_square,
    curvature,
    defect_action,
    maurer_cartan_report,
    mc_check,
    mc_defect,
)
from src.step2_connection.ztensor import ZTensor, compute_Z


def _monomial(texts: list[str]):
    tensor = diagonal({(1, 2, 3, 4): 1}, n=4, arity=4)
    return tensor, IdealPresentation.from_strings(texts, 4)


def test_z_tensor_of_the_complete_intersection_is_diagonal() -> None:
    tensor, ideal = _monomial(["x1*x2", "x3*x4"])
    z = compute_Z(tensor, ideal)
    ring = tensor.ring
    assert z.get((2, 3, 4), 1, 1) == -parse_polynomial("x2*x3*x4", ring)
    assert z.get((3, 2, 4), 1, 1) == parse_polynomial("x2*x3*x4", ring)
    assert z.get((2, 3, 4), 1, 2) == ring.zero
    assert not z.verify()
    report = z.report()
    assert report.groebner_lifts == 0
    assert report.diagonal_lifts == len(report.entries)
    assert report.non_unique


def test_z_tensor_of_the_non_complete_intersection() -> None:
    tensor, ideal = _monomial(["x1^2", "x1*x2"])
    z = compute_Z(tensor, ideal)
    ring = tensor.ring
    assert z.get((2, 3, 4), 1, 1) == -2 * parse_polynomial("x2*x3*x4", ring)
    assert z.get((2, 3, 4), 2, 2) == -parse_polynomial("x2*x3*x4", ring)
    assert z.get((1, 3, 4), 2, 2) == parse_polynomial("x1*x3*x4", ring)
    assert not z.verify()


def test_every_row_reexpands_to_its_bracket() -> None:
    tensor, ideal = _monomial(["x1*x2", "x3*x4"])
    z = compute_Z(tensor, ideal)
    for (indices, mu), _ in z.items():
        coords = [tensor.coordinate(i) for i in indices]
        bracket = bracket_eval(tensor, *coords, ideal.generators[mu - 1], reduce=False)
        assert z.combination(indices, mu) == bracket


def test_non_nambu_ideal_names_the_offending_bracket() -> None:
    tensor, ideal = _monomial(["x1 + x2"])
    with pytest.raises(NotNambuIdeal) as excinfo:
        compute_Z(tensor, ideal)
    assert excinfo.value.generator == 1
    assert len(excinfo.value.indices) == 3


def test_zero_tensor_has_zero_z() -> None:
    tensor = explicit({}, n=4, arity=4)
    ideal = IdealPresentation.from_strings(["x1*x4 - x2*x3"], 4)
    z = compute_Z(tensor, ideal)
    assert z.is_zero
    assert z.report().all_zero


def test_maurer_cartan_holds_for_the_complete_intersection() -> None:
    tensor, ideal = _monomial(["x1*x2", "x3*x4"])
    report = maurer_cartan_report(tensor, compute_Z(tensor, ideal), ideal)
    assert report.mc_holds
    assert report.k == 2
    assert len(report.curvatures) == 2
    assert all(value.vanishes for value in report.curvatures)
    assert not report.connection_axiom_violations
    assert report.status.value == "pass"


def test_maurer_cartan_defect_vanishes_when_generators_are_casimirs() -> None:
    tensor = diagonal({(1, 2): 1}, n=3, arity=2)
    ideal = IdealPresentation.from_strings(["x3"], 3)
    z = compute_Z(tensor, ideal)
    assert z.is_zero
    report = maurer_cartan_report(tensor, z, ideal)
    assert report.defect_zero
    assert report.mc_holds


def _so3():
    tensor = explicit({(1, 2): "x3", (2, 3): "x1", (1, 3): "-x2"}, n=3, arity=2)
    ideal = IdealPresentation.from_strings(["x1", "x2", "x3"], 3)
    return tensor, ideal, compute_Z(tensor, ideal)


def test_so3_defect_uses_the_one_half_normalization() -> None:
    tensor, ideal, z = _so3()
    defect = mc_defect(tensor, z)
    assert not defect.bracket.is_zero
    assert mc_check(tensor, z, ideal)
    assert annihilates_mod_square(defect.delta - defect.bracket.scale("1/2"), ideal)
    for factor in ("-1/2", "1", "-1"):
        assert not annihilates_mod_square(defect.delta - defect.bracket.scale(factor), ideal), factor


def _random_vector(ideal: IdealPresentation, rng: random.Random):
    ring = ideal.ring
    vector = []
    for _ in range(ideal.k):
        value = ring.zero
        for _ in range(rng.randint(0, 3)):
            monomial = ring(rng.randint(-3, 3))
            for _ in range(rng.randint(0, 2)):
                monomial = monomial * rng.choice(ring.gens)
            value = value + monomial
        vector.append(value)
    return vector


def test_hamiltonian_curvature_agrees_with_the_defect() -> None:
    rng = random.Random(11)
    cases = [_so3()]
    tensor, ideal = _monomial(["x1*x2", "x3*x4"])
    cases.append((tensor, ideal, compute_Z(tensor, ideal)))
    tensor, ideal = _monomial(["x1^2", "x1*x2"])
    cases.append((tensor, ideal, compute_Z(tensor, ideal)))
    for tensor, ideal, z in cases:
        holds = mc_check(tensor, z, ideal)
        assert holds
        for _ in range(10):
            vector = _random_vector(ideal, rng)
            assert (not curvature(tensor, z, ideal, vector)) == holds
            assert defect_action(tensor, z, ideal, vector).is_zero == holds


def test_wrong_z_is_caught_by_both_curvature_paths() -> None:
    tensor, ideal, z = _so3()
    doubled = ZTensor(
        tensor=tensor,
        ideal=ideal,
        values={key: tuple(2 * c for c in row) for key, row in z.items()},
    )
    assert doubled.verify()
    assert not mc_check(tensor, doubled, ideal)
    unit = [ideal.ring.one, ideal.ring.zero, ideal.ring.zero]
    assert curvature(tensor, doubled, ideal, unit)
    assert not defect_action(tensor, doubled, ideal, unit).is_zero
    report = maurer_cartan_report(tensor, doubled, ideal)
    assert not report.mc_holds
    assert report.connection_axiom_violations
    assert report.status.value == "fail"
