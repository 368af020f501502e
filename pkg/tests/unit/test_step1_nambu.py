import random

import pytest

from src.algebra.commutative import coordinate_ring, parse_polynomial, to_super
from src.algebra.errors import InvalidInput, OddArity
from src.algebra.groebner import IdealPresentation
from src.algebra.schouten import schouten
from src.algebra.superpoly import SuperPolynomial
from src.algebra.variables import Variable
from src.step1_nambu.constructors import determinantal, diagonal, explicit, outer
from src.step1_nambu.tensor import bracket_eval, delta_nambu, hamiltonian_field, is_casimir, sort_with_sign
from src.step1_nambu.verifier import check_fundamental_identity, scan_casimirs

INSTANCES = 200


def _random_polynomial(rng: random.Random, n: int, max_degree: int = 2):
    ring = coordinate_ring(n)
    out = ring.zero
    for _ in range(rng.randint(1, 3)):
        term = ring.one * rng.randint(-3, 3)
        for _ in range(rng.randint(0, max_degree)):
            term = term * rng.choice(ring.gens)
        out = out + term
    return out


def _so3():
    ring = coordinate_ring(3)
    casimir = parse_polynomial("x1^2 + x2^2 + x3^2", ring)
    return determinantal(ring.one, [casimir], n=3, arity=2), casimir


def test_sort_with_sign_counts_transpositions() -> None:
    assert sort_with_sign((2, 3, 4, 1)) == (-1, (1, 2, 3, 4))
    assert sort_with_sign((1, 3, 4, 2)) == (1, (1, 2, 3, 4))
    assert sort_with_sign((1, 1, 2))[0] == 0


def test_diagonal_bracket_is_antisymmetric_in_its_indices() -> None:
    tensor = diagonal({(1, 2, 3, 4): 1}, n=4, arity=4)
    ring = tensor.ring
    x1, x2, x3, x4 = ring.gens
    assert tensor.coefficient((1, 2, 3, 4)) == x1 * x2 * x3 * x4
    assert tensor.coefficient((2, 1, 3, 4)) == -(x1 * x2 * x3 * x4)
    assert tensor.coefficient((1, 1, 3, 4)) == ring.zero
    assert bracket_eval(tensor, x1, x2, x3, x4) == x1 * x2 * x3 * x4


def test_diagonal_rejects_odd_arity_and_broken_antisymmetry() -> None:
    with pytest.raises(OddArity):
        diagonal({(1, 2, 3): 1}, n=3, arity=3)
    with pytest.raises(InvalidInput):
        diagonal({(1, 2): 1, (2, 1): 1}, n=2, arity=2)


def test_explicit_rejects_contradicting_coefficients() -> None:
    with pytest.raises(InvalidInput):
        explicit({(1, 2): "x1", (2, 1): "x1"}, n=2, arity=2)
    with pytest.raises(InvalidInput):
        explicit({(1, 2, 3): "1"}, n=2, arity=2)


def test_determinantal_bracket_of_the_sphere() -> None:
    tensor, casimir = _so3()
    x1, x2, x3 = tensor.ring.gens
    assert tensor.coefficient((1, 2)) == 2 * x3
    assert tensor.coefficient((2, 3)) == 2 * x1
    assert tensor.coefficient((1, 3)) == -2 * x2
    assert is_casimir(tensor, casimir)
    assert check_fundamental_identity(tensor).is_nambu
    assert hamiltonian_field(tensor, x1)(x2) == 2 * x3


def test_determinantal_validates_its_derivations() -> None:
    ring = coordinate_ring(3)
    with pytest.raises(InvalidInput):
        determinantal(ring.one, [ring.gens[0]], n=3, arity=2, derivations=[1, 2])
    with pytest.raises(InvalidInput):
        determinantal(ring.one, [ring.gens[0]], n=3, arity=2, derivations=[1, 1, 2])


def test_outer_product_renumbers_the_second_factor() -> None:
    a = diagonal({(1, 2): 1}, n=2, arity=2)
    b = diagonal({(1, 2): 2}, n=2, arity=2)
    product = outer(a, b)
    x1, x2, x3, x4 = product.ring.gens
    assert product.n == 4 and product.arity == 4
    assert product.coefficient((1, 2, 3, 4)) == 2 * x1 * x2 * x3 * x4
    assert product.coefficient((1, 3, 2, 4)) == -2 * x1 * x2 * x3 * x4


def test_top_degree_bracket_satisfies_the_fundamental_identity() -> None:
    tensor = diagonal({(1, 2, 3, 4): 1}, n=4, arity=4)
    report = check_fundamental_identity(tensor, threads=2)
    assert report.is_nambu
    assert report.decomposability_checked
    assert not report.decomposability_violations


def test_fundamental_identity_reports_violations() -> None:
    tensor = explicit({(1, 2): "x3", (2, 3): "x2"}, n=3, arity=2)
    report = check_fundamental_identity(tensor)
    assert not report.is_nambu
    assert report.fi_violations


def test_modulo_ideal_verification_reduces_residuals() -> None:
    ideal = IdealPresentation.from_strings(["x3"], 3)
    tensor = explicit({(1, 2): "x3", (2, 3): "x2"}, n=3, arity=2, ideal=ideal)
    assert check_fundamental_identity(tensor, modulo_ideal=True).is_nambu


def test_casimir_scan_lists_each_generator() -> None:
    tensor, casimir = _so3()
    ideal = IdealPresentation([casimir, tensor.ring.gens[0]], tensor.ring)
    scan = scan_casimirs(tensor, ideal)
    assert [entry.is_casimir for entry in scan.entries] == [True, False]
    assert not scan.all_casimir


def test_brackets_are_antisymmetric_and_satisfy_leibniz() -> None:
    rng = random.Random(41)
    tensor = diagonal({(1, 2, 3, 4): 1}, n=4, arity=4)
    for _ in range(INSTANCES):
        a, b, c, g, h = (_random_polynomial(rng, 4) for _ in range(5))
        assert bracket_eval(tensor, a, b, c, g) == -bracket_eval(tensor, b, a, c, g)
        assert bracket_eval(tensor, a, b, c, g) == -bracket_eval(tensor, a, b, g, c)
        expected = g * bracket_eval(tensor, a, b, c, h) + h * bracket_eval(tensor, a, b, c, g)
        assert bracket_eval(tensor, a, b, c, g * h) == expected


def test_fundamental_identity_agrees_with_the_schouten_square() -> None:
    rng = random.Random(1234)
    for _ in range(INSTANCES):
        scalars = {pair: rng.randint(-3, 3) for pair in ((1, 2), (1, 3), (2, 3))}
        poisson = diagonal(scalars, n=3, arity=2)
        assert check_fundamental_identity(poisson).is_nambu
        assert schouten(poisson.multivector, poisson.multivector).is_zero
        assert delta_nambu(poisson, poisson.multivector).is_zero


def test_jacobian_brackets_pass_both_identities() -> None:
    rng = random.Random(99)
    ring = coordinate_ring(4)
    for _ in range(INSTANCES // 4):
        casimir = _random_polynomial(rng, 4)
        tensor = determinantal(ring.one, [casimir], n=4, arity=3)
        report = check_fundamental_identity(tensor)
        assert report.is_nambu
        assert not report.decomposability_violations


def test_nambu_differential_squares_to_zero() -> None:
    rng = random.Random(2718)
    ring = coordinate_ring(6)
    for _ in range(30):
        casimirs = [_random_polynomial(rng, 6), _random_polynomial(rng, 6)]
        tensor = determinantal(ring.one, casimirs, n=6, arity=4)
        assert schouten(tensor.multivector, tensor.multivector).is_zero
        parts = []
        for _ in range(rng.randint(1, 3)):
            xis = [Variable.xi(i) for i in rng.sample(range(1, 7), rng.randint(0, 2))]
            parts.append(to_super(_random_polynomial(rng, 6, 3)) * SuperPolynomial.product(xis))
        Y = SuperPolynomial.sum(parts)
        assert delta_nambu(tensor, delta_nambu(tensor, Y)).is_zero
