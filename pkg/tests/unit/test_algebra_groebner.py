import random

import pytest

from src.algebra.commutative import coordinate_ring, parse_polynomial, render_polynomial
from src.algebra.errors import NotInIdeal, ParseError
from src.algebra.groebner import IdealPresentation

INSTANCES = 200


def _random_polynomial(rng: random.Random, n: int, max_degree: int = 2):
    ring = coordinate_ring(n)
    out = ring.zero
    for _ in range(rng.randint(1, 3)):
        term = ring.one * rng.choice([-3, -2, -1, 1, 2, 3])
        for _ in range(rng.randint(0, max_degree)):
            term = term * rng.choice(ring.gens)
        out = out + term
    return out


@pytest.mark.parametrize("texts", [["x1*x2", "x3*x4"], ["x1^2", "x1*x2"], ["x1*x4 - x2*x3"]])
def test_lift_reexpands_members(texts: list[str]) -> None:
    ideal = IdealPresentation.from_strings(texts, 4)
    rng = random.Random(17)
    for _ in range(INSTANCES):
        cofactors = [_random_polynomial(rng, 4) for _ in ideal.generators]
        member = sum((c * f for c, f in zip(cofactors, ideal.generators)), ideal.ring.zero)
        assert ideal.member(member)
        assert not ideal.normal_form(member)
        lift = ideal.lift(member)
        assert len(lift) == ideal.k
        assert sum((c * f for c, f in zip(lift, ideal.generators)), ideal.ring.zero) == member


@pytest.mark.parametrize("texts", [["x1*x2", "x3*x4"], ["x1^2", "x1*x2"]])
def test_normal_form_is_idempotent_and_differs_by_a_member(texts: list[str]) -> None:
    ideal = IdealPresentation.from_strings(texts, 4)
    rng = random.Random(5)
    for _ in range(INSTANCES):
        p = _random_polynomial(rng, 4, max_degree=3)
        remainder = ideal.normal_form(p)
        assert ideal.normal_form(remainder) == remainder
        assert ideal.member(p - remainder)


def test_lift_of_a_non_member_raises() -> None:
    ideal = IdealPresentation.from_strings(["x1*x2", "x3*x4"], 4)
    with pytest.raises(NotInIdeal):
        ideal.lift(ideal.ring.gens[0])


def test_zero_ideal_keeps_everything() -> None:
    ideal = IdealPresentation([], coordinate_ring(2))
    x1 = ideal.ring.gens[0]
    assert ideal.normal_form(x1) == x1
    assert ideal.lift(ideal.ring.zero) == ()
    with pytest.raises(NotInIdeal):
        ideal.lift(x1)


def test_square_lists_all_products() -> None:
    ideal = IdealPresentation.from_strings(["x1", "x2", "x3"], 3)
    square = ideal.square()
    assert square.k == 6
    assert square.member(ideal.ring.gens[0] * ideal.ring.gens[2])
    assert not square.member(ideal.ring.gens[0])


def test_parse_polynomial_with_aliases_and_definitions() -> None:
    ring = coordinate_ring(3)
    u = parse_polynomial("x^2*y", ring, {"x": "x1", "y": "x2"})
    assert render_polynomial(u) == "x1**2*x2"
    value = parse_polynomial("2*u - 3/2*z", ring, {"z": "x3"}, {"u": u})
    assert value == parse_polynomial("2*x1^2*x2 - 3/2*x3", ring)


def test_parse_polynomial_rejects_unknown_symbols() -> None:
    ring = coordinate_ring(2)
    with pytest.raises(ParseError):
        parse_polynomial("x1 + w", ring)
    with pytest.raises(ParseError):
        parse_polynomial("x1 +", ring)
    with pytest.raises(ParseError):
        parse_polynomial("y", ring, {"y": "x9"})
