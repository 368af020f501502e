import random

from src.algebra.schouten import contract_coordinate, schouten
from src.algebra.superpoly import SuperPolynomial
from src.algebra.variables import Kind, Variable

INSTANCES = 200

POOL = [Variable(kind, level, index) for kind in Kind for level in (0, 1) for index in (1, 2)]
EVEN_POOL = [v for v in POOL if v.kind == Kind.EVEN]


def _random_element(rng: random.Random, parity: int | None, pool: list[Variable] = POOL) -> SuperPolynomial:
    """A nonzero sum of up to three monomials, parity-homogeneous unless ``parity`` is None."""
    while True:
        parts = []
        for _ in range(rng.randint(1, 3)):
            factors = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
            term = SuperPolynomial.product(factors, rng.choice([-3, -2, -1, 1, 2, 3]))
            if term.is_zero or (parity is not None and term.parity() != parity):
                continue
            parts.append(term)
        value = SuperPolynomial.sum(parts)
        if not value.is_zero:
            return value


def _sign(p: int, q: int) -> int:
    return -1 if ((p + 1) * (q + 1)) % 2 else 1


def test_darboux_pairing_is_the_kronecker_delta() -> None:
    for level in (0, 1, 2):
        for i in (1, 2):
            for j in (1, 2):
                xi = SuperPolynomial.variable(Variable.xi(i, level))
                x = SuperPolynomial.variable(Variable.x(j, level))
                value = schouten(xi, x)
                assert value == (SuperPolynomial.one() if i == j else SuperPolynomial())


def test_bracket_with_zero_is_zero() -> None:
    value = SuperPolynomial.parse("1 * x1_0*xi1_0*xi2_0")
    assert schouten(value, SuperPolynomial()).is_zero
    assert schouten(SuperPolynomial(), value).is_zero


def test_graded_antisymmetry() -> None:
    rng = random.Random(20240611)
    for _ in range(INSTANCES):
        p, q = rng.randint(0, 1), rng.randint(0, 1)
        X, Y = _random_element(rng, p), _random_element(rng, q)
        assert schouten(X, Y) == schouten(Y, X).scale(-_sign(p, q))


def test_graded_jacobi_identity() -> None:
    rng = random.Random(7)
    for _ in range(INSTANCES):
        p, q, r = rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 1)
        X, Y, W = _random_element(rng, p), _random_element(rng, q), _random_element(rng, r)
        lhs = schouten(X, schouten(Y, W))
        rhs = schouten(schouten(X, Y), W) + schouten(Y, schouten(X, W)).scale(_sign(p, q))
        assert lhs == rhs


def test_contraction_agrees_with_the_bracket_on_xi_free_arguments() -> None:
    rng = random.Random(11)
    for _ in range(INSTANCES):
        X = _random_element(rng, None)
        a = _random_element(rng, None, EVEN_POOL)
        assert contract_coordinate(X, a) == schouten(X, a)


def test_filtration_cap_drops_exactly_the_high_terms() -> None:
    rng = random.Random(3)
    for _ in range(INSTANCES):
        X, Y = _random_element(rng, None), _random_element(rng, None)
        cap = rng.randint(0, 4)
        assert schouten(X, Y, max_filtration=cap) == schouten(X, Y).filtration_below(cap + 1)


def test_graded_leibniz_rule_in_the_second_slot() -> None:
    rng = random.Random(41)
    for _ in range(INSTANCES):
        p, q, r = rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 1)
        X, Y, W = _random_element(rng, p), _random_element(rng, q), _random_element(rng, r)
        sign = -1 if ((p + 1) * q) % 2 else 1
        assert schouten(X, Y * W) == schouten(X, Y) * W + (Y * schouten(X, W)).scale(sign)
