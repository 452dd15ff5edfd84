import random
from fractions import Fraction

import pytest

from mahlersolve.operator import MahlerOperator
from mahlersolve.poly import Poly


def pol(*coeffs) -> Poly:
    """Dense helper: pol(c0, c1, ...) = c0 + c1 x + ..."""
    return Poly.from_coeffs([Fraction(c) for c in coeffs])


def mono(e, c=1) -> Poly:
    return Poly.monomial(e, Fraction(c))


def signed(plus, minus=()) -> Poly:
    """Polynomial with +1 coefficients at `plus` and -1 at `minus`."""
    return Poly([(e, Fraction(1)) for e in plus] + [(e, Fraction(-1)) for e in minus])


def operator(radix, *coeffs) -> MahlerOperator:
    return MahlerOperator(radix, list(coeffs))


@pytest.fixture(scope="session")
def running_example() -> MahlerOperator:
    """Order-2 radix-3 operator whose Newton polygon has slopes -3 and 1/2."""
    one = Poly.one()
    l2 = mono(3) * pol(1, 0, 0, -1, 0, 0, 1) * (one - mono(7) - mono(10))
    l1 = -(one - mono(28) - mono(31) - mono(37) - mono(40))
    l0 = mono(6) * pol(1, 1) * (one - mono(21) - mono(30))
    return MahlerOperator(3, [l0, l1, l2])


@pytest.fixture(scope="session")
def running_example_series() -> list[Fraction]:
    """Coefficients 0..12 of the power-series solution of the operator above."""
    return [Fraction(c) for c in [0, 0, 0, 1, -1, 1, -2, 2, -2, 3, -3, 3, -5]]


@pytest.fixture(scope="session")
def rat_example() -> MahlerOperator:
    """Order-2 radix-3 operator with rational solutions 1/(2x-1), 1/(x^2-x-1)."""
    one = Poly.one()
    l2 = pol(3, -1, 0, -1, 2) * pol(-1, *[0] * 8, 2) * (mono(18) - mono(9) - one)
    l1 = -(
        pol(1, 0, 1)
        * pol(-1, 0, 0, 2)
        * (mono(4) + one)
        * (mono(6) - mono(3) - one)
        * (pol(3, -1) + mono(9, -1) + mono(10, 2))
    )
    l0 = (
        mono(2)
        * pol(-1, 2)
        * pol(1, 1, 1)
        * pol(1, -1, 1)
        * pol(-1, -1, 1)
        * (pol(3) + mono(3, -1) + mono(9, -1) + mono(12, 2))
    )
    return MahlerOperator(3, [l0, l1, l2])


@pytest.fixture(scope="session")
def rat_example_transformed() -> MahlerOperator:
    """The same equation after the change of unknown y = q_star * y~."""
    one = Poly.one()
    q1, q2, q3, q4 = pol(-1, 2), pol(-1, -1, 1), pol(-1, 8), pol(-1, -4, 1)
    f2x4 = pol(3, -1, 0, -1, 2)
    f12 = pol(1, 0, 0, -1, 0, 0, 2, 0, 0, 1, 0, 0, 1)
    tl2 = q1 * q3 * q2 * q4 * pol(1, 2, 4) * f2x4 * pol(1, -1, 2, 1, 1)
    tl1 = -(
        q3
        * pol(1, 0, 1)
        * q4
        * pol(-1, 0, 0, 2)
        * (mono(4) + one)
        * (mono(6) - mono(3) - one)
        * (pol(1) + mono(3, 2) + mono(6, 4))
        * (pol(3, -1) + mono(9, -1) + mono(10, 2))
        * f12
    )
    tl0 = (
        mono(2)
        * q1
        * pol(1, 1, 1)
        * pol(1, -1, 1)
        * q2
        * pol(1, 2, 4)
        * pol(-1, 0, 0, 2)
        * pol(1, -1, 2, 1, 1)
        * (mono(6) - mono(3) - one)
        * (pol(1) + mono(3, 2) + mono(6, 4))
        * f12
        * (pol(3) + mono(3, -1) + mono(9, -1) + mono(12, 2))
    )
    return MahlerOperator(3, [tl0, tl1, tl2])


@pytest.fixture(scope="session")
def reduction_example() -> MahlerOperator:
    """Order-4 radix-3 operator with zero trailing coefficient."""
    l1 = mono(9) * signed([0, 51, 54, 108], [15, 87]) * signed([0, 24], [12])
    l2 = -(
        mono(3)
        * signed(
            [0, 6, 30, 32, 33, 36, 54, 56, 57, 60, 80, 81, 84, 90, 104, 105, 108, 114, 138, 144],
            [20, 21, 44, 45, 68, 69, 92, 93, 116, 117],
        )
    )
    l3 = signed(
        [0, 3, 17, 18, 21, 35, 36, 39, 54, 57, 72, 75, 90, 93, 107, 108, 111, 125, 126, 129, 144, 147],
        [5, 23, 29, 47, 95, 113, 119, 137],
    )
    l4 = -(
        signed([0, 27, 54])
        * signed([0, 54], [27])
        * signed([0, 17, 18, 36], [5, 29])
    )
    return MahlerOperator(3, [Poly.zero(), l1, l2, l3, l4])


@pytest.fixture(scope="session")
def reduction_example_normalized() -> MahlerOperator:
    """The primitive order-2 operator the reduction example collapses to."""
    e0 = mono(2) * signed([0, 8], [4])
    e1 = -(signed([0, 4, 8], [2, 6]) * Poly([(0, Fraction(1)), (2, Fraction(2)), (4, Fraction(1))]))
    e2 = signed([0, 3, 6]) * signed([0, 6], [3])
    return MahlerOperator(3, [e0, e1, e2])


@pytest.fixture(scope="session")
def sparse_stretch_example() -> MahlerOperator:
    """Order-11 radix-3 operator with exponents in the millions; exercises
    the sparse representation end to end."""
    data = [
        [(568, 1)],
        [(1218, -1), (1705, -1)],
        [(3655, 1)],
        [(162, -1), (10962, 1)],
        [(0, 1), (487, 1), (4104, -1), (4536, -1), (32887, -1)],
        [(1, -1), (11826, 1), (12313, 1), (13122, 1), (13609, 1)],
        [(0, -1), (35479, -1), (39367, -1)],
        [(1, 1), (95634, 1), (106434, -1), (118098, -1)],
        [(286416, -1), (286903, -1), (319303, 1), (354295, 1)],
        [(859249, 1)],
        [(2577744, 1)],
        [(7733233, -1)],
    ]
    return MahlerOperator(3, [Poly([(e, Fraction(c)) for e, c in t]) for t in data])


def random_poly(rng: random.Random, max_degree: int, min_terms=1, zero_ok=False) -> Poly:
    if zero_ok and rng.random() < 0.15:
        return Poly.zero()
    nterms = rng.randint(min_terms, max(min_terms, min(max_degree + 1, 4)))
    exps = rng.sample(range(max_degree + 1), min(nterms, max_degree + 1))
    terms = []
    for e in exps:
        c = 0
        while c == 0:
            c = rng.randint(-3, 3)
        terms.append((e, Fraction(c)))
    return Poly(terms)


def random_operator(
    rng: random.Random,
    radix: int,
    order: int,
    max_degree: int,
    nonzero_l0: bool = True,
) -> MahlerOperator:
    coeffs = [random_poly(rng, max_degree, zero_ok=True) for _ in range(order + 1)]
    while not coeffs[order]:
        coeffs[order] = random_poly(rng, max_degree)
    if nonzero_l0:
        while not coeffs[0]:
            coeffs[0] = random_poly(rng, max_degree)
    return MahlerOperator(radix, coeffs)


def random_series_solvable_operator(rng: random.Random, radix: int, order: int) -> MahlerOperator:
    """Product of first-order factors M - u with unit trailing terms and
    trailing exponents divisible by radix-1; the rightmost factor then
    guarantees a nonempty power-series solution space."""
    result = None
    for _ in range(order):
        val = (radix - 1) * rng.randint(0, 1)
        u = Poly.monomial(val) + random_poly(rng, 3, zero_ok=True).shift(val + 1)
        factor = MahlerOperator(radix, [-u, Poly.one()])
        result = factor if result is None else result * factor
    return result


def random_poly_solvable(rng: random.Random, radix: int, order: int):
    """(operator, known polynomial solution p), built by composing a
    random left factor with the annihilator p(x) M - p(x^radix)."""
    from mahlersolve.poly import mahler_substitute

    p = random_poly(rng, 2)
    right = MahlerOperator(radix, [-mahler_substitute(p, radix), p])
    left = random_operator(rng, radix, max(0, order - 1), 2, nonzero_l0=True)
    return left * right, p
