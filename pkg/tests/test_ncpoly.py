"""Free-algebra arithmetic, substitution, star, and tensor powers."""

import random

from qgerbe.ncpoly import NCPolynomial, TensorPoly, apply_star, substitute
from qgerbe.scalars import GaussianRational, LaurentScalar


def rand_poly(rng, gids=(0, 1, 2), terms=3, deg=4):
    p = NCPolynomial.zero()
    for _ in range(terms):
        w = tuple(rng.choice(gids) for _ in range(rng.randint(0, deg)))
        c = LaurentScalar({rng.randint(-2, 2):
                           GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))})
        p = p + NCPolynomial.monomial(w, c)
    return p


def test_associativity_and_distributivity():
    rng = random.Random(0)
    for _ in range(50):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


def test_noncommutativity_visible():
    x = NCPolynomial.generator(0)
    y = NCPolynomial.generator(1)
    assert x * y != y * x


def test_substitute_is_an_algebra_map():
    rng = random.Random(1)
    images = {0: rand_poly(rng), 1: rand_poly(rng), 2: rand_poly(rng)}
    for _ in range(30):
        a, b = rand_poly(rng), rand_poly(rng)
        assert substitute(a * b, images) == substitute(a, images) * substitute(b, images)
        assert substitute(a + b, images) == substitute(a, images) + substitute(b, images)


def test_star_is_an_anti_involution():
    # star map: 0 <-> 1, 2 -> -2 (self-adjoint up to sign)
    starmap = {0: NCPolynomial.generator(1), 1: NCPolynomial.generator(0),
               2: -NCPolynomial.generator(2)}
    rng = random.Random(2)
    for _ in range(30):
        a, b = rand_poly(rng), rand_poly(rng)
        assert apply_star(a * b, starmap) == apply_star(b, starmap) * apply_star(a, starmap)
        assert apply_star(apply_star(a, starmap), starmap) == a


def test_tensor_componentwise_product():
    t1 = TensorPoly.of((0,), (1,))
    t2 = TensorPoly.of((1,), (0,))
    prod = t1 * t2
    assert prod == TensorPoly.of((0, 1), (1, 0))


def test_map_slots_expands_polynomial_images():
    t = TensorPoly.of((0,), (1,))

    def double(p):
        return p + p

    out = t.map_slots(double)
    # doubling each of two slots scales the term by four
    four = LaurentScalar.from_rational(4)
    assert out == TensorPoly.of((0,), (1,)).scale(four)
