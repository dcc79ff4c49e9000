"""Grammar coverage, round-trip printing, and matrix literals."""

import random

import numpy as np
import pytest

from qgerbe.ncpoly import NCPolynomial
from qgerbe.parser import (ExprSyntaxError, format_expr, parse_expr,
                           parse_gaussian, parse_matrix)
from qgerbe.qgroups import build_podles_sphere, build_suq2
from qgerbe.scalars import GaussianRational, LaurentScalar


def test_grammar_examples():
    suq2 = build_suq2()
    p = parse_expr("a d - q b c", suq2)
    want = (NCPolynomial.monomial((suq2.gid("a"), suq2.gid("d")))
            - NCPolynomial.monomial((suq2.gid("b"), suq2.gid("c")),
                                    LaurentScalar.q_power(1)))
    assert p == want
    assert suq2.normalize(parse_expr("b' + q c", suq2)).is_zero()
    p = parse_expr("(q - q^-1) (b c)", suq2)
    assert list(p.terms) == [(suq2.gid("b"), suq2.gid("c"))]


def test_juxtaposition_equals_star_product():
    suq2 = build_suq2()
    assert parse_expr("a b", suq2) == parse_expr("a * b", suq2)
    assert parse_expr("2 q a", suq2) == parse_expr("2 * q * a", suq2)


def test_powers_and_scalars():
    suq2 = build_suq2()
    assert parse_expr("b^3", suq2) == parse_expr("b b b", suq2)
    assert parse_expr("q^-2", suq2) == NCPolynomial.scalar(LaurentScalar.q_power(-2))
    assert parse_expr("i^2", suq2) == parse_expr("-1", suq2)
    assert parse_expr("(1/2)^-1", suq2) == parse_expr("2", suq2)
    with pytest.raises(ExprSyntaxError):
        parse_expr("b^-1", suq2)


def test_error_positions():
    suq2 = build_suq2()
    with pytest.raises(ExprSyntaxError):
        parse_expr("a +", suq2)
    with pytest.raises(ExprSyntaxError):
        parse_expr("a ) b", suq2)
    with pytest.raises(ExprSyntaxError):
        parse_expr("unknown_gen", suq2)
    with pytest.raises(ExprSyntaxError):
        parse_expr("a ~ b", suq2)


def test_round_trip_on_random_normal_forms():
    rng = random.Random(11)
    for pres in (build_suq2(), build_podles_sphere()):
        names = [g.name for g in pres.alphabet]
        for _ in range(300):
            p = NCPolynomial.zero()
            for _ in range(rng.randint(1, 4)):
                w = tuple(pres.gid(rng.choice(names))
                          for _ in range(rng.randint(0, 4)))
                c = LaurentScalar({rng.randint(-3, 3): GaussianRational(
                    rng.randint(-5, 5), rng.randint(-5, 5))})
                p = p + NCPolynomial.monomial(w, c)
            p = pres.normalize(p)
            assert parse_expr(format_expr(p, pres), pres) == p


def test_format_examples():
    suq2 = build_suq2()
    assert format_expr(NCPolynomial.zero(), suq2) == "0"
    p = NCPolynomial.monomial((suq2.gid("b"), suq2.gid("a")),
                              LaurentScalar.q_power(1))
    assert format_expr(p, suq2) == "q b a"


def test_matrix_literals():
    m = parse_matrix("diag(i,-i)")
    assert np.allclose(m, np.diag([1j, -1j]))
    m = parse_matrix("diag(3/5 + 4/5 i, 3/5 - 4/5 i)")
    assert abs(m[0, 0] - (0.6 + 0.8j)) < 1e-12
    m = parse_matrix("[[[0,0],[1,0]],[[-1,0],[0,0]]]")
    assert np.allclose(m, [[0, 1], [-1, 0]])
    m = parse_matrix("[[1, 0], [0, 1]]")
    assert np.allclose(m, np.eye(2))


def test_parse_gaussian():
    z = parse_gaussian("3/5 + 4/5 i")
    assert z == GaussianRational("3/5", "4/5")
    with pytest.raises(ExprSyntaxError):
        parse_gaussian("q + 1")
