"""Ring axioms and involution properties of the exact scalar types."""

from fractions import Fraction

from hypothesis import given, strategies as st

from qgerbe.scalars import (GaussianRational, LaurentScalar, format_scalar,
                            scalar_term_count)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=10)
gaussians = st.builds(GaussianRational, rationals, rationals)


@st.composite
def laurents(draw):
    terms = draw(st.dictionaries(st.integers(-4, 4), gaussians, max_size=4))
    return LaurentScalar(terms)


@given(laurents(), laurents(), laurents())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentScalar.zero() == a
    assert a * LaurentScalar.one() == a
    assert a - a == LaurentScalar.zero()


@given(laurents(), laurents())
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a


@given(laurents())
def test_q_inversion_involution(a):
    assert a.subs_q_inverse().subs_q_inverse() == a


@given(st.integers(-4, 4), gaussians)
def test_monomial_inverse(k, c):
    if not c:
        return
    s = LaurentScalar({k: c})
    assert (s * s.inverse()).is_one()


@given(laurents(), st.floats(0.1, 4.0))
def test_eval_is_a_homomorphism(a, q0):
    b = LaurentScalar.q_power(2, GaussianRational(1, 1))
    lhs = (a * b).eval_at(q0)
    rhs = a.eval_at(q0) * b.eval_at(q0)
    assert abs(lhs - rhs) < 1e-8 * (1 + abs(rhs))


def test_eval_requires_positive_q():
    s = LaurentScalar.q_power(-1)
    try:
        s.eval_at(0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("eval_at accepted q = 0")


def test_format_examples():
    s = LaurentScalar({-2: GaussianRational(0, Fraction(3, 2)),
                       1: GaussianRational(1)})
    assert format_scalar(s) == "q + 3/2*i*q^-2"
    assert format_scalar(LaurentScalar.zero()) == "0"
    assert scalar_term_count(s) == 2
