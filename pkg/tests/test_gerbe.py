"""Equator matrix, projection, symbolic loop, extensions, and resolvents."""

import pytest

from qgerbe import gerbe as gb
from qgerbe import qgroups as qg
from qgerbe.ncpoly import NCPolynomial
from qgerbe.scalars import GaussianRational


def _all_hold(checks):
    bad = [c for c in checks if not c.get("holds", c.get("status") == "holds")]
    assert not bad, bad[:1]


def test_x_is_a_hermitian_involution():
    _all_hold(gb.verify_x_involution(gb.build_x_equator()))


def test_projection_is_selfadjoint_idempotent():
    x = gb.build_x_equator()
    _all_hold(gb.verify_projection(gb.build_projection(x)))


def test_broken_x_is_rejected():
    # negative control: dropping the q on the corner breaks x^2 = 1
    s2q = qg.build_podles_sphere()
    K, L, Ls = (s2q.gen(n) for n in ("K", "L", "Ls"))
    wrong = gb.AlgMatrix(s2q, [[K, L], [Ls, -K]])
    results = gb.verify_x_involution(wrong)
    assert not all(r["holds"] for r in results)


def test_equator_loop():
    loop = gb.build_equator_loop(gb.build_x_equator())
    _all_hold(gb.verify_loop_unitary(loop))


def test_loop_requires_an_involution():
    s2q = qg.build_podles_sphere()
    K = s2q.gen("K")
    not_inv = gb.AlgMatrix(s2q, [[K, NCPolynomial.zero()],
                                 [NCPolynomial.zero(), K]])
    with pytest.raises(ValueError):
        gb.build_equator_loop(not_inv)


def test_undeformed_extension_statuses():
    x, _ = gb.build_x_extended(deformed=False)
    by_name = {r["name"]: r["status"] for r in gb.verify_x_extended(x)}
    assert by_name["x* = x"] == "holds"
    assert by_name["x^2 = 1 (homogenized by f^2)"] == "holds"
    # the printed source claims x^2 = x as well; it genuinely fails
    assert by_name["x^2 = x (homogenized by f^2)"] == "fails"


def test_deformed_extension_statuses():
    x, pres = gb.build_x_extended(deformed=True)
    results = gb.verify_x_extended(x)
    # off the equator the f/f_q commutation rules are deliberately undeclared
    assert all(r["status"] == "indeterminate" for r in results)


def test_deformed_restriction_is_the_flipped_equator_matrix():
    s2q = qg.build_podles_sphere()
    x_eq = gb.build_x_equator(s2q)
    xe, _ = gb.build_x_extended(deformed=True)
    restricted = gb.restrict_to_equator(xe, s2q)
    res = restricted.normalized().residual_against(gb.flip_conjugate(x_eq))
    assert not res
    _all_hold(gb.verify_x_involution(restricted))


def test_resolvent_identities():
    for n in (2,):
        for cut in (GaussianRational(0, 1), GaussianRational(0, -1)):
            ext = gb.adjoin_resolvent(qg.build_suqn(n), cut)
            _all_hold(ext.verify())


def test_resolvent_cut_must_be_unimodular():
    with pytest.raises(ValueError):
        gb.adjoin_resolvent(qg.build_suqn(2), GaussianRational(2, 0))


def test_formal_transition():
    a = GaussianRational(0, 1)
    b = GaussianRational(0, -1)
    _all_hold(gb.formal_transition(2, a, b))
    with pytest.raises(ValueError):
        gb.formal_transition(2, a, a)
