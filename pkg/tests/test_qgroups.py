"""Quantum matrix algebras, SU_q presets, the sphere quotient, and Hopf data."""

import random

import pytest

from qgerbe.ncpoly import NCPolynomial
from qgerbe.parser import format_expr, parse_expr
from qgerbe import qgroups as qg
from qgerbe.scalars import LaurentScalar


def _zero(pres, text):
    return pres.normalize(parse_expr(text, pres)).is_zero()


def test_suq2_defining_relations():
    pres = qg.build_suq2()
    for rel in ("a b - q b a", "a c - q c a", "b d - q d b", "c d - q d c",
                "b c - c b", "a d - q b c - 1", "d a - q^-1 b c - 1",
                "a d - d a - (q - q^-1) b c"):
        assert _zero(pres, rel), rel


def test_sphere_relations():
    pres = qg.build_podles_sphere()
    for rel in ("L K - q K L", "L' K - q^-1 K L'",
                "L L' + q^2 K^2 - 1", "L' L + K^2 - 1", "K' - K"):
        assert _zero(pres, rel), rel


def test_sphere_projection_kills_the_ideal():
    suq2 = qg.build_suq2()
    s2q = qg.build_podles_sphere()
    ideal_gen = parse_expr("b + q c", suq2)
    assert s2q.normalize(qg.project_to_sphere(ideal_gen, suq2, s2q)).is_zero()


def test_det2_oracle():
    pres = qg.build_quantum_matrix_algebra(2)
    det = qg.quantum_determinant(pres)
    want = parse_expr("g11 g22 - q g12 g21", pres)
    assert det == want


def test_det3_oracle():
    # coefficient (-q)^(number of inversions) on each permutation monomial
    pres = qg.build_quantum_matrix_algebra(3)
    det = qg.quantum_determinant(pres)
    assert len(det.terms) == 6
    word = tuple(pres.gid(n) for n in ("g13", "g22", "g31"))
    assert det.terms[word] == LaurentScalar.q_power(3, -1)
    word = tuple(pres.gid(n) for n in ("g12", "g23", "g31"))
    assert det.terms[word] == LaurentScalar.q_power(2)


def test_det_central():
    for n in (2, 3):
        pres = qg.build_quantum_matrix_algebra(n)
        assert all(r["holds"] for r in qg.verify_det_central(pres))


def test_antipode_oracle_suq2():
    pres = qg.build_suq2()
    images = {name: format_expr(pres.hopf.antipode[pres.gid(name)], pres)
              for name in "abcd"}
    assert images == {"a": "d", "b": "-q^-1 b", "c": "-q c", "d": "a"}


def test_star_reproduces_b_star():
    pres = qg.build_suqn(2)
    got = pres.normalize(pres.apply_star(pres.gen("g12")))
    assert got == pres.normalize(parse_expr("-q g21", pres))
    # and the star is an involution on generators
    for name in ("g11", "g12", "g21", "g22"):
        twice = pres.normalize(pres.apply_star(pres.apply_star(pres.gen(name))))
        assert twice == pres.normalize(pres.gen(name))


def test_wrong_antipode_power_breaks_the_star():
    # negative control: the opposite q-power does not give b* = -q c
    pres = qg.build_suqn(2)
    wrong = pres.gen("g21").scale(-LaurentScalar.q_power(-1))
    assert pres.normalize(pres.apply_star(pres.gen("g12"))) != pres.normalize(wrong)


def test_hopf_axioms_all_presets():
    rng = random.Random(5)
    for label in ("suq2", "mq:2", "mq:3"):
        pres = qg.build_preset(label)
        results = qg.verify_hopf_axioms(pres, max_degree=2, rng=rng, samples=5)
        bad = [r for r in results if not r["holds"]]
        assert not bad, (label, bad[:1])


def test_unitarity():
    for pres in (qg.build_suq2(), qg.build_suqn(3), qg.build_podles_sphere()):
        results = qg.verify_unitarity(pres)
        bad = [r for r in results if not r["holds"]]
        assert not bad, (pres.label, bad[:1])


def test_conventions_exchanged_by_q_inversion():
    p9 = qg.build_quantum_matrix_algebra(2, qg.EQ9)
    p4 = qg.build_quantum_matrix_algebra(2, qg.EQ4)
    assert qg.rules_related_by_q_inversion(p9, p4)
    # negative control: eq9 is not self-inverse under q -> 1/q
    assert not qg.rules_related_by_q_inversion(p9, p9)


def test_eq4_same_row_rule_direction():
    pres = qg.build_quantum_matrix_algebra(2, qg.EQ4)
    # eq4 convention: g11 g12 = q^-1 g12 g11 (q on the other side vs eq9)
    lhs = parse_expr("g11 g12", pres)
    rhs = parse_expr("q^-1 g12 g11", pres)
    assert pres.normalize(lhs - rhs).is_zero()
    p9 = qg.build_quantum_matrix_algebra(2, qg.EQ9)
    assert p9.normalize(parse_expr("g11 g12 - q g12 g11", p9)).is_zero()


def test_preset_registry():
    for label in qg.PRESET_LABELS:
        pres = qg.build_preset(label)
        assert pres.label == label
    with pytest.raises(KeyError):
        qg.build_preset("nope")
