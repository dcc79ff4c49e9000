"""Certification and normalization of oriented presentations."""

import random

import pytest

from qgerbe.ncpoly import MonomialOrder, NCPolynomial
from qgerbe.qgroups import build_podles_sphere, build_suq2
from qgerbe.rewrite import (Presentation, RewriteBudgetExceeded, RewriteRule,
                            certify, check_local_confluence,
                            check_rule_orientation, make_alphabet,
                            orient_relation)
from qgerbe.scalars import LaurentScalar


def rand_word(pres, rng, deg=6):
    gids = [g.gid for g in pres.alphabet]
    return tuple(rng.choice(gids) for _ in range(rng.randint(0, deg)))


def test_certified_presets_are_confluent():
    for pres in (build_suq2(), build_podles_sphere()):
        assert not check_rule_orientation(pres)
        assert not check_local_confluence(pres)


def test_normal_forms_are_strategy_independent():
    pres = build_suq2()
    rng = random.Random(3)
    for _ in range(200):
        p = NCPolynomial.monomial(rand_word(pres, rng))
        det = pres.normalize(p)
        rnd = pres.normalize(p, rng=rng)
        assert det == rnd


def test_normalization_is_idempotent():
    pres = build_suq2()
    rng = random.Random(4)
    for _ in range(100):
        nf = pres.normalize(NCPolynomial.monomial(rand_word(pres, rng)))
        assert pres.normalize(nf) == nf


def test_bad_orientation_is_rejected():
    # rule x y -> y x y grows the word: not a termination certificate
    alphabet = make_alphabet(["x", "y"])
    order = MonomialOrder([0, 1])
    rule = RewriteRule((0, 1), NCPolynomial.monomial((1, 0, 1)))
    pres = Presentation("bad", alphabet, order, [rule])
    with pytest.raises(ValueError):
        certify(pres)


def test_non_confluent_pair_is_detected():
    # x x -> 1 and x x -> x disagree on x x
    alphabet = make_alphabet(["x"])
    order = MonomialOrder([0])
    rules = [RewriteRule((0, 0), NCPolynomial.one()),
             RewriteRule((0, 0), NCPolynomial.generator(0))]
    pres = Presentation("ambiguous", alphabet, order, rules)
    assert not check_rule_orientation(pres)
    with pytest.raises(ValueError):
        certify(pres)


def test_budget_guard_raises():
    pres = build_suq2()
    long_word = (pres.gid("d"), pres.gid("a")) * 12
    with pytest.raises(RewriteBudgetExceeded):
        pres.normalize(NCPolynomial.monomial(long_word), budget=5)


def test_orient_relation_divides_by_leading_unit():
    order = MonomialOrder([0, 1])
    # 2 q x y - y x = 0: deg-lex leading word is y x, so  y x -> 2 q x y
    rel = (NCPolynomial.monomial((0, 1), LaurentScalar.q_power(1, 2))
           - NCPolynomial.monomial((1, 0)))
    rule = orient_relation(order, rel)
    assert rule.lhs == (1, 0)
    assert rule.rhs.terms[(0, 1)] == LaurentScalar.q_power(1, 2)


def test_central_generators_sort_to_front():
    alphabet = make_alphabet(["c1", "x"], central={"c1"})
    order = MonomialOrder([0, 1])
    pres = Presentation("central", alphabet, order, [])
    assert pres.canonical_word((1, 0, 1, 0)) == (0, 0, 1, 1)
