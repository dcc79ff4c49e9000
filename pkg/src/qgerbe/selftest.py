"""The acceptance suite: ten criteria covering the symbolic and numeric halves.

Each criterion function returns a result dict {name, status, witness}; the
whole suite runs via `qg selftest` or `run_all`.
"""

from __future__ import annotations

import random
import time

import numpy as np

from . import classical as cl
from . import gerbe as gb
from . import parser as ps
from . import qgroups as qg
from .ncpoly import NCPolynomial
from .report import Report, validate_report
from .rewrite import certify
from .scalars import GaussianRational, LaurentScalar


def _result(name, ok, witness=None):
    return {"name": name, "status": "holds" if ok else "fails",
            "witness": None if ok else str(witness)}


def _first_failure(checks):
    for c in checks:
        status = c.get("status", "holds" if c.get("holds") else "fails")
        if status == "fails":
            return c
    return None


def _random_element(pres, rng, max_degree=6, terms=3):
    gids = [g.gid for g in pres.alphabet]
    p = NCPolynomial.zero()
    for _ in range(terms):
        word = tuple(rng.choice(gids) for _ in range(rng.randint(0, max_degree)))
        coeff = LaurentScalar({rng.randint(-2, 2): GaussianRational(
            rng.randint(-4, 4), rng.randint(-4, 4))})
        p = p + NCPolynomial.monomial(word, coeff)
    return p


def criterion_1(seed=0, samples=1000):
    """Presentation soundness: relations, certification, strategy independence."""
    rng = random.Random(seed)
    suq2 = qg.build_suq2()
    s2q = qg.build_podles_sphere()
    # defining relations normalize to zero
    relation_checks = [
        ("suq2: a b - q b a", ps.parse_expr("a b - q b a", suq2), suq2),
        ("suq2: a c - q c a", ps.parse_expr("a c - q c a", suq2), suq2),
        ("suq2: b d - q d b", ps.parse_expr("b d - q d b", suq2), suq2),
        ("suq2: c d - q d c", ps.parse_expr("c d - q d c", suq2), suq2),
        ("suq2: b c - c b", ps.parse_expr("b c - c b", suq2), suq2),
        ("suq2: a d - d a - (q - q^-1) b c",
         ps.parse_expr("a d - d a - (q - q^-1) b c", suq2), suq2),
        ("suq2: a d - q b c - 1", ps.parse_expr("a d - q b c - 1", suq2), suq2),
        ("s2q: L L' + q^2 K^2 - 1", ps.parse_expr("L L' + q^2 K^2 - 1", s2q), s2q),
        ("s2q: L' L + K^2 - 1", ps.parse_expr("L' L + K^2 - 1", s2q), s2q),
        ("s2q: L K - q K L", ps.parse_expr("L K - q K L", s2q), s2q),
    ]
    for name, p, pres in relation_checks:
        if not pres.normalize(p).is_zero():
            return _result("presentation soundness", False,
                           f"{name} does not normalize to zero")
    # certification (raises on failure)
    presets = [suq2, qg.build_quantum_matrix_algebra(2),
               qg.build_quantum_matrix_algebra(3), s2q]
    try:
        for pres in presets:
            certify(pres, confluence=True)
    except ValueError as exc:
        return _result("presentation soundness", False, exc)
    # strategy independence of normal forms
    per = samples // len(presets)
    for pres in presets:
        for _ in range(per):
            p = _random_element(pres, rng)
            det = pres.normalize(p)
            rnd = pres.normalize(p, rng=rng)
            if det != rnd:
                return _result("presentation soundness", False,
                               f"strategy-dependent normal form in {pres.label}")
    return _result("presentation soundness", True)


def criterion_2(seed=0):
    """Hopf axioms, row unitarity, and det_q centrality."""
    rng = random.Random(seed)
    checks = []
    for label in ("suq2", "mq:2", "mq:3"):
        pres = qg.build_preset(label)
        checks += qg.verify_hopf_axioms(pres, max_degree=2, rng=rng, samples=5)
    checks += qg.verify_unitarity(qg.build_suq2())
    checks += qg.verify_unitarity(qg.build_suqn(3))
    checks += qg.verify_det_central(qg.build_quantum_matrix_algebra(2))
    checks += qg.verify_det_central(qg.build_quantum_matrix_algebra(3))
    bad = _first_failure(checks)
    return _result("hopf axioms and unitarity", bad is None,
                   bad and f"{bad['name']}: {bad['witness']}")


def criterion_3():
    """Exact gerbe identities: x, P, the loop, and the equator restriction."""
    s2q = qg.build_podles_sphere()
    x = gb.build_x_equator(s2q)
    checks = list(gb.verify_x_involution(x))
    checks += gb.verify_projection(gb.build_projection(x))
    checks += gb.verify_loop_unitary(gb.build_equator_loop(x))
    xe, _ = gb.build_x_extended(deformed=True)
    restricted = gb.restrict_to_equator(xe, s2q)
    target = gb.flip_conjugate(x)
    res = restricted.normalized().residual_against(target)
    checks.append({"name": "deformed restriction = flip conjugate",
                   "holds": not res, "witness": repr(res) if res else None})
    checks += gb.verify_x_involution(restricted)
    bad = _first_failure(checks)
    return _result("quantum gerbe identities", bad is None,
                   bad and f"{bad['name']}: {bad['witness']}")


def criterion_4():
    """Convention adjudication: antipode sign and the q -> 1/q exchange."""
    suqn2 = qg.build_suqn(2)
    b = suqn2.gen("g12")
    c = suqn2.gen("g21")
    want = -c.scale(LaurentScalar.q_power(1))
    got = suqn2.normalize(suqn2.apply_star(b))
    if suqn2.normalize(want) != got:
        return _result("convention adjudication", False,
                       f"b* != -q c under the selected antipode sign: {got!r}")
    p9 = qg.build_quantum_matrix_algebra(2, qg.EQ9)
    p4 = qg.build_quantum_matrix_algebra(2, qg.EQ4)
    if not qg.rules_related_by_q_inversion(p9, p4):
        return _result("convention adjudication", False,
                       "eq9 and eq4 rules not exchanged by q -> 1/q")
    return _result("convention adjudication", True)


def criterion_5(seed=0, samples=100):
    """Numeric q=1 oracle for the extended matrix: x* = x, x^2 = 1, x^2 != x."""
    rng = np.random.default_rng(seed)
    sq_minus_x = []
    for _ in range(samples):
        while True:
            g = cl.random_special_unitary(2, rng)
            a, b = g[0, 0], g[0, 1]
            c, d = g[1, 0], g[1, 1]
            f = np.sqrt(1 + ((b + c) / 2) ** 2 + 0j)
            if abs(f) > 0.3:  # away from b = +-i where f vanishes
                break
        x = np.array([[(b - c) / 2, d], [a, -(b - c) / 2]]) / f
        if np.linalg.norm(x.conj().T - x) > 1e-10:
            return _result("q=1 extension oracle", False, "x* != x at a sample point")
        if np.linalg.norm(x @ x - np.eye(2)) > 1e-10:
            return _result("q=1 extension oracle", False, "x^2 != 1 at a sample point")
        sq_minus_x.append(np.linalg.norm(x @ x - x))
    med = float(np.median(sq_minus_x))
    return _result("q=1 extension oracle", med > 0.1,
                   f"median |x^2 - x| = {med} not bounded away from 0")


def criterion_6(seed=0, samples=1000, contour_samples=25):
    """exp(log) = id over random (g, cut); contour log agrees with spectral."""
    from scipy.linalg import expm

    rng = np.random.default_rng(seed)
    worst_exp = 0.0
    worst_contour = 0.0
    done_contour = 0
    count = 0
    while count < samples:
        n = 2 + count % 2
        g = cl.random_special_unitary(n, rng)
        cut = cl.SpectralCut(rng.uniform(0, 2 * np.pi))
        if cl.spectral_gap(g, cut) <= 1e-3:
            continue
        count += 1
        X = cl.matrix_log_spectral(g, cut)
        worst_exp = max(worst_exp, np.linalg.norm(expm(X) - g))
        if done_contour < contour_samples:
            done_contour += 1
            Xc = cl.matrix_log_contour(g, cut, quad_points=4096)
            worst_contour = max(worst_contour, np.linalg.norm(Xc - X))
    ok = worst_exp < 1e-10 and worst_contour < 1e-6
    return _result("classical logarithms", ok,
                   f"exp-log error {worst_exp:.2e}, contour error {worst_contour:.2e}")


def criterion_7(seed=0, samples=100, grid=24):
    """Based transition loops and vanishing cocycle residuals, all variants."""
    rng = np.random.default_rng(seed)
    worst_based = 0.0
    worst_cocycle = 0.0
    count = 0
    while count < samples:
        n = 2 + count % 2
        g = cl.random_special_unitary(n, rng)
        cuts = [cl.SpectralCut(t) for t in np.sort(rng.uniform(0, 2 * np.pi, 3))]
        if min(cl.spectral_gap(g, c) for c in cuts) <= 1e-3:
            continue
        count += 1
        variant = cl.SECTION_VARIANTS[count % len(cl.SECTION_VARIANTS)]
        path = cl.transition_path(g, cuts[0], cuts[1], N=grid, variant=variant)
        eye = np.eye(n)
        worst_based = max(worst_based,
                          np.linalg.norm(path.mats[0] - eye),
                          np.linalg.norm(path.mats[-1] - eye))
        worst_cocycle = max(worst_cocycle,
                            cl.cocycle_residual(g, cuts, N=grid, variant=variant))
    ok = worst_based < 1e-10 and worst_cocycle < 1e-10
    return _result("transition and cocycle", ok,
                   f"basedness {worst_based:.2e}, cocycle {worst_cocycle:.2e}")


def criterion_8(grid=64):
    """Suspension degree 1 at grid 64 in under a minute; -1 when flipped."""
    t0 = time.monotonic()
    deg = cl.suspension_degree(grid)
    elapsed = time.monotonic() - t0
    flipped = cl.suspension_degree(grid, orientation=-1)
    ok = abs(deg - 1.0) < 0.05 and abs(flipped + 1.0) < 0.05 and elapsed < 60
    return _result("suspension degree", ok,
                   f"degree {deg:.4f}, flipped {flipped:.4f}, {elapsed:.1f}s")


def criterion_9(seed=0, samples=100):
    """Dirac family: exact g=1 spectrum, discretization match, window counts."""
    rng = np.random.default_rng(seed)
    for n in (2, 3):
        spec = cl.dirac_spectrum(np.eye(n), (-7, 7), "analytic").eigenvalues
        want = sorted([-2 * np.pi] * n + [0.0] * n + [2 * np.pi] * n)
        if len(spec) != 3 * n or max(abs(a - b) for a, b in zip(spec, want)) > 1e-12:
            return _result("dirac family", False, f"g=1 spectrum wrong for n={n}")
    g = cl.random_special_unitary(2, rng)
    analytic = cl.dirac_spectrum(g, (-60, 60), "analytic").eigenvalues
    fd = np.array(cl.dirac_spectrum(g, (-60, 60), "finite_difference",
                                    N=1024).eigenvalues)
    smallest = sorted(analytic, key=abs)[:10]
    fd_err = max(min(abs(fd - e)) for e in smallest)
    if fd_err >= 1e-2:
        return _result("dirac family", False,
                       f"finite-difference mismatch {fd_err:.2e}")
    count = 0
    while count < samples:
        n = 2 + count % 2
        g = cl.random_special_unitary(n, rng)
        angles = np.sort(np.angle(np.linalg.eigvals(g)) % (2 * np.pi))
        a, b = np.sort(rng.uniform(0, 2 * np.pi, 2))
        if min(np.min(np.abs(angles - t)) for t in (a, b)) < 1e-6 or a == b:
            continue
        count += 1
        match = cl.spectral_window_match(g, cl.SpectralCut(a), cl.SpectralCut(b))
        if not match["counts_equal"]:
            return _result("dirac family", False,
                           f"window count mismatch: {match}")
    return _result("dirac family", True)


def criterion_10(seed=0, samples=1000):
    """Parser round-trip and byte-stable seeded reports."""
    rng = random.Random(seed)
    suq2 = qg.build_suq2()
    for k in range(samples):
        p = suq2.normalize(_random_element(suq2, rng, max_degree=4))
        if p.is_zero():
            continue
        text = ps.format_expr(p, suq2)
        if ps.parse_expr(text, suq2) != p:
            return _result("parser and reports", False,
                           f"round-trip failure on {text!r}")
    dumps = []
    for _ in range(2):
        rep = Report("selftest-probe", algebra="suq2", inputs={"samples": 3},
                     seed=seed)
        check_rng = random.Random(seed)
        rep.add_checks(qg.verify_hopf_axioms(suq2, rng=check_rng, samples=3))
        d = rep.to_dict()
        validate_report(d)
        d.pop("timing_ms")
        import json
        dumps.append(json.dumps(d, sort_keys=True))
    if dumps[0] != dumps[1]:
        return _result("parser and reports", False,
                       "identical seed produced different reports")
    return _result("parser and reports", True)


CRITERIA = (
    ("1: presentation soundness", lambda seed: criterion_1(seed)),
    ("2: hopf axioms and unitarity", lambda seed: criterion_2(seed)),
    ("3: quantum gerbe identities", lambda seed: criterion_3()),
    ("4: convention adjudication", lambda seed: criterion_4()),
    ("5: q=1 extension oracle", lambda seed: criterion_5(seed)),
    ("6: classical logarithms", lambda seed: criterion_6(seed)),
    ("7: transition and cocycle", lambda seed: criterion_7(seed)),
    ("8: suspension degree", lambda seed: criterion_8()),
    ("9: dirac family", lambda seed: criterion_9(seed)),
    ("10: parser and reports", lambda seed: criterion_10(seed)),
)


def run_all(seed=0) -> Report:
    rep = Report("selftest", inputs={}, seed=seed)
    for label, fn in CRITERIA:
        r = fn(seed)
        rep.add(label, r["status"], r["witness"])
    return rep
