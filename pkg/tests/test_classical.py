"""Numeric gerbe verification: logs, sections, cocycles, degree, Dirac."""

import numpy as np
import pytest
from scipy.linalg import expm

from qgerbe import classical as cl


def _good_cut(g, rng, gap=1e-3):
    while True:
        cut = cl.SpectralCut(rng.uniform(0, 2 * np.pi))
        if cl.spectral_gap(g, cut) > gap:
            return cut


def test_unitarity_validation():
    with pytest.raises(ValueError):
        cl.check_unitary(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        cl.check_unitary(np.diag([1.0, -1.0]), special=True)


def test_random_special_unitary_is_special_unitary():
    rng = np.random.default_rng(0)
    for n in (2, 3, 4):
        g = cl.random_special_unitary(n, rng)
        cl.check_unitary(g, special=True)


def test_exp_log_identity():
    rng = np.random.default_rng(1)
    for k in range(100):
        g = cl.random_special_unitary(2 + k % 2, rng)
        cut = _good_cut(g, rng)
        X = cl.matrix_log_spectral(g, cut)
        assert np.linalg.norm(expm(X) - g) < 1e-10
        # eigen-angles of -iX land in the open branch at the cut
        angles = np.linalg.eigvalsh(-1j * X)
        assert np.all(angles > cut.angle - 1e-9)
        assert np.all(angles < cut.angle + 2 * np.pi + 1e-9)


def test_log_rejects_eigenvalue_on_the_cut():
    g = np.diag([1.0 + 0j, -1.0])
    with pytest.raises(ValueError):
        cl.matrix_log_spectral(g, cl.SpectralCut(np.pi))


def test_contour_log_matches_spectral():
    rng = np.random.default_rng(2)
    for k in range(10):
        g = cl.random_special_unitary(2 + k % 2, rng)
        cut = _good_cut(g, rng)
        X = cl.matrix_log_spectral(g, cut)
        Xc = cl.matrix_log_contour(g, cut, quad_points=4096)
        assert np.linalg.norm(Xc - X) < 1e-6


def test_sections_interpolate_identity_to_g():
    rng = np.random.default_rng(3)
    g = cl.random_special_unitary(3, rng)
    cut = _good_cut(g, rng)
    for variant in cl.SECTION_VARIANTS:
        s0 = cl.local_section(g, cut, 0.0, variant)
        s1 = cl.local_section(g, cut, 1.0, variant)
        assert np.linalg.norm(s0 - np.eye(3)) < 1e-10, variant
        assert np.linalg.norm(s1 - g) < 1e-10, variant


def test_section_variants_differ_in_the_interior():
    rng = np.random.default_rng(4)
    g = cl.random_special_unitary(2, rng)
    cut = _good_cut(g, rng)
    mids = [cl.local_section(g, cut, 0.7, v) for v in cl.SECTION_VARIANTS]
    assert np.linalg.norm(mids[0] - mids[1]) > 1e-3
    assert np.linalg.norm(mids[0] - mids[2]) > 1e-3


def test_transition_paths_are_based_loops():
    rng = np.random.default_rng(5)
    for k in range(6):
        n = 2 + k % 2
        g = cl.random_special_unitary(n, rng)
        a, b = _good_cut(g, rng), _good_cut(g, rng)
        variant = cl.SECTION_VARIANTS[k % 3]
        path = cl.transition_path(g, a, b, N=32, variant=variant)
        eye = np.eye(n)
        assert np.linalg.norm(path.mats[0] - eye) < 1e-10
        assert np.linalg.norm(path.mats[-1] - eye) < 1e-10
        assert path.continuity_bound() < 1e3


def test_cocycle_residual_vanishes():
    rng = np.random.default_rng(6)
    for k in range(6):
        n = 2 + k % 2
        g = cl.random_special_unitary(n, rng)
        cuts = tuple(_good_cut(g, rng) for _ in range(3))
        variant = cl.SECTION_VARIANTS[k % 3]
        assert cl.cocycle_residual(g, cuts, N=16, variant=variant) < 1e-10


def test_smoothing_boundary_values():
    f = cl.smoothing
    assert f(0.0) == 0.0
    assert abs(f(0.5) - 0.5) < 1e-12
    assert abs(f(1.0) - 1.0) < 1e-12
    for t in (0.0, 0.5, 1.0):
        assert abs(f.derivative(t)) < 1e-12
    ts = np.linspace(0, 1, 201)
    assert np.all(np.diff(f(ts)) >= 0)


def test_basic_loop_unitary_based_continuous():
    x3 = (0.6, 0.0, 0.8)
    for t in np.linspace(0, 1, 21):
        U = cl.su2_basic_loop(x3, t)
        assert np.linalg.norm(U.conj().T @ U - np.eye(2)) < 1e-12
        assert abs(np.linalg.det(U) - 1) < 1e-12
    assert np.linalg.norm(cl.su2_basic_loop(x3, 0.0) - np.eye(2)) < 1e-12
    assert np.linalg.norm(cl.su2_basic_loop(x3, 1.0) - np.eye(2)) < 1e-12
    left = cl.su2_basic_loop(x3, 0.5 - 1e-9)
    right = cl.su2_basic_loop(x3, 0.5 + 1e-9)
    assert np.linalg.norm(left - right) < 1e-6


def test_suspension_degree():
    deg = cl.suspension_degree(48)
    assert abs(deg - 1.0) < 0.05
    assert abs(cl.suspension_degree(48, orientation=-1) + 1.0) < 0.05


def test_dirac_analytic_examples():
    spec = cl.dirac_spectrum(np.eye(2), (-7, 7)).eigenvalues
    want = sorted([-2 * np.pi, -2 * np.pi, 0, 0, 2 * np.pi, 2 * np.pi])
    assert np.allclose(spec, want, atol=1e-12)
    spec = cl.dirac_spectrum(np.diag([1j, -1j]), (0, 2 * np.pi)).eigenvalues
    assert np.allclose(spec, [np.pi / 2, 3 * np.pi / 2], atol=1e-12)


def test_dirac_finite_difference_converges():
    rng = np.random.default_rng(7)
    g = cl.random_special_unitary(2, rng)
    analytic = cl.dirac_spectrum(g, (-60, 60), "analytic").eigenvalues
    fd = np.array(cl.dirac_spectrum(g, (-60, 60), "finite_difference",
                                    N=1024).eigenvalues)
    for e in sorted(analytic, key=abs)[:10]:
        assert min(abs(fd - e)) < 1e-2


def test_dirac_spectrum_invariant_under_conjugation():
    rng = np.random.default_rng(8)
    g = cl.random_special_unitary(3, rng)
    u = cl.random_special_unitary(3, rng)
    s1 = cl.dirac_spectrum(g, (-10, 10)).eigenvalues
    s2 = cl.dirac_spectrum(u @ g @ u.conj().T, (-10, 10)).eigenvalues
    assert np.allclose(s1, s2, atol=1e-9)


def test_spectral_window_match():
    m = cl.spectral_window_match(np.diag([1j, -1j]),
                                 cl.SpectralCut(0.1), cl.SpectralCut(3.0))
    assert m["counts_equal"]
    assert np.allclose(m["g_eigen_angles_in_arc"], [np.pi / 2])
    assert np.allclose(m["dirac_eigenvalues_in_window"], [np.pi / 2])
    # empty arc between adjacent cuts
    m = cl.spectral_window_match(np.diag([1j, -1j]),
                                 cl.SpectralCut(0.1), cl.SpectralCut(0.2))
    assert m["counts_equal"]
    assert m["g_eigen_angles_in_arc"] == []


def test_spectral_window_match_randomized():
    rng = np.random.default_rng(9)
    done = 0
    while done < 30:
        n = 2 + done % 2
        g = cl.random_special_unitary(n, rng)
        a, b = np.sort(rng.uniform(0, 2 * np.pi, 2))
        try:
            m = cl.spectral_window_match(g, cl.SpectralCut(a), cl.SpectralCut(b))
        except ValueError:
            continue
        assert m["counts_equal"]
        done += 1


def test_open_cover_property():
    rng = np.random.default_rng(10)
    cuts = [cl.SpectralCut(t) for t in (0.5, 2.0, 4.0)]
    assert cl.open_cover_violations(3, cuts, samples=200, rng=rng) == 0
    bad = [cl.SpectralCut(0.0), cl.SpectralCut(2 * np.pi)]
    with pytest.raises(ValueError):
        cl.open_cover_violations(2, bad, samples=1, rng=rng)
