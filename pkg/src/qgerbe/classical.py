"""Numeric verification of the undeformed SU(n) loop-group gerbe.

Spectral and contour matrix logarithms, the three local-section variants,
transition paths and their cocycle residuals, the basic SU(2) loop with its
suspension degree, and the twisted-boundary Dirac family.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import expm, schur

TAU = 2 * np.pi

UNITARY_TOL = 1e-10


# -- basic objects -----------------------------------------------------------

class SpectralCut:
    """A unit-circle point lambda = e^{i theta} excluded from the spectrum."""

    __slots__ = ("angle",)

    def __init__(self, angle: float):
        self.angle = float(angle) % TAU

    @property
    def point(self) -> complex:
        return np.exp(1j * self.angle)

    def __repr__(self):
        return f"SpectralCut(angle={self.angle:.6f})"


class PathSample:
    """Matrix path sampled on a uniform grid over [0, 1]."""

    __slots__ = ("ts", "mats")

    def __init__(self, ts, mats):
        self.ts = np.asarray(ts, dtype=float)
        self.mats = np.asarray(mats, dtype=complex)

    @property
    def grid_size(self):
        return len(self.ts) - 1

    def continuity_bound(self) -> float:
        """Recorded Lipschitz estimate L with ||M_{k+1} - M_k|| <= L / N."""
        diffs = np.linalg.norm(np.diff(self.mats, axis=0), axis=(1, 2))
        return float(diffs.max(initial=0.0) * self.grid_size)


class DiracSpectrum:
    __slots__ = ("window", "eigenvalues")

    def __init__(self, window, eigenvalues):
        self.window = (float(window[0]), float(window[1]))
        self.eigenvalues = sorted(float(e) for e in eigenvalues)

    def __repr__(self):
        return f"DiracSpectrum(window={self.window}, {len(self.eigenvalues)} eigenvalues)"


def check_unitary(g: np.ndarray, special: bool = False) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if g.shape != (n, n):
        raise ValueError("matrix must be square")
    if np.linalg.norm(g.conj().T @ g - np.eye(n)) > UNITARY_TOL:
        raise ValueError("matrix is not unitary within tolerance")
    if special and abs(np.linalg.det(g) - 1) > UNITARY_TOL:
        raise ValueError("matrix is not special unitary within tolerance")
    return g


def random_special_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish special unitary via QR of a complex Ginibre matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    q = q * np.linalg.det(q) ** (-1 / n)
    return q


def eigen_data(g: np.ndarray):
    """Unitary diagonalization g = Q diag(mu) Q* (Schur form; g is normal)."""
    T, Q = schur(np.asarray(g, dtype=complex), output="complex")
    return np.diag(T), Q


def branch_angle(z, cut: SpectralCut):
    """Angle of z measured in the branch (theta, theta + 2 pi) cut at lambda."""
    return cut.angle + (np.angle(z) - cut.angle) % TAU


def spectral_gap(g: np.ndarray, cut: SpectralCut) -> float:
    mu, _ = eigen_data(g)
    return float(np.min(np.abs(mu - cut.point)))


# -- logarithms --------------------------------------------------------------

def matrix_log_spectral(g: np.ndarray, cut: SpectralCut,
                        gap: float = 1e-8) -> np.ndarray:
    """X with exp(X) = g, eigen-angles of -iX in the open arc cut at lambda."""
    g = check_unitary(g)
    mu, Q = eigen_data(g)
    if np.min(np.abs(mu - cut.point)) <= gap:
        raise ValueError("cut point too close to an eigenvalue of g")
    angles = branch_angle(mu, cut)
    return (Q * (1j * angles)) @ Q.conj().T


def _radial_panels(r0: float, r1: float, min_width: float):
    """Panel breakpoints graded dyadically toward r = 1 from both sides."""
    left = [r0]
    w = 1.0 - r0
    while w / 2 > min_width:
        w /= 2
        left.append(1.0 - w)
    left.append(1.0)
    right = [1.0]
    w = r1 - 1.0
    ws = []
    while w / 2 > min_width:
        w /= 2
        ws.append(w)
    for w in reversed(ws):
        right.append(1.0 + w)
    right.append(r1)
    return left, right


def matrix_log_contour(g: np.ndarray, cut: SpectralCut,
                       quad_points: int = 1024, gap: float = 1e-8) -> np.ndarray:
    """(1 / 2 pi i) contour integral of log(z) (z - g)^-1 over a keyhole.

    Keyhole: outer circle radius 2, inner radius 1/2, joined along the ray
    through lambda; the log branch is cut along that ray.  The two radial
    sides are combined analytically (the branch jump is 2 pi i), leaving a
    resolvent integral along the ray, integrated with panels graded toward
    the unit circle.
    """
    g = check_unitary(g)
    if quad_points < 64:
        raise ValueError("need at least 64 quadrature points")
    if spectral_gap(g, cut) <= gap:
        raise ValueError("cut point too close to an eigenvalue of g")
    n = g.shape[0]
    theta = cut.angle
    eye = np.eye(n)

    def resolvent_sum(zs, ws, fs):
        res = np.linalg.inv(zs[:, None, None] * eye - g)
        return np.einsum("k,kij->ij", ws * fs, res)

    total = np.zeros((n, n), dtype=complex)
    # arcs at radii 2 (counterclockwise) and 1/2 (clockwise)
    m_arc = max(quad_points // 4, 32)
    xs, ws = leggauss(m_arc)
    for radius, orientation in ((2.0, 1.0), (0.5, -1.0)):
        phis = theta + (xs + 1) * np.pi  # map [-1, 1] -> [theta, theta + 2 pi]
        zs = radius * np.exp(1j * phis)
        logs = np.log(radius) + 1j * phis
        dz = 1j * zs * np.pi  # dz/dx
        total += orientation * resolvent_sum(zs, ws, logs * dz)
    # combined radial sides: -2 pi i * int_{1/2}^{2} (r e^{i theta} - g)^-1 e^{i theta} dr
    m_rad = max(quad_points // 2, 32)
    left, right = _radial_panels(0.5, 2.0, min_width=1e-4)
    panels = list(zip(left[:-1], left[1:])) + list(zip(right[:-1], right[1:]))
    m_panel = max(m_rad // len(panels), 4)
    xs, ws = leggauss(m_panel)
    ray = np.exp(1j * theta)
    radial = np.zeros((n, n), dtype=complex)
    for lo, hi in panels:
        rs = lo + (xs + 1) * (hi - lo) / 2
        wr = ws * (hi - lo) / 2
        radial += resolvent_sum(rs * ray, wr, np.full(rs.shape, ray, dtype=complex))
    total += -2j * np.pi * radial
    return total / (2j * np.pi)


# -- local sections and transition functions ---------------------------------

SECTION_VARIANTS = ("circle_contraction", "affine", "exponential")


def local_section(g: np.ndarray, cut: SpectralCut, t: float,
                  variant: str = "affine", gap: float = 1e-8) -> np.ndarray:
    """A point on the path from 1 (t=0) to g (t=1) inside the cut chart.

    exponential: exp(t log g).  affine: the straight-line contraction
    -(1-t) lambda + t g, with the prefix contraction of 1 to -lambda along
    (-lambda)^s concatenated on the first half of the parameter interval.
    circle_contraction: eigenvector-wise straight-line contraction of the
    branch angle toward the angle of the point 1.
    """
    g = check_unitary(g)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    if variant == "exponential":
        X = matrix_log_spectral(g, cut, gap=gap)
        return expm(t * X)
    if variant == "affine":
        lam = cut.point
        if t <= 0.5:
            # prefix: 1 -> -lambda along (-lambda)^s, s = 2t
            return np.exp(2 * t * np.log(-lam)) * np.eye(g.shape[0])
        s = 2 * t - 1
        return -(1 - s) * lam * np.eye(g.shape[0]) + s * g
    if variant == "circle_contraction":
        mu, Q = eigen_data(g)
        if np.min(np.abs(mu - cut.point)) <= gap:
            raise ValueError("cut point too close to an eigenvalue of g")
        beta = branch_angle(mu, cut) - cut.angle          # in (0, 2 pi)
        beta_one = (-cut.angle) % TAU                      # branch angle of 1
        angles = cut.angle + beta_one + t * (beta - beta_one)
        return (Q * np.exp(1j * angles)) @ Q.conj().T
    raise ValueError(f"unknown section variant {variant!r}")


def transition_path(g: np.ndarray, cut_a: SpectralCut, cut_b: SpectralCut,
                    N: int = 64, variant: str = "affine") -> PathSample:
    """phi(t) = psi_a(g)(t)^-1 psi_b(g)(t) on a uniform grid; a based loop."""
    ts = np.linspace(0.0, 1.0, N + 1)
    mats = []
    for t in ts:
        pa = local_section(g, cut_a, t, variant)
        pb = local_section(g, cut_b, t, variant)
        mats.append(np.linalg.solve(pa, pb))
    return PathSample(ts, mats)


def cocycle_residual(g: np.ndarray, cuts, N: int = 64,
                     variant: str = "affine") -> float:
    """max_t || phi_ab(t) phi_bc(t) - phi_ac(t) ||."""
    a, b, c = cuts
    pab = transition_path(g, a, b, N, variant)
    pbc = transition_path(g, b, c, N, variant)
    pac = transition_path(g, a, c, N, variant)
    prods = np.einsum("tij,tjk->tik", pab.mats, pbc.mats)
    return float(np.linalg.norm(prods - pac.mats, axis=(1, 2)).max())


# -- the basic SU(2) loop ----------------------------------------------------

class _Smoothing:
    """Monotone reparametrization with all derivatives vanishing at 0, 1/2, 1.

    Each half-interval carries the normalized integral of the bump
    exp(-1 / (s (1/2 - s))).
    """

    def __init__(self, samples: int = 1 << 14):
        s = np.linspace(0.0, 0.5, samples + 1)
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            vals = np.where((s > 0) & (s < 0.5),
                            np.exp(-1.0 / np.maximum(s * (0.5 - s), 1e-300)), 0.0)
        cumulative = np.concatenate(([0.0], np.cumsum((vals[1:] + vals[:-1]) / 2
                                                      * np.diff(s))))
        self._s = s
        self._bump = vals
        self._norm = cumulative[-1]
        self._cum = cumulative / self._norm  # rises 0 -> 1 over [0, 1/2]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        first = np.clip(t, 0.0, 0.5)
        second = np.clip(t - 0.5, 0.0, 0.5)
        return (0.5 * np.interp(first, self._s, self._cum)
                + 0.5 * np.interp(second, self._s, self._cum))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        half = np.where(t <= 0.5, t, t - 0.5)
        return 0.5 * np.interp(half, self._s, self._bump) / self._norm


smoothing = _Smoothing()


def su2_basic_loop(x3vec, t: float) -> np.ndarray:
    """The basic transition loop on SU(2), reparametrized by the smoothing.

    First half: cos(2 pi f) + i x sin(2 pi f) with x the traceless hermitian
    matrix of the unit 3-vector; second half: diag(e^{2 pi i f}, e^{-2 pi i f}).
    """
    x1, x2, x3 = x3vec
    if abs(x1 * x1 + x2 * x2 + x3 * x3 - 1.0) > 1e-8:
        raise ValueError("x3vec must be a unit 3-vector")
    f = float(smoothing(t))
    if t <= 0.5:
        x = np.array([[x3, x1 + 1j * x2], [x1 - 1j * x2, -x3]])
        return np.cos(TAU * f) * np.eye(2) + 1j * np.sin(TAU * f) * x
    return np.diag([np.exp(1j * TAU * f), np.exp(-1j * TAU * f)])


def suspension_degree(grid: int = 64, orientation: int = 1) -> float:
    """Degree of (x, t) -> basic_loop(x)(t) as a map S^2 x S^1 -> S^3.

    Midpoint rule over a (grid)^3 lattice in spherical angles and loop time;
    the integrand is the pulled-back S^3 volume form det[p, p_theta, p_phi,
    p_t] divided by 2 pi^2.  `orientation=-1` flips the loop (t -> 1 - t).
    """
    if grid < 32:
        raise ValueError("grid too coarse; need at least 32")
    th = (np.arange(grid) + 0.5) * np.pi / grid
    ph = (np.arange(grid) + 0.5) * TAU / grid
    ts = (np.arange(grid) + 0.5) / grid
    T, P, Tt = np.meshgrid(th, ph, ts, indexing="ij")
    if orientation == -1:
        time = 1.0 - Tt
        tsign = -1.0
    else:
        time = Tt
        tsign = 1.0

    f = smoothing(time)
    fp = smoothing.derivative(time) * tsign
    a = TAU * f
    ap = TAU * fp
    in_first = time <= 0.5

    # unit normal and its partials; frozen on the second (x-independent) half
    n1 = np.where(in_first, np.sin(T) * np.cos(P), 0.0)
    n2 = np.where(in_first, np.sin(T) * np.sin(P), 0.0)
    n3 = np.where(in_first, np.cos(T), 1.0)
    d1t = np.where(in_first, np.cos(T) * np.cos(P), 0.0)
    d2t = np.where(in_first, np.cos(T) * np.sin(P), 0.0)
    d3t = np.where(in_first, -np.sin(T), 0.0)
    d1p = np.where(in_first, -np.sin(T) * np.sin(P), 0.0)
    d2p = np.where(in_first, np.sin(T) * np.cos(P), 0.0)
    d3p = np.zeros_like(T)

    ca, sa = np.cos(a), np.sin(a)
    zeros = np.zeros_like(T)
    p = np.stack([ca, sa * n1, sa * n2, sa * n3], axis=-1)
    pth = np.stack([zeros, sa * d1t, sa * d2t, sa * d3t], axis=-1)
    pph = np.stack([zeros, sa * d1p, sa * d2p, sa * d3p], axis=-1)
    pt = np.stack([-ap * sa, ap * ca * n1, ap * ca * n2, ap * ca * n3], axis=-1)

    jac = np.linalg.det(np.stack([p, pth, pph, pt], axis=-2))
    cell = (np.pi / grid) * (TAU / grid) * (1.0 / grid)
    return float(jac.sum() * cell / (2 * np.pi ** 2))


# -- Dirac family ------------------------------------------------------------

def dirac_spectrum(g: np.ndarray, window, method: str = "analytic",
                   N: int = 1024) -> DiracSpectrum:
    """Spectrum of -i d/dx on [0, 1] with boundary condition psi(1) = g psi(0).

    analytic: {2 pi m + mu_i} with mu_i the eigen-angles of g in [0, 2 pi).
    finite_difference: central differences on N points with the twisted
    periodic closure, restricted to the window.
    """
    g = check_unitary(g)
    w0, w1 = float(window[0]), float(window[1])
    if not np.isfinite([w0, w1]).all() or w0 >= w1:
        raise ValueError("window must be a finite nonempty interval")
    n = g.shape[0]
    if method == "analytic":
        mu, _ = eigen_data(g)
        angles = np.angle(mu) % TAU
        eigs = []
        for ang in angles:
            m = int(np.ceil((w0 - ang) / TAU))
            while TAU * m + ang < w1:
                if TAU * m + ang > w0:
                    eigs.append(TAU * m + ang)
                m += 1
        return DiracSpectrum((w0, w1), eigs)
    if method == "finite_difference":
        if N < 256:
            raise ValueError("finite-difference grid needs N >= 256")
        h = 1.0 / N
        A = np.zeros((N * n, N * n), dtype=complex)
        eye = np.eye(n)
        for k in range(N):
            nxt = (k + 1) % N
            blk = g if nxt == 0 else eye
            A[k * n:(k + 1) * n, nxt * n:(nxt + 1) * n] += blk / (2 * h)
            A[nxt * n:(nxt + 1) * n, k * n:(k + 1) * n] -= blk.conj().T / (2 * h)
        eigs = np.linalg.eigvalsh(-1j * A)
        return DiracSpectrum((w0, w1), eigs[(eigs > w0) & (eigs < w1)])
    raise ValueError(f"unknown method {method!r}")


def spectral_window_match(g: np.ndarray, cut_a: SpectralCut, cut_b: SpectralCut,
                          tol: float = 1e-9):
    """Count match between Dirac eigenvalues in ]mu, mu'[ and eigenvalues of g
    in the arc ]lambda, lambda'[; returns both lists and the angle bijection."""
    g = check_unitary(g)
    mu0, mu1 = sorted((cut_a.angle, cut_b.angle))
    ev, _ = eigen_data(g)
    angles = np.sort(np.angle(ev) % TAU)
    if np.min(np.abs(angles - mu0)) < tol or np.min(np.abs(angles - mu1)) < tol:
        raise ValueError("an eigenvalue of g lies on a cut")
    in_arc = angles[(angles > mu0) & (angles < mu1)]
    dirac = dirac_spectrum(g, (mu0, mu1), method="analytic").eigenvalues
    match = len(in_arc) == len(dirac)
    bijection = [(float(a), float(d)) for a, d in zip(in_arc, dirac)]
    return {
        "g_eigen_angles_in_arc": [float(a) for a in in_arc],
        "dirac_eigenvalues_in_window": [float(d) for d in dirac],
        "counts_equal": bool(match),
        "bijection": bijection,
    }


def open_cover_violations(n: int, cuts, samples: int,
                          rng: np.random.Generator) -> int:
    """Random g in SU(n) must avoid at least one of the cover's cuts."""
    prod = np.prod([c.point for c in cuts])
    if abs(prod - 1) < 1e-9:
        raise ValueError("cover requires the product of the cut points != 1")
    bad = 0
    for _ in range(samples):
        g = random_special_unitary(n, rng)
        mu, _ = eigen_data(g)
        if all(np.min(np.abs(mu - c.point)) < 1e-9 for c in cuts):
            bad += 1
    return bad
