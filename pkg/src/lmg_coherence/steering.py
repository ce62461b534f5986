"""Average (ASC) and maximal (MSC) steered coherence of two-qubit states.

Closed forms are specialised to the X states of the LMG ground state; the
definitional routines work on any two-qubit density matrix and serve as
oracles for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherence import CoherencePair, binary_entropy, check_density_matrix, coherence_generic
from .states import TwoSpinXState

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
# columns: eigenvectors of each Pauli
PAULI_BASES = {k: np.linalg.eigh(P)[1] for k, P in PAULI.items()}

P_MIN = 1e-14
MSC_DEGENERATE_TOL = 1e-14
GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class MeasurementDirection:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"polar angle {self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValueError(f"azimuth {self.phi} outside [0, 2pi)")

    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])


@dataclass(frozen=True)
class SteeredPair:
    asc: CoherencePair
    msc: CoherencePair


def _safe_ratio_entropy(num: float, den: float) -> float:
    return 0.0 if den <= 0.0 else den * binary_entropy(num / den)


def asc_closed_form(x: TwoSpinXState) -> CoherencePair:
    v1, v2, y, u = x.v1, x.v2, x.y, x.u
    dv2 = (v1 - v2) ** 2
    xs = (math.sqrt(dv2 + 4 * (y + u) ** 2), math.sqrt(dv2 + 4 * (y - u) ** 2))
    l1 = sum(0.5 * xi + abs(y - vi) for xi, vi in zip(xs, (v1, v2))) + abs(y + u) + abs(y - u)
    rel = 2.0 + binary_entropy(y + v1)
    for xi, vi in zip(xs, (v1, v2)):
        rel -= binary_entropy((1 + xi) / 2) + _safe_ratio_entropy(y, y + vi)
    return CoherencePair(l1=float(l1), rel_ent=float(rel))


def _collapse_on_b(rho: np.ndarray, proj_a: np.ndarray) -> tuple[float, np.ndarray | None]:
    r = rho.reshape(2, 2, 2, 2)  # (a, b, a', b')
    unnorm = np.einsum("ij,jbic->bc", proj_a, r)
    p = float(np.trace(unnorm).real)
    if p < P_MIN:
        return p, None
    out = unnorm / p
    return p, 0.5 * (out + out.conj().T)


def asc_definitional(rho: np.ndarray) -> CoherencePair:
    """Equal-weight average over Alice's Pauli measurements and Bob's two complementary bases."""
    rho = np.asarray(rho, dtype=complex)
    check_density_matrix(rho)
    l1 = rel = 0.0
    eye = np.eye(2)
    for i, Pi in PAULI.items():
        for a in (+1, -1):
            p, rb = _collapse_on_b(rho, 0.5 * (eye + a * Pi))
            if rb is None:
                continue
            for j in PAULI:
                if j == i:
                    continue
                c = coherence_generic(rb, PAULI_BASES[j])
                l1 += p * c.l1
                rel += p * c.rel_ent
    return CoherencePair(l1=0.5 * l1, rel_ent=0.5 * rel)


def msc_closed_form(x: TwoSpinXState) -> CoherencePair:
    c = x.v1 - x.v2
    den = 1.0 - c * c
    if den < MSC_DEGENERATE_TOL:
        return CoherencePair(0.0, 0.0)
    s = math.sqrt(den)
    l1 = 2 * (x.y + x.u) / s
    r11 = x.v1 / (1 + c) + x.y / (1 - c)
    r12 = (x.y + x.u) / s
    rel = binary_entropy(r11) - binary_entropy((1 + math.sqrt((1 - 2 * r11) ** 2 + 4 * r12 ** 2)) / 2)
    return CoherencePair(l1=float(l1), rel_ent=float(rel))


def optimal_msc_direction(x: TwoSpinXState) -> MeasurementDirection:
    """Alice's optimal projective direction for the X-state MSC (phi = 0 branch)."""
    return MeasurementDirection(theta=math.acos(min(1.0, max(-1.0, x.v2 - x.v1))), phi=0.0)


@dataclass(frozen=True)
class MSCSearch:
    l1: float
    rel_ent: float
    argmax_l1: tuple[float, float]
    argmax_rel_ent: tuple[float, float]

    @property
    def pair(self) -> CoherencePair:
        return CoherencePair(self.l1, self.rel_ent)


class _SteeringObjective:
    """Coherence of Bob's collapsed state in the eigenbasis of rho_B, as a function of Alice's direction."""

    def __init__(self, rho: np.ndarray):
        rho = np.asarray(rho, dtype=complex)
        check_density_matrix(rho)
        r = rho.reshape(2, 2, 2, 2)
        rho_b = np.einsum("abac->bc", r)
        w, U = np.linalg.eigh(rho_b)
        if w[1] - w[0] < 1e-12:
            raise ValueError("rho_B is degenerate; its eigenbasis is not unique")
        U = U[:, ::-1]  # larger population first
        rot = lambda m: U.conj().T @ m @ U  # noqa: E731
        self.b0 = rot(rho_b)
        self.bk = [rot(np.einsum("ij,jbic->bc", PAULI[k], r)) for k in "xyz"]

    def __call__(self, theta, phi):
        theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
        st = np.sin(theta)
        m = (st * np.cos(phi), st * np.sin(phi), np.cos(theta))
        X = 0.5 * (self.b0[..., None, None] * 1.0 + sum(mk * bk[..., None, None] for mk, bk in zip(m, self.bk)))
        # X has shape (2, 2, *grid)
        X = X.reshape(2, 2, *theta.shape)
        p = (X[0, 0] + X[1, 1]).real
        ok = p > P_MIN
        ps = np.where(ok, p, 1.0)
        a = X[0, 0].real / ps
        off = np.abs(X[0, 1]) / ps
        l1 = np.where(ok, 2 * off, 0.0)
        lam = 0.5 * (1 + np.sqrt((2 * a - 1) ** 2 + 4 * off ** 2))
        rel = np.where(ok, binary_entropy(a) - binary_entropy(lam), 0.0)
        return l1, rel


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200) -> tuple[float, float]:
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def msc_grid_oracle(rho: np.ndarray, n_theta: int = 361, n_phi: int = 720) -> MSCSearch:
    """Brute-force MSC over rank-1 projective measurements on A.

    Grid search over (theta, phi), then golden-section line searches in theta and
    phi around the best grid point.
    """
    obj = _SteeringObjective(rho)
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    T, P = np.meshgrid(thetas, phis, indexing="ij")
    grids = obj(T, P)
    dt, dp = thetas[1] - thetas[0], phis[1] - phis[0]
    results = []
    for k in range(2):
        vals = grids[k]
        i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
        t0, p0, best = float(thetas[i]), float(phis[j]), float(vals[i, j])
        for _ in range(2):
            t_new, v = _golden_max(lambda t: float(obj(t, p0)[k]), max(0.0, t0 - dt), min(math.pi, t0 + dt))
            if v >= best:
                t0, best = t_new, v
            p_new, v = _golden_max(lambda q: float(obj(t0, q)[k]), p0 - dp, p0 + dp)
            if v >= best:
                p0, best = p_new % (2 * math.pi), v
        results.append((best, (t0, p0)))
    return MSCSearch(
        l1=results[0][0], rel_ent=results[1][0], argmax_l1=results[0][1], argmax_rel_ent=results[1][1]
    )
