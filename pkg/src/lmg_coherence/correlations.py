"""Entanglement of formation and quantum discord of the two-spin state."""

from __future__ import annotations

import math

import numpy as np

from .coherence import binary_entropy, check_density_matrix, von_neumann_entropy, xlog2x
from .states import TwoSpinXState
from .steering import PAULI

_SYY = np.kron(PAULI["y"], PAULI["y"])


def concurrence_x(x: TwoSpinXState) -> float:
    return 2.0 * max(0.0, x.u - x.y, x.y - math.sqrt(max(x.v1 * x.v2, 0.0)))


def eof_from_concurrence(c: float) -> float:
    c = min(max(c, 0.0), 1.0)
    return float(binary_entropy((1 + math.sqrt(1 - c * c)) / 2))


def eof_x(x: TwoSpinXState) -> float:
    return eof_from_concurrence(concurrence_x(x))


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(rho)
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T


def wootters_concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of any two-qubit state.

    The lambdas (square roots of the spectrum of rho * flipped rho) are taken as
    singular values of sqrt(rho) sqrt(flipped rho), which avoids square roots of
    roundoff-level eigenvalues.
    """
    rho = np.asarray(rho, dtype=complex)
    check_density_matrix(rho)
    flipped = _SYY @ rho.conj() @ _SYY
    lam = np.linalg.svd(_psd_sqrt(rho) @ _psd_sqrt(flipped), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _qubit_entropy(a, off_abs):
    """Entropy of [[a, b], [b*, 1-a]] with |b| = off_abs."""
    r = np.sqrt((2 * a - 1) ** 2 + 4 * off_abs ** 2)
    return binary_entropy((1 + np.clip(r, 0.0, 1.0)) / 2)


class _ConditionalEntropy:
    """sum_k p_k S(rho_B|k) for a projective measurement on A along a Bloch direction."""

    def __init__(self, rho: np.ndarray):
        r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
        self.b0 = np.einsum("abac->bc", r)
        self.bk = [np.einsum("ij,jbic->bc", PAULI[k], r) for k in "xyz"]

    def __call__(self, theta, phi):
        theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
        st = np.sin(theta)
        m = (st * np.cos(phi), st * np.sin(phi), np.cos(theta))
        total = np.zeros(theta.shape)
        for sign in (+1.0, -1.0):
            X = 0.5 * (self.b0[..., None] + sign * sum(mk.reshape(-1) * bk[..., None] for mk, bk in zip(m, self.bk)))
            p = (X[0, 0] + X[1, 1]).real
            ok = p > 1e-14
            ps = np.where(ok, p, 1.0)
            s = _qubit_entropy(X[0, 0].real / ps, np.abs(X[0, 1]) / ps)
            total += np.where(ok, p * s, 0.0).reshape(theta.shape)
        return total


def _golden_min(f, lo, hi, tol=1e-10):
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def discord_matrix(rho: np.ndarray, n_theta: int = 181, n_phi: int = 360) -> float:
    """Quantum discord with projective measurement on A: I(A:B) - J(B|A).

    The conditional entropy is minimised on a (theta, phi) grid followed by
    golden-section line searches around the best point.
    """
    rho = np.asarray(rho, dtype=complex)
    check_density_matrix(rho)
    r = rho.reshape(2, 2, 2, 2)
    rho_a = np.einsum("abcb->ac", r)
    rho_b = np.einsum("abac->bc", r)
    s_a, s_b, s_ab = von_neumann_entropy(rho_a), von_neumann_entropy(rho_b), von_neumann_entropy(rho)
    f = _ConditionalEntropy(rho)
    th = np.linspace(0.0, math.pi, n_theta)
    ph = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    T, P = np.meshgrid(th, ph, indexing="ij")
    vals = f(T, P)
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    t0, p0, best = float(th[i]), float(ph[j]), float(vals[i, j])
    dt, dp = th[1] - th[0], ph[1] - ph[0]
    for _ in range(2):
        t, v = _golden_min(lambda t: float(f(t, p0)), max(0.0, t0 - dt), min(math.pi, t0 + dt))
        if v <= best:
            t0, best = t, v
        p, v = _golden_min(lambda q: float(f(t0, q)), p0 - dp, p0 + dp)
        if v <= best:
            p0, best = p, v
    mutual = s_a + s_b - s_ab
    classical = s_b - best
    return max(0.0, float(mutual - classical))


def discord_x(x: TwoSpinXState, n_theta: int = 181, n_phi: int = 360) -> float:
    return discord_matrix(x.matrix(), n_theta, n_phi)


def mutual_information(rho: np.ndarray) -> float:
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    rho_a = np.einsum("abcb->ac", r)
    rho_b = np.einsum("abac->bc", r)
    return von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - von_neumann_entropy(np.asarray(rho))


__all__ = [
    "concurrence_x",
    "eof_x",
    "eof_from_concurrence",
    "wootters_concurrence",
    "discord_x",
    "discord_matrix",
    "mutual_information",
    "xlog2x",
]
