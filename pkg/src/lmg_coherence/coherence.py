"""l1-norm and relative-entropy coherence: generic definitions and X-state closed forms.

All entropies are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import SingleSpinState, TwoSpinXState

STATE_TOL = 1e-10


@dataclass(frozen=True)
class CoherencePair:
    l1: float
    rel_ent: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.l1, self.rel_ent)


def xlog2x(p):
    """p*log2(p) with 0*log 0 = 0; works elementwise on arrays."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = p[pos] * np.log2(p[pos])
    return out if out.ndim else float(out)


def binary_entropy(p):
    """H2(p) in bits, exactly 0 at p = 0 and p = 1.  Input is clipped to [0, 1]."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    out = 0.0 - (xlog2x(p) + xlog2x(1.0 - p))
    return out if np.ndim(out) else float(out)


def von_neumann_entropy(rho: np.ndarray) -> float:
    w = np.linalg.eigvalsh(rho)
    return float(-np.sum(xlog2x(np.clip(w, 0.0, None))))


def check_density_matrix(rho: np.ndarray, tol: float = STATE_TOL) -> None:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"trace {np.trace(rho).real:.12g} != 1")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")


def coherence_generic(rho: np.ndarray, basis: np.ndarray | None = None) -> CoherencePair:
    """Coherence of ``rho`` in the orthonormal basis given by the columns of ``basis``."""
    rho = np.asarray(rho)
    check_density_matrix(rho)
    if basis is not None:
        rho = basis.conj().T @ rho @ basis
    d = rho.shape[0]
    off = ~np.eye(d, dtype=bool)
    l1 = float(np.abs(rho[off]).sum())
    diag = np.clip(np.diag(rho).real, 0.0, None)
    rel = float(-np.sum(xlog2x(diag))) - von_neumann_entropy(rho)
    return CoherencePair(l1=l1, rel_ent=max(rel, 0.0))


def x_state_eigs(x: TwoSpinXState) -> tuple[float, float]:
    """Eigenvalues of the (uu, dd) block, larger first."""
    root = np.sqrt(4 * x.u ** 2 + (x.v1 - x.v2) ** 2)
    return 0.5 * (x.v1 + x.v2 + root), 0.5 * (x.v1 + x.v2 - root)


def coherence_two_spin(x: TwoSpinXState) -> CoherencePair:
    e1, e2 = x_state_eigs(x)
    l1 = 2 * (x.y + x.u)
    rel = 2 * x.y + xlog2x(e1) + xlog2x(max(e2, 0.0)) - xlog2x(x.v1) - xlog2x(x.v2)
    return CoherencePair(l1=float(l1), rel_ent=float(rel))


def max_single_spin_coherence(s: SingleSpinState) -> CoherencePair:
    """Largest coherence of a diagonal qubit state over all reference bases."""
    return CoherencePair(l1=abs(s.m), rel_ent=1.0 - binary_entropy(s.p_up))
