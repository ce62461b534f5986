"""Collective moments of a Dicke-sector state and the reduced one- and two-spin states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import raise2_elements
from .solver import GroundStateSolution

CLAMP_TOL = 1e-12
X_SHAPE_TOL = 1e-10


class PositivityError(ValueError):
    """Reduced state fails positivity beyond roundoff."""


@dataclass(frozen=True)
class CollectiveMoments:
    N: int
    sz: float
    sx2: float
    sy2: float
    sz2: float

    @property
    def S(self) -> float:
        return self.N / 2


@dataclass(frozen=True)
class TwoSpinXState:
    """rho_ij in the basis (uu, ud, du, dd): diag (v1, y, y, v2), ud-du coherence y, uu-dd coherence u."""

    v1: float
    v2: float
    y: float
    u: float

    def matrix(self) -> np.ndarray:
        v1, v2, y, u = self.v1, self.v2, self.y, self.u
        return np.array(
            [
                [v1, 0.0, 0.0, u],
                [0.0, y, y, 0.0],
                [0.0, y, y, 0.0],
                [u, 0.0, 0.0, v2],
            ]
        )

    def single_spin(self) -> "SingleSpinState":
        return SingleSpinState(p_up=self.v1 + self.y, m=self.v1 - self.v2)


@dataclass(frozen=True)
class SingleSpinState:
    p_up: float
    m: float

    def matrix(self) -> np.ndarray:
        return np.diag([self.p_up, 1.0 - self.p_up])


def moments_from_state(sol: GroundStateSolution) -> CollectiveMoments:
    v = np.asarray(sol.vector)
    m = sol.sector.m_values
    S = sol.sector.S
    w = v * v
    sz = float(w @ m)
    sz2 = float(w @ (m * m))
    # S(S+1) - M^2 = (S-M)(S+M) + S keeps the polarized end free of cancellation.
    perp = float(w @ ((S - m) * (S + m))) + S * float(w.sum())
    # <Sx^2 - Sy^2> = <S+^2 + S-^2>/2 = sum_k v_k v_{k+1} <M_k + 2|S+^2|M_k>
    diff = float((v[:-1] * v[1:]) @ raise2_elements(S, m[:-1])) if len(v) > 1 else 0.0
    return CollectiveMoments(N=sol.sector.N, sz=sz, sx2=0.5 * (perp + diff), sy2=0.5 * (perp - diff), sz2=sz2)


def _clamp(name: str, value: float) -> float:
    if value < -CLAMP_TOL:
        raise PositivityError(f"{name} = {value:.3e} is negative beyond roundoff")
    return 0.0 if value < 0.0 else value


def two_spin_state(m: CollectiveMoments) -> TwoSpinXState:
    N = m.N
    if N < 2:
        raise ValueError("two-spin state needs N >= 2")
    denom = 4.0 * N * (N - 1)
    base = N * N - 2 * N + 4 * m.sz2
    v1 = (base + 4 * (N - 1) * m.sz) / denom
    v2 = (base - 4 * (N - 1) * m.sz) / denom
    y = (N * N - 4 * m.sz2) / denom
    u = (m.sx2 - m.sy2) / (N * (N - 1))
    v1, v2, y, u = (_clamp(k, val) for k, val in (("v1", v1), ("v2", v2), ("y", y), ("u", u)))
    if u * u > v1 * v2 + CLAMP_TOL:
        raise PositivityError(f"u^2 = {u * u:.3e} exceeds v1*v2 = {v1 * v2:.3e}")
    return TwoSpinXState(v1=v1, v2=v2, y=y, u=u)


def partial_trace_oracle(
    psi: np.ndarray, N: int, pair: tuple[int, int] = (0, 1), check_symmetry: bool = True
) -> TwoSpinXState:
    """Two-spin marginal of a full-space state vector by direct partial trace.

    Basis convention matches ``build_full_space``: index bit 0 = up, site 0 leftmost.
    """
    if N > 10:
        raise ValueError("partial-trace oracle limited to N <= 10")
    rho = _pair_marginal(psi, N, pair)
    mask = np.ones((4, 4), dtype=bool)
    mask[np.diag_indices(4)] = False
    mask[0, 3] = mask[3, 0] = mask[1, 2] = mask[2, 1] = False
    if np.abs(rho[mask]).max() > X_SHAPE_TOL:
        raise ValueError(f"marginal is not an X state: max stray entry {np.abs(rho[mask]).max():.3e}")
    if check_symmetry:
        other = (N - 2, N - 1) if tuple(pair) != (N - 2, N - 1) else (0, 1)
        if np.abs(_pair_marginal(psi, N, other) - rho).max() > X_SHAPE_TOL:
            raise ValueError("two-spin marginal depends on the chosen pair")
    return TwoSpinXState(v1=rho[0, 0], v2=rho[3, 3], y=rho[1, 1], u=rho[0, 3])


def _pair_marginal(psi: np.ndarray, N: int, pair: tuple[int, int]) -> np.ndarray:
    i, j = pair
    t = np.moveaxis(np.asarray(psi).reshape((2,) * N), (i, j), (0, 1)).reshape(4, -1)
    return (t @ t.conj().T).real
