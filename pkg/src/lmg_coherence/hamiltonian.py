"""LMG Hamiltonian in the maximum-spin Dicke sector, plus a dense full-space oracle.

H = -(1/N) sum_{i<j} (sx_i sx_j + gamma sy_i sy_j) - h sum_i sz_i
  = -(2/N) (Sx^2 + gamma Sy^2) - 2 h Sz + (1 + gamma)/2        (lambda = 1)

The collective form only couples M to M +- 2, so the S = N/2 sector splits into
two parity blocks, each a real symmetric tridiagonal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.sparse as sp

Parity = Literal["M1", "M2"]
PARITIES: tuple[Parity, Parity] = ("M1", "M2")

FULL_SPACE_MAX_N = 12


@dataclass(frozen=True)
class ModelParams:
    N: int
    gamma: float
    h: float
    lam: float = 1.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N!r}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma!r}")
        if not self.h >= 0.0:
            raise ValueError(f"h must be nonnegative, got {self.h!r}")
        if self.lam != 1.0:
            raise ValueError("lambda is fixed to 1")

    @property
    def S(self) -> float:
        return self.N / 2


@dataclass(frozen=True)
class DickeSector:
    """One parity class of |S, M> states with S = N/2, M ascending in steps of 2.

    ``M1`` starts at -N/2, ``M2`` at -N/2 + 1.  M = N/2 sits in ``M1`` for even N
    and in ``M2`` for odd N.
    """

    N: int
    parity: Parity
    m_values: np.ndarray

    @property
    def S(self) -> float:
        return self.N / 2

    @property
    def dim(self) -> int:
        return len(self.m_values)

    @property
    def contains_top(self) -> bool:
        return self.dim > 0 and self.m_values[-1] == self.S


def dicke_sector(N: int, parity: Parity) -> DickeSector:
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}, got {parity!r}")
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    start = 0 if parity == "M1" else 1
    # 2M is integer; keep the arithmetic exact until the final division.
    twice_m = np.arange(-N + 2 * start, N + 1, 4, dtype=np.int64)
    m = twice_m / 2.0
    m.flags.writeable = False
    return DickeSector(N=N, parity=parity, m_values=m)


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    sector: DickeSector
    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def dim(self) -> int:
        return self.sector.dim

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out


def raise2_elements(S: float, m: np.ndarray) -> np.ndarray:
    """<S, M+2| S+^2 |S, M> for each M in ``m``."""
    c = S * (S + 1)
    a = np.clip(c - m * (m + 1), 0.0, None)
    b = np.clip(c - (m + 1) * (m + 2), 0.0, None)
    return np.sqrt(a) * np.sqrt(b)


def build_sector(params: ModelParams, parity: Parity) -> TridiagonalHamiltonian:
    N, g, h = params.N, params.gamma, params.h
    sector = dicke_sector(N, parity)
    m = sector.m_values
    S = sector.S
    diag = -(2.0 / N) * ((1 + g) / 2) * (S * (S + 1) - m * m) - 2 * h * m + (1 + g) / 2
    off = -(2.0 / N) * ((1 - g) / 4) * raise2_elements(S, m[:-1])
    diag.flags.writeable = False
    off.flags.writeable = False
    return TridiagonalHamiltonian(sector=sector, diag=diag, offdiag=off)


def _site_operator(op: np.ndarray, site: int, N: int) -> sp.csr_matrix:
    # site 0 is the leftmost tensor factor
    left = sp.identity(2 ** site, format="csr")
    right = sp.identity(2 ** (N - site - 1), format="csr")
    return sp.kron(sp.kron(left, sp.csr_matrix(op)), right, format="csr")


SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SY_REAL = np.array([[0.0, -1.0], [1.0, 0.0]])  # sigma_y = i * SY_REAL
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])


def build_full_space(params: ModelParams) -> np.ndarray:
    """Dense 2^N x 2^N Hamiltonian from the pairwise form, basis |up>=0, |down>=1.

    Test oracle only.  sigma_y^i sigma_y^j = -SY_REAL^i SY_REAL^j, so the matrix is real.
    """
    N, g, h = params.N, params.gamma, params.h
    if N > FULL_SPACE_MAX_N:
        raise ValueError(f"full-space oracle is capped at N={FULL_SPACE_MAX_N}, got N={N}")
    sx = [_site_operator(SX, i, N) for i in range(N)]
    sy = [_site_operator(SY_REAL, i, N) for i in range(N)]
    sz = [_site_operator(SZ, i, N) for i in range(N)]
    dim = 2 ** N
    H = sp.csr_matrix((dim, dim))
    for i in range(N):
        for j in range(i + 1, N):
            H = H - (sx[i] @ sx[j] - g * (sy[i] @ sy[j])) / N
    for i in range(N):
        H = H - h * sz[i]
    return H.toarray()
