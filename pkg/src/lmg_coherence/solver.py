"""Lowest eigenpair of a real symmetric tridiagonal block.

Sturm-sequence bisection isolates the smallest eigenvalue, inverse iteration
recovers the vector.  Memory is O(dim), which keeps N = 2^16 (dim ~ 32769)
cheap.  Blocks smaller than ``DENSE_CUTOFF`` go through a dense eigensolver.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.linalg import solve_banded

from .hamiltonian import PARITIES, DickeSector, ModelParams, TridiagonalHamiltonian, build_sector

log = logging.getLogger(__name__)

DENSE_CUTOFF = 64
BISECTION_RTOL = 1e-13
MAX_BISECTION_STEPS = 200
MAX_INVERSE_SWEEPS = 50
RESIDUAL_RTOL = 1e-10
TIE_RTOL = 1e-10


class SolverError(RuntimeError):
    """Eigensolver did not reach its tolerance within the iteration cap."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class GroundStateSolution:
    energy: float
    vector: np.ndarray
    sector: DickeSector
    residual: float

    @property
    def N(self) -> int:
        return self.sector.N


@njit(cache=True)
def _sturm_count(d, e2, x, pivmin):
    n = d.shape[0]
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _bisect_lowest(d, e2, lo, hi, rtol, pivmin, max_steps):
    steps = 0
    while steps < max_steps:
        tol = rtol * max(abs(lo), abs(hi), 1.0)
        if hi - lo <= tol:
            return lo, hi, steps, True
        mid = 0.5 * (lo + hi)
        if _sturm_count(d, e2, mid, pivmin) >= 1:
            hi = mid
        else:
            lo = mid
        steps += 1
    return lo, hi, steps, False


def sturm_count(H: TridiagonalHamiltonian, x: float) -> int:
    """Number of eigenvalues of ``H`` strictly below ``x``."""
    d = np.ascontiguousarray(H.diag, dtype=np.float64)
    e2 = np.ascontiguousarray(H.offdiag, dtype=np.float64) ** 2
    return int(_sturm_count(d, e2, float(x), _pivmin(e2)))


def _pivmin(e2: np.ndarray) -> float:
    return np.finfo(float).tiny * max(1.0, float(e2.max()) if e2.size else 1.0)


def _gershgorin(H: TridiagonalHamiltonian) -> tuple[float, float]:
    r = np.zeros(H.dim)
    a = np.abs(H.offdiag)
    r[:-1] += a
    r[1:] += a
    return float((H.diag - r).min()), float((H.diag + r).max())


def _fix_sign(v: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(np.abs(v) > 1e-12)
    if idx.size and v[idx[0]] < 0:
        v = -v
    return v


def ground_state(H: TridiagonalHamiltonian) -> GroundStateSolution:
    n = H.dim
    if not np.any(H.offdiag):
        # Diagonal block: exact basis vector; ties go to the largest M.
        k = n - 1 - int(np.argmin(H.diag[::-1]))
        v = np.zeros(n)
        v[k] = 1.0
    elif n < DENSE_CUTOFF:
        w, V = np.linalg.eigh(H.dense())
        v = V[:, 0].copy()
    else:
        v = _bisection_inverse_iteration(H)
    v = _fix_sign(v / np.linalg.norm(v))
    Hv = H.matvec(v)
    energy = float(v @ Hv)
    residual = float(np.linalg.norm(Hv - energy * v))
    if residual > RESIDUAL_RTOL * max(1.0, abs(energy)):
        raise SolverError(f"residual {residual:.3e} above tolerance for dim={n}", residual)
    v.flags.writeable = False
    return GroundStateSolution(energy=energy, vector=v, sector=H.sector, residual=residual)


def _bisection_inverse_iteration(H: TridiagonalHamiltonian) -> np.ndarray:
    d = np.ascontiguousarray(H.diag, dtype=np.float64)
    e = np.ascontiguousarray(H.offdiag, dtype=np.float64)
    e2 = e * e
    lo, hi = _gershgorin(H)
    lo, hi, steps, ok = _bisect_lowest(d, e2, lo, hi, BISECTION_RTOL, _pivmin(e2), MAX_BISECTION_STEPS)
    if not ok:
        raise SolverError(f"bisection did not converge in {MAX_BISECTION_STEPS} steps (bracket {lo}, {hi})")
    log.debug("bisection: %d steps, bracket [%r, %r]", steps, lo, hi)

    # Shift just below the spectrum: H - shift is positive definite, so the solves are stable.
    shift = lo - BISECTION_RTOL * max(1.0, abs(lo))
    ab = np.zeros((3, len(d)))
    ab[0, 1:] = e
    ab[1, :] = d - shift
    ab[2, :-1] = e
    v = np.ones(len(d)) / np.sqrt(len(d))
    tol = RESIDUAL_RTOL * max(1.0, abs(lo))
    residual = prev = np.inf
    for sweep in range(MAX_INVERSE_SWEEPS):
        v = solve_banded((1, 1), ab, v, overwrite_b=True, check_finite=False)
        v /= np.linalg.norm(v)
        Hv = H.matvec(v)
        residual = float(np.linalg.norm(Hv - (v @ Hv) * v))
        # keep sweeping until the residual stops improving (roundoff floor)
        if residual <= tol and residual > 0.5 * prev:
            break
        prev = residual
    if residual > tol:
        raise SolverError(f"inverse iteration stalled at residual {residual:.3e}", residual)
    return v


def global_ground_state(params: ModelParams) -> GroundStateSolution:
    """Lower of the two parity-block ground states.

    Near-ties (relative 1e-10) go to the block containing M = N/2.
    """
    sols = [ground_state(build_sector(params, p)) for p in PARITIES]
    a, b = sols
    if abs(a.energy - b.energy) <= TIE_RTOL * max(1.0, abs(a.energy)):
        return a if a.sector.contains_top else b
    return a if a.energy < b.energy else b
