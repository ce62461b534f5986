"""Analytic reference values.

* mean-field thermodynamic limit (TDL) for gamma < 1,
* the exactly solvable isotropic point gamma = 1 at any N,
* large-N asymptotics from continuous unitary transformations (CUT), consumed
  as given, and the finite-size scaling laws they imply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .coherence import CoherencePair, binary_entropy
from .states import TwoSpinXState

LN2 = math.log(2.0)
Phase = Literal["critical", "symmetric", "broken"]

MEASURES = ("c_l1", "c_r", "asc_l1", "asc_r", "msc_l1", "msc_r")


def phase_of(h: float) -> Phase:
    if h == 1.0:
        return "critical"
    return "symmetric" if h > 1.0 else "broken"


@dataclass(frozen=True)
class MeasureTriple:
    coherence: CoherencePair
    asc: CoherencePair
    msc: CoherencePair

    def as_dict(self) -> dict[str, float]:
        return {
            "c_l1": self.coherence.l1,
            "c_r": self.coherence.rel_ent,
            "asc_l1": self.asc.l1,
            "asc_r": self.asc.rel_ent,
            "msc_l1": self.msc.l1,
            "msc_r": self.msc.rel_ent,
        }


SYMMETRIC_CONSTANTS = MeasureTriple(CoherencePair(0.0, 0.0), CoherencePair(2.0, 2.0), CoherencePair(0.0, 0.0))


# ---------------------------------------------------------------------------
# thermodynamic limit


@dataclass(frozen=True)
class MeanFieldSolution:
    theta0: float
    phi0: float
    phase: Literal["symmetric", "broken"]
    phi_degenerate: bool


def mean_field_energy(theta, phi, gamma: float, h: float, N: int = 2):
    """<H> in the product state with polar angle theta and azimuth phi."""
    return -(N - 1) / 2 * np.sin(theta) ** 2 * (np.cos(phi) ** 2 + gamma * np.sin(phi) ** 2) - h * N * np.cos(theta)


def mean_field_minimize(gamma: float, h: float) -> MeanFieldSolution:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    if h >= 1.0:
        return MeanFieldSolution(0.0, 0.0, "symmetric", phi_degenerate=True)
    return MeanFieldSolution(math.acos(h), 0.0, "broken", phi_degenerate=gamma == 1.0)


def mean_field_grid_minimize(gamma: float, h: float, N: int = 1000, n: int = 2001) -> tuple[float, float]:
    """Brute-force minimum of the mean-field energy on a (theta, phi) grid with phi in [0, pi/2]."""
    th = np.linspace(0.0, math.pi, n)
    ph = np.linspace(0.0, math.pi / 2, 201)
    E = mean_field_energy(th[:, None], ph[None, :], gamma, h, N)
    i, j = np.unravel_index(int(np.argmin(E)), E.shape)
    return float(th[i]), float(ph[j])


def tdl_two_spin_state(h: float) -> TwoSpinXState:
    if h >= 1.0:
        return TwoSpinXState(1.0, 0.0, 0.0, 0.0)
    hp, hm = 1 + h, 1 - h
    return TwoSpinXState(hp * hp / 4, hm * hm / 4, (1 - h * h) / 4, (1 - h * h) / 4)


def tdl_single_spin(h: float) -> CoherencePair:
    if h >= 1.0:
        return CoherencePair(1.0, 1.0)
    return CoherencePair(h, 1.0 - binary_entropy((1 + h) / 2))


def tdl_measures(gamma: float, h: float) -> MeasureTriple:
    if not 0.0 <= gamma < 1.0:
        raise ValueError("tdl_measures needs 0 <= gamma < 1; use isotropic_measures at gamma = 1")
    if h < 0:
        raise ValueError("h must be nonnegative")
    if h >= 1.0:
        return SYMMETRIC_CONSTANTS
    hp, hm = 1 + h, 1 - h
    lam = 1 - h * h
    root = math.sqrt(1 + h ** 4 - h * h)
    c_r = 1 + (1 + h * h) / 2 * math.log2(1 + h * h) - sum(x * x * math.log2(x) / 2 for x in (hp, hm) if x > 0)
    return MeasureTriple(
        coherence=CoherencePair(lam, c_r),
        asc=CoherencePair(
            (1 - h * h + 3 * h + root) / 2,
            2 - binary_entropy(hp / 2) - binary_entropy((1 + root) / 2),
        ),
        msc=CoherencePair(math.sqrt(lam), binary_entropy(hp / 2)),
    )


def _golden_min(f, a: float, b: float, tol: float) -> float:
    g = (math.sqrt(5) - 1) / 2
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
    return 0.5 * (a + b)


def tdl_asc_r_minimum(tol: float = 1e-8) -> tuple[float, float]:
    """Location and value of the minimum of the TDL relative-entropy ASC over h in [0, 1]."""
    f = lambda h: tdl_measures(0.0, h).asc.rel_ent  # noqa: E731
    h_star = _golden_min(f, 0.0, 1.0 - 1e-12, tol)
    return h_star, f(h_star)


# ---------------------------------------------------------------------------
# isotropic point


@dataclass(frozen=True)
class IsotropicSolution:
    N: int
    h: float
    M0: float

    @property
    def n_plus(self) -> float:
        return self.N + 2 * self.M0

    @property
    def n_minus(self) -> float:
        return self.N - 2 * self.M0

    @property
    def x0(self) -> float:
        N, M0 = self.N, self.M0
        return math.sqrt(self.n_plus ** 2 * self.n_minus ** 2 + 16 * M0 * M0 * (N - 1) ** 2) / (2 * N * (N - 1))


def isotropic_solution(N: int, h: float) -> IsotropicSolution:
    """Ground state |S, M0> at gamma = 1.

    M0 is the integer (even N) or half-integer (odd N) nearest hN/2; exact
    midpoints round up.
    """
    if h >= 1.0:
        return IsotropicSolution(N, h, N / 2)
    target = h * N / 2
    if N % 2 == 0:
        M0 = math.floor(target + 0.5)
    else:
        M0 = math.floor(target) + 0.5
    return IsotropicSolution(N, h, min(float(M0), N / 2))


def isotropic_measures(N: int, h: float) -> MeasureTriple:
    if N < 2:
        raise ValueError("N must be >= 2")
    if h >= 1.0:
        return SYMMETRIC_CONSTANTS
    sol = isotropic_solution(N, h)
    M0, Np, Nm, x0 = sol.M0, sol.n_plus, sol.n_minus, sol.x0
    D = 2 * N * (N - 1)
    c = Np * Nm / D
    msc_l1 = math.sqrt(Np * Nm) / (2 * N - 2)
    msc_r = binary_entropy((Np - 1) / (2 * N - 2)) - binary_entropy(0.5 + math.sqrt(N * N + 12 * M0 * M0) / (4 * N - 4))
    asc_l1 = x0 + (Np * abs(1 - 2 * M0) + Nm * (N + 4 * M0 + 1)) / D
    asc_r = (
        2
        - 2 * binary_entropy((1 + x0) / 2)
        + binary_entropy(Np / (2 * N))
        - Np / (2 * N) * binary_entropy(Nm / (2 * N - 2))
        - Nm / (2 * N) * binary_entropy(Np / (2 * N - 2))
    )
    return MeasureTriple(CoherencePair(c, c), CoherencePair(asc_l1, asc_r), CoherencePair(msc_l1, msc_r))


# ---------------------------------------------------------------------------
# CUT asymptotics


@dataclass(frozen=True)
class CriticalCoefficients:
    gamma: float
    a_z: float
    a_xx: float
    a_yy: float
    a_zz: float


@dataclass(frozen=True)
class SymmetricPhaseCoefficients:
    gamma: float
    h: float

    @property
    def xi(self) -> float:
        return (self.h - 1) * (self.h - self.gamma)

    @property
    def b_z(self) -> float:
        return 1 + (1 + self.gamma - 2 * self.h) / (2 * math.sqrt(self.xi))

    @property
    def b_xx(self) -> float:
        return (self.h - self.gamma) / math.sqrt(self.xi)

    @property
    def b_yy(self) -> float:
        return 1 / self.b_xx

    @property
    def b_zz(self) -> float:
        return 2 * self.b_z

    @property
    def b0(self) -> float:
        return self.b_xx - self.b_yy


def symmetric_coefficients(gamma: float, h: float) -> SymmetricPhaseCoefficients:
    if not h > 1.0:
        raise ValueError(f"symmetric-phase expansion needs h > 1, got {h}")
    if not 0.0 <= gamma < 1.0:
        raise ValueError("symmetric-phase expansion needs 0 <= gamma < 1")
    return SymmetricPhaseCoefficients(gamma, h)


@dataclass(frozen=True)
class BrokenPhaseCoefficients:
    """1/N corrections in the broken phase and the measure-level constants built from them."""

    gamma: float
    h: float

    @property
    def lam(self) -> float:
        return 1 - self.h ** 2

    @property
    def c_z(self) -> float:
        return self.h * math.sqrt((1 - self.gamma) / self.lam)

    @property
    def c_xx(self) -> float:
        g, h = self.gamma, self.h
        return 2 + (g * h * h + g - 2) / math.sqrt(self.lam * (1 - g))

    @property
    def c_yy(self) -> float:
        # h / c_z, written so that h = 0 is finite
        return math.sqrt(self.lam / (1 - self.gamma))

    @property
    def c_zz(self) -> float:
        return 2 * self.h * self.c_z + math.sqrt(self.lam * (1 - self.gamma))

    @property
    def c0(self) -> float:
        return self.c_xx - self.c_yy

    @property
    def _root(self) -> float:
        return math.sqrt(self.lam ** 2 + self.h ** 2)

    @property
    def kappa_plus(self) -> float:
        return 1 + self._root

    @property
    def kappa_minus(self) -> float:
        return 1 - self._root

    @property
    def kappa1(self) -> float:
        h = self.h
        return self.c_zz + (self.lam * self.c0 + 4 * h * self.c_z) / (1 + h * h)

    @property
    def kappa2(self) -> float:
        return (self.h * self.c_z + self.lam * self.a_l1) / self._root

    @property
    def kappa3(self) -> float:
        return (2 * self.c_z - self.h * self.c_zz) / (2 * self.lam)

    @property
    def a_l1(self) -> float:
        return (self.c0 - self.c_zz) / 2

    @property
    def b_l1(self) -> float:
        return (self.kappa2 + 3 * self.c_z + self.c0) / 2

    @property
    def d_l1(self) -> float:
        return (self.c0 - self.c_zz) / (2 * math.sqrt(self.lam))

    @property
    def a_r(self) -> float:
        h, czz, cz = self.h, self.c_zz, self.c_z
        hp, hm = 1 + h, 1 - h
        return (
            self.kappa1 / 4 * (1 / LN2 + math.log2((1 + h * h) / 2))
            - czz / 2 * (1 + 1 / LN2)
            + (czz + 2 * cz) / 4 * math.log2(hp * hp / 4)
            + (czz - 2 * cz) / 4 * math.log2(hm * hm / 4)
        )

    @property
    def b_r(self) -> float:
        return self.kappa2 / 2 * math.log2(self.kappa_plus / self.kappa_minus)

    @property
    def d_r(self) -> float:
        h = self.h
        return self.kappa3 * math.log2((1 - h) / (1 + h)) + (2 * self.kappa3 * h + self.a_l1) / (2 * LN2)

    def measure_constants(self) -> dict[str, float]:
        return {
            "c_l1": self.a_l1,
            "c_r": self.a_r,
            "asc_l1": self.b_l1,
            "asc_r": self.b_r,
            "msc_l1": self.d_l1,
            "msc_r": self.d_r,
        }


def broken_coefficients(gamma: float, h: float) -> BrokenPhaseCoefficients:
    if not 0.0 < h < 1.0:
        raise ValueError(f"broken-phase expansion needs 0 < h < 1, got {h}")
    if not 0.0 <= gamma < 1.0:
        raise ValueError("broken-phase expansion needs 0 <= gamma < 1")
    return BrokenPhaseCoefficients(gamma, h)


# Leading exponents of the transformed measures, keyed by phase.
THEORY_SLOPES: dict[str, dict[str, float]] = {
    "critical": {"c_l1": -2 / 3, "c_r": -2 / 3, "asc_l1": -2 / 3, "asc_r": -2 / 3, "msc_l1": -1 / 3, "msc_r": -2 / 3},
    "symmetric": {"c_l1": -1.0, "c_r": -1.0, "asc_l1": -1.0, "asc_r": -1.0, "msc_l1": -0.5, "msc_r": -1.0},
    "broken": {m: -1.0 for m in MEASURES},
}


def cut_predicted_values(
    gamma: float, h: float, N: int, phase: Phase, critical: CriticalCoefficients | None = None
) -> dict[str, float]:
    """Leading-order finite-size prediction of each measure at size N."""
    if phase != phase_of(h):
        raise ValueError(f"phase {phase!r} inconsistent with h = {h}")
    if phase == "critical":
        if critical is None:
            raise ValueError("critical-point predictions need fitted CriticalCoefficients")
        a = critical
        n23 = N ** (2 / 3)
        return {
            "c_l1": a.a_xx / n23,
            "c_r": -a.a_zz / (2 * n23),
            "asc_l1": 2 + (4 * a.a_z + a.a_xx) / (2 * n23),
            "asc_r": 2 + (2 * a.a_z + a.a_zz) / (4 * n23 * LN2),
            "msc_l1": a.a_xx / (math.sqrt(-2 * a.a_z) * N ** (1 / 3)),
            "msc_r": -a.a_xx ** 2 / (4 * a.a_zz * n23 * LN2),
        }
    if phase == "symmetric":
        b = symmetric_coefficients(gamma, h)
        k = 2 * b.b0 - b.b_z
        return {
            "c_l1": k / N,
            "c_r": -b.b_z / N,
            "asc_l1": 2 + 2 * (b.b0 + b.b_z) / N,
            "asc_r": 2 + b.b_z / (N * LN2),
            "msc_l1": k / (math.sqrt(-2 * b.b_z) * math.sqrt(N)),
            "msc_r": -(k ** 2) / (8 * N * b.b_z * LN2),
        }
    c = broken_coefficients(gamma, h)
    tdl = tdl_measures(gamma, h).as_dict()
    return {m: tdl[m] + k / N for m, k in c.measure_constants().items()}
