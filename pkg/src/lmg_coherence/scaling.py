"""Finite-size scaling: log-log slopes, critical coefficients, broken-phase 1/N constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from typing import Literal, Sequence

import numpy as np

from .baselines import (
    MEASURES,
    THEORY_SLOPES,
    CriticalCoefficients,
    broken_coefficients,
    phase_of,
    tdl_measures,
    tdl_single_spin,
)
from .hamiltonian import ModelParams
from .pipeline import PointResult, evaluate_point, measures_of, parallel_map
from .solver import global_ground_state
from .states import CollectiveMoments, moments_from_state, two_spin_state

Transform = Literal["raw", "two_minus", "minus_two", "tdl_minus", "minus_tdl"]

DEFAULT_N_LIST = tuple(2 ** k for k in range(8, 17))

# Positive quantity plotted for each measure, per phase.
TRANSFORMS: dict[str, dict[str, Transform]] = {
    "critical": {
        "c_l1": "raw", "c_r": "raw", "asc_l1": "two_minus", "asc_r": "two_minus", "msc_l1": "raw", "msc_r": "raw",
    },
    "symmetric": {
        "c_l1": "raw", "c_r": "raw", "asc_l1": "minus_two", "asc_r": "two_minus", "msc_l1": "raw", "msc_r": "raw",
    },
    "broken": {
        "c_l1": "tdl_minus", "c_r": "tdl_minus", "asc_l1": "minus_tdl", "asc_r": "minus_tdl",
        "msc_l1": "tdl_minus", "msc_r": "tdl_minus",
    },
}


class ScalingError(ValueError):
    pass


def apply_transform(values: np.ndarray, transform: Transform, tdl: float | None = None) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if transform == "raw":
        return v
    if transform == "two_minus":
        return 2.0 - v
    if transform == "minus_two":
        return v - 2.0
    if tdl is None:
        raise ScalingError(f"transform {transform!r} needs a thermodynamic-limit value")
    return tdl - v if transform == "tdl_minus" else v - tdl


@dataclass(frozen=True)
class MeasureSeries:
    measure: str
    phase: str
    gamma: float
    h: float
    N: np.ndarray
    values: np.ndarray
    transform: Transform = "raw"
    tdl: float | None = None

    def __post_init__(self):
        if np.any(np.diff(self.N) <= 0):
            raise ScalingError("N must be strictly increasing")
        if len(self.N) != len(self.values):
            raise ScalingError("N and values differ in length")

    @property
    def transformed(self) -> np.ndarray:
        return apply_transform(self.values, self.transform, self.tdl)


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    local_slopes: np.ndarray
    residual_rms: float
    window: np.ndarray

    @property
    def local_slope(self) -> float:
        """Slope over the last interval of the series."""
        return float(self.local_slopes[-1])


def fit_slope(series: MeasureSeries, window: int = 4) -> ScalingFit:
    """Least-squares line through (log2 N, log2 transformed value) on the last ``window`` points."""
    y = series.transformed
    if np.any(~(y > 0)):
        bad = series.N[~(y > 0)]
        raise ScalingError(f"{series.measure}: transformed values nonpositive at N={bad.tolist()} ({series.transform})")
    if window < 3 or len(y) < window:
        raise ScalingError(f"need at least 3 points in the fit window, have {min(window, len(y))}")
    lx, ly = np.log2(series.N.astype(float)), np.log2(y)
    local = np.diff(ly) / np.diff(lx)
    wx, wy = lx[-window:], ly[-window:]
    slope, intercept = np.polyfit(wx, wy, 1)
    resid = wy - (slope * wx + intercept)
    return ScalingFit(
        slope=float(slope),
        intercept=float(intercept),
        local_slopes=local,
        residual_rms=float(np.sqrt(np.mean(resid ** 2))),
        window=series.N[-window:],
    )


def _point(gamma: float, h: float, N: int) -> PointResult:
    return evaluate_point(ModelParams(N, gamma, h))


def sweep_sizes(gamma: float, h: float, n_list: Sequence[int] = DEFAULT_N_LIST, jobs: int | None = 1) -> list[PointResult]:
    return parallel_map(partial(_point, gamma, h), sorted(n_list), jobs)


def measure_series(
    gamma: float, h: float, n_list: Sequence[int] = DEFAULT_N_LIST, jobs: int | None = 1,
    points: list[PointResult] | None = None,
) -> dict[str, MeasureSeries]:
    """Series of all six two-spin measures, with the phase-appropriate transform attached."""
    phase = phase_of(h)
    points = points if points is not None else sweep_sizes(gamma, h, n_list, jobs)
    N = np.array([p.params.N for p in points])
    tdl = tdl_measures(gamma, h).as_dict() if phase == "broken" else {}
    out = {}
    for m in MEASURES:
        vals = np.array([p.measures.as_dict()[m] for p in points])
        out[m] = MeasureSeries(m, phase, gamma, h, N, vals, TRANSFORMS[phase][m], tdl.get(m))
    return out


@dataclass(frozen=True)
class ScalingReport:
    measure: str
    transform: str
    slope: float
    local_slope: float
    theory_slope: float
    tolerance: float
    residual_rms: float

    @property
    def passed(self) -> bool:
        return abs(self.local_slope - self.theory_slope) <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "transform": self.transform,
            "slope": self.slope,
            "local_slope": self.local_slope,
            "theory_slope": self.theory_slope,
            "residual_rms": self.residual_rms,
            "pass": self.passed,
        }


def scaling_report(
    series: dict[str, MeasureSeries], window: int = 4, tolerance: float = 0.07, theory: dict[str, float] | None = None,
) -> dict[str, ScalingReport]:
    out = {}
    for m, s in series.items():
        f = fit_slope(s, window)
        expected = theory[m] if theory is not None else THEORY_SLOPES[s.phase][m]
        out[m] = ScalingReport(m, s.transform, f.slope, f.local_slope, expected, tolerance, f.residual_rms)
    return out


# ---------------------------------------------------------------------------
# critical point


def critical_coefficients_from_moments(m: CollectiveMoments, gamma: float) -> CriticalCoefficients:
    N = m.N
    n23 = N ** (2 / 3)
    return CriticalCoefficients(
        gamma=gamma,
        a_z=(2 * m.sz / N - 1 - 1 / N) * n23,
        a_xx=4 * m.sx2 / N ** 2 * n23,
        a_yy=4 * m.sy2 / N ** 2 * N ** (4 / 3),
        a_zz=(4 * m.sz2 / N ** 2 - 1 - 2 / N) * n23,
    )


def extract_critical_coefficients(gamma: float, N: int = 2 ** 16) -> CriticalCoefficients:
    sol = global_ground_state(ModelParams(N, gamma, 1.0))
    return critical_coefficients_from_moments(moments_from_state(sol), gamma)


# Reference values of the critical coefficients (N = 2^16), keyed by gamma.
REFERENCE_CRITICAL = {
    0.0: CriticalCoefficients(0.0, -0.4599, 0.9188, 1.1144, -0.9195),
    0.25: CriticalCoefficients(0.25, -0.4182, 0.8354, 1.2257, -0.8362),
    0.5: CriticalCoefficients(0.5, -0.3659, 0.7307, 1.4017, -0.7315),
    0.75: CriticalCoefficients(0.75, -0.2913, 0.5813, 1.7621, -0.5824),
}


# ---------------------------------------------------------------------------
# broken phase


def cut_broken_moments(gamma: float, h: float, N: int) -> CollectiveMoments:
    """Collective moments implied by the broken-phase 1/N expansion at size N."""
    c = broken_coefficients(gamma, h)
    q = N * N / 4
    return CollectiveMoments(
        N=N,
        sz=N / 2 * (h + c.c_z / N),
        sx2=q * (c.lam + c.c_xx / N),
        sy2=q * c.c_yy / N,
        sz2=q * (h * h + c.c_zz / N),
    )


def cut_implied_constants(gamma: float, h: float, N: int = 2 ** 20) -> dict[str, float]:
    """N * (measure - TDL) with the moment expansion pushed through the exact closed forms."""
    x = two_spin_state(cut_broken_moments(gamma, h, N))
    vals = measures_of(x).as_dict()
    tdl = tdl_measures(gamma, h).as_dict()
    return {m: N * (vals[m] - tdl[m]) for m in MEASURES}


@dataclass
class BrokenConstant:
    measure: str
    N: np.ndarray
    scaled: np.ndarray  # N * (value - TDL)
    formula: float
    cut_implied: float
    rtol: float = 0.05
    converged: bool = field(init=False)

    def __post_init__(self):
        d = np.abs(np.diff(self.scaled))
        self.converged = bool(len(d) >= 2 and np.all(np.diff(d) < 0))

    @property
    def limit(self) -> float:
        return float(self.scaled[-1])

    @property
    def matches_formula(self) -> bool:
        return abs(self.limit - self.formula) <= self.rtol * abs(self.formula)

    @property
    def direction_ok(self) -> bool:
        """Coherence and MSC approach the TDL from below, ASC from above."""
        if self.measure.startswith("asc"):
            return bool(np.all(self.scaled > 0))
        return bool(np.all(self.scaled < 0))


class DivergentSequenceError(ScalingError):
    pass


def scaled_deviation(N: np.ndarray, values: np.ndarray, tdl: float) -> np.ndarray:
    """N * (value - tdl); constant in N for an exact 1/N correction."""
    return np.asarray(N, dtype=float) * (np.asarray(values, dtype=float) - tdl)


def broken_phase_constants(
    gamma: float, h: float, n_list: Sequence[int] = DEFAULT_N_LIST, jobs: int | None = 1,
    points: list[PointResult] | None = None, strict: bool = False,
) -> dict[str, BrokenConstant]:
    """N * (C(N) - C_TDL) per measure, compared with the closed-form 1/N constants.

    With ``strict`` a sequence whose successive differences do not shrink raises
    ``DivergentSequenceError``.
    """
    if not 0.0 < h < 1.0:
        raise ScalingError("broken-phase constants need 0 < h < 1")
    series = measure_series(gamma, h, n_list, jobs, points)
    formula = broken_coefficients(gamma, h).measure_constants()
    implied = cut_implied_constants(gamma, h)
    tdl = tdl_measures(gamma, h).as_dict()
    out = {}
    for m, s in series.items():
        scaled = scaled_deviation(s.N, s.values, tdl[m])
        out[m] = BrokenConstant(m, s.N, scaled, formula[m], implied[m])
        if strict and not out[m].converged:
            raise DivergentSequenceError(f"{m}: N*(C - C_TDL) does not settle: {scaled[-3:]}")
    return out


# ---------------------------------------------------------------------------
# single spin


def single_spin_series(
    gamma: float, h: float, n_list: Sequence[int] = DEFAULT_N_LIST, jobs: int | None = 1,
    points: list[PointResult] | None = None,
) -> dict[str, MeasureSeries]:
    phase = phase_of(h)
    points = points if points is not None else sweep_sizes(gamma, h, n_list, jobs)
    N = np.array([p.params.N for p in points])
    tdl = tdl_single_spin(h)
    transform: Transform = "minus_tdl" if phase == "broken" else "tdl_minus"
    out = {}
    for name, tval in (("max_l1", tdl.l1), ("max_r", tdl.rel_ent)):
        vals = np.array([p.single_spin.l1 if name == "max_l1" else p.single_spin.rel_ent for p in points])
        out[name] = MeasureSeries(name, phase, gamma, h, N, vals, transform, tval)
    return out


def single_spin_scaling(
    gamma: float, h: float, n_list: Sequence[int] = DEFAULT_N_LIST, measure: str = "max_l1", window: int = 4,
    points: list[PointResult] | None = None,
) -> ScalingFit:
    return fit_slope(single_spin_series(gamma, h, n_list, points=points)[measure], window)


def single_spin_theory_slope(h: float) -> float:
    return -2 / 3 if phase_of(h) == "critical" else -1.0


__all__ = [
    "MeasureSeries",
    "ScalingFit",
    "fit_slope",
    "measure_series",
    "scaling_report",
    "extract_critical_coefficients",
    "broken_phase_constants",
    "single_spin_scaling",
    "REFERENCE_CRITICAL",
]
