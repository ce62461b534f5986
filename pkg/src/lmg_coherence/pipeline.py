"""One parameter point: Hamiltonian -> ground state -> reduced states -> every measure."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, TypeVar

from .baselines import MeasureTriple
from .coherence import CoherencePair, coherence_two_spin, max_single_spin_coherence
from .correlations import discord_x, eof_x
from .hamiltonian import ModelParams
from .solver import global_ground_state
from .states import CollectiveMoments, TwoSpinXState, moments_from_state, two_spin_state
from .steering import asc_closed_form, msc_closed_form

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class PointResult:
    params: ModelParams
    energy: float
    parity: str
    moments: CollectiveMoments
    state: TwoSpinXState
    measures: MeasureTriple
    single_spin: CoherencePair
    eof: float | None = None
    discord: float | None = None

    @property
    def msc_limit(self) -> bool:
        """True where rho_j is degenerate (h = 0) and MSC is the h -> 0+ limit of the closed form."""
        return abs(self.state.v1 - self.state.v2) < 1e-12


def measures_of(x: TwoSpinXState) -> MeasureTriple:
    return MeasureTriple(coherence_two_spin(x), asc_closed_form(x), msc_closed_form(x))


def evaluate_point(params: ModelParams, correlations: bool = False) -> PointResult:
    sol = global_ground_state(params)
    mom = moments_from_state(sol)
    x = two_spin_state(mom)
    return PointResult(
        params=params,
        energy=sol.energy,
        parity=sol.sector.parity,
        moments=mom,
        state=x,
        measures=measures_of(x),
        single_spin=max_single_spin_coherence(x.single_spin()),
        eof=eof_x(x) if correlations else None,
        discord=discord_x(x) if correlations else None,
    )


def default_jobs() -> int:
    return os.cpu_count() or 1


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int | None = None) -> list[R]:
    """Ordered map; results follow input order whatever the completion order."""
    items = list(items)
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
