"""Coherence and steered coherence of the Lipkin-Meshkov-Glick ground state.

Exact diagonalization in the maximum-spin Dicke sector, closed-form
two-spin measures with brute-force oracles, analytic baselines and
finite-size scaling fits.
"""

from .hamiltonian import ModelParams, build_full_space, build_sector
from .solver import GroundStateSolution, global_ground_state, ground_state
from .states import CollectiveMoments, SingleSpinState, TwoSpinXState, moments_from_state, two_spin_state
from .coherence import CoherencePair, coherence_generic, coherence_two_spin, max_single_spin_coherence
from .steering import asc_closed_form, asc_definitional, msc_closed_form, msc_grid_oracle
from .pipeline import PointResult, evaluate_point

__all__ = [
    "ModelParams",
    "build_sector",
    "build_full_space",
    "GroundStateSolution",
    "ground_state",
    "global_ground_state",
    "CollectiveMoments",
    "TwoSpinXState",
    "SingleSpinState",
    "moments_from_state",
    "two_spin_state",
    "CoherencePair",
    "coherence_generic",
    "coherence_two_spin",
    "max_single_spin_coherence",
    "asc_closed_form",
    "asc_definitional",
    "msc_closed_form",
    "msc_grid_oracle",
    "PointResult",
    "evaluate_point",
]
