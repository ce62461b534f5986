import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lmg_coherence.states import TwoSpinXState

settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repro")


@st.composite
def x_states(draw, min_weight=1e-3):
    """Valid LMG-shaped X states: v1 + v2 + 2y = 1, 0 <= u <= sqrt(v1 v2)."""
    w = [draw(st.floats(min_weight, 1.0)) for _ in range(3)]
    s = sum(w)
    v1, v2, y2 = (x / s for x in w)
    t = draw(st.floats(0.0, 1.0))
    return TwoSpinXState(v1=v1, v2=v2, y=y2 / 2, u=t * np.sqrt(v1 * v2))


def random_x_states(n, seed=20240611, min_gap=1e-3):
    """Seeded batch of X states with a nondegenerate one-spin marginal."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        v1, v2, y2 = rng.dirichlet([1.0, 1.0, 1.0])
        if abs(v1 - v2) < min_gap:
            continue
        out.append(TwoSpinXState(v1=v1, v2=v2, y=y2 / 2, u=rng.uniform() * np.sqrt(v1 * v2)))
    return out


@pytest.fixture(scope="session")
def random_states():
    return random_x_states(200)


def embed_dicke(sol):
    """Full-space vector of a sector solution (site 0 leftmost, index bit set = spin down)."""
    from itertools import combinations

    N = sol.sector.N
    psi = np.zeros(2 ** N)
    for amp, M in zip(sol.vector, sol.sector.m_values):
        if amp == 0.0:
            continue
        n_down = int(round(N / 2 - M))
        idx = [sum(1 << (N - 1 - k) for k in downs) for downs in combinations(range(N), n_down)]
        psi[idx] = amp / np.sqrt(len(idx))
    return psi
