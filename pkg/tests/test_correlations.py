import numpy as np
import pytest
from hypothesis import given

from lmg_coherence.coherence import von_neumann_entropy
from lmg_coherence.correlations import (
    concurrence_x,
    discord_matrix,
    discord_x,
    eof_from_concurrence,
    eof_x,
    mutual_information,
    wootters_concurrence,
)
from lmg_coherence.hamiltonian import ModelParams
from lmg_coherence.pipeline import evaluate_point
from lmg_coherence.states import TwoSpinXState

from conftest import random_x_states, x_states

BELL = TwoSpinXState(0.5, 0.5, 0.0, 0.5)
PRODUCT = TwoSpinXState(1.0, 0.0, 0.0, 0.0)


def test_bell_and_product():
    assert concurrence_x(BELL) == 1.0
    assert eof_x(BELL) == 1.0
    assert concurrence_x(PRODUCT) == 0.0
    assert eof_x(PRODUCT) == 0.0
    assert discord_x(PRODUCT) == pytest.approx(0.0, abs=1e-12)
    assert discord_x(BELL) == pytest.approx(1.0, abs=1e-9)


def test_concurrence_matches_wootters():
    for x in random_x_states(300, seed=11, min_gap=0.0):
        assert concurrence_x(x) == pytest.approx(wootters_concurrence(x.matrix()), abs=1e-10)


@given(x_states())
def test_eof_range_and_zero_iff_separable(x):
    e, c = eof_x(x), concurrence_x(x)
    assert 0.0 <= e <= 1.0
    assert (e == 0.0) == (c == 0.0)


def test_discord_nonnegative_and_below_mutual_information():
    for x in random_x_states(30, seed=5):
        d = discord_x(x)
        assert d >= 0.0
        assert d <= mutual_information(x.matrix()) + 1e-9


def test_pure_state_discord_is_marginal_entropy():
    # for pure states discord = entanglement entropy = E_f
    for a in (0.1, 0.3, 0.5, 0.8):
        psi = np.zeros(4)
        psi[0], psi[3] = np.sqrt(a), np.sqrt(1 - a)
        rho = np.outer(psi, psi)
        marg = von_neumann_entropy(np.diag([a, 1 - a]))
        assert discord_matrix(rho) == pytest.approx(marg, abs=1e-6)
        assert eof_from_concurrence(wootters_concurrence(rho)) == pytest.approx(marg, abs=1e-10)


@pytest.mark.parametrize("h", [0.5, 1.0, 1.5])
def test_lmg_eof_small_beyond_64(h):
    for N in (2 ** 6, 2 ** 8, 2 ** 10):
        assert evaluate_point(ModelParams(N, 0.5, h), correlations=True).eof < 0.01


def test_lmg_discord_decays_in_symmetric_phase():
    d = [evaluate_point(ModelParams(2 ** k, 0.5, 1.5), correlations=True).discord for k in range(6, 13)]
    assert all(b < a for a, b in zip(d, d[1:]))
    assert d[-1] < 1e-4


def test_lmg_discord_plateau_in_broken_phase():
    d = [evaluate_point(ModelParams(2 ** k, 0.5, 0.5), correlations=True).discord for k in range(6, 13)]
    assert max(d) - min(d) < 1e-3
    assert d[-1] > 0.1
