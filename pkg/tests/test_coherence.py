import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lmg_coherence.coherence import (
    binary_entropy,
    check_density_matrix,
    coherence_generic,
    coherence_two_spin,
    max_single_spin_coherence,
)
from lmg_coherence.baselines import tdl_single_spin, tdl_two_spin_state
from lmg_coherence.states import SingleSpinState, TwoSpinXState

from conftest import random_x_states, x_states


def test_diagonal_state_in_own_basis():
    c = coherence_generic(np.diag([0.2, 0.3, 0.5]))
    assert (c.l1, c.rel_ent) == (0.0, 0.0)


def test_plus_state_is_maximally_coherent():
    psi = np.array([1, 1]) / np.sqrt(2)
    c = coherence_generic(np.outer(psi, psi))
    assert c.l1 == pytest.approx(1.0, abs=1e-14)
    assert c.rel_ent == pytest.approx(1.0, abs=1e-12)


def test_basis_rotation():
    # |+><+| is incoherent in the x eigenbasis
    psi = np.array([1, 1]) / np.sqrt(2)
    basis = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    c = coherence_generic(np.outer(psi, psi), basis)
    assert c.l1 == pytest.approx(0.0, abs=1e-14)
    assert c.rel_ent == pytest.approx(0.0, abs=1e-12)


def test_rejects_invalid_density_matrices():
    with pytest.raises(ValueError):
        check_density_matrix(np.diag([0.6, 0.6]))
    with pytest.raises(ValueError):
        check_density_matrix(np.diag([1.2, -0.2]))
    with pytest.raises(ValueError):
        coherence_generic(np.array([[0.5, 0.5], [0.4, 0.5]]))


def test_two_spin_examples():
    assert coherence_two_spin(TwoSpinXState(1, 0, 0, 0)).as_tuple() == (0.0, 0.0)
    assert coherence_two_spin(TwoSpinXState(0.5, 0.5, 0, 0.5)).l1 == 1.0
    c = coherence_two_spin(tdl_two_spin_state(0.0))
    assert c.l1 == pytest.approx(1.0, abs=1e-15)
    assert c.rel_ent == pytest.approx(1.0, abs=1e-12)


@given(x_states())
def test_two_spin_closed_form_equals_generic(x):
    a = coherence_two_spin(x)
    b = coherence_generic(x.matrix())
    assert a.l1 == pytest.approx(b.l1, abs=1e-10)
    assert a.rel_ent == pytest.approx(b.rel_ent, abs=1e-10)


def test_two_spin_closed_form_equals_generic_1000_draws():
    for x in random_x_states(1000, seed=7, min_gap=0.0):
        a, b = coherence_two_spin(x), coherence_generic(x.matrix())
        assert abs(a.l1 - b.l1) <= 1e-10
        assert abs(a.rel_ent - b.rel_ent) <= 1e-10


@given(x_states())
def test_bounds(x):
    c = coherence_two_spin(x)
    assert 0.0 <= c.l1 <= 3.0
    assert 0.0 <= c.rel_ent <= 2.0 + 1e-12


@given(st.floats(0.0, 0.5), st.floats(0.0, 1.0))
def test_isotropic_shape_l1_equals_rel_ent(y, frac):
    # u = 0: epsilon_i = v_i, so both measures reduce to 2y
    v1 = frac * (1 - 2 * y)
    x = TwoSpinXState(v1, 1 - 2 * y - v1, y, 0.0)
    c = coherence_two_spin(x)
    assert c.l1 == pytest.approx(2 * y, abs=1e-15)
    assert c.rel_ent == pytest.approx(2 * y, abs=1e-12)


def test_binary_entropy_endpoints_exact():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0


def test_single_spin_examples():
    assert max_single_spin_coherence(SingleSpinState(1.0, 1.0)).as_tuple() == (1.0, 1.0)
    assert max_single_spin_coherence(SingleSpinState(0.5, 0.0)).as_tuple() == (0.0, 0.0)
    for h in (0.1, 0.5, 0.9):
        got = max_single_spin_coherence(tdl_two_spin_state(h).single_spin())
        ref = tdl_single_spin(h)
        assert got.l1 == pytest.approx(h, abs=1e-14)
        assert got.l1 == pytest.approx(ref.l1, abs=1e-14)
        assert got.rel_ent == pytest.approx(ref.rel_ent, abs=1e-14)


@given(st.floats(0.0, 1.0))
def test_single_spin_is_max_over_bases(p):
    # coherence of diag(p, 1-p) in a basis rotated by angle t peaks at t = pi/4
    s = SingleSpinState(p, 2 * p - 1)
    best = max_single_spin_coherence(s)
    rho = s.matrix()
    for t in np.linspace(0, np.pi / 2, 13):
        U = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
        c = coherence_generic(rho, U)
        assert c.l1 <= best.l1 + 1e-12
        assert c.rel_ent <= best.rel_ent + 1e-12
    U = np.array([[1, -1], [1, 1]]) / np.sqrt(2)
    c = coherence_generic(rho, U)
    assert c.l1 == pytest.approx(best.l1, abs=1e-12)
    assert c.rel_ent == pytest.approx(best.rel_ent, abs=1e-10)
