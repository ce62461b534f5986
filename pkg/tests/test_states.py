import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lmg_coherence.hamiltonian import ModelParams, build_full_space, dicke_sector
from lmg_coherence.solver import GroundStateSolution, global_ground_state
from lmg_coherence.states import (
    CLAMP_TOL,
    CollectiveMoments,
    PositivityError,
    moments_from_state,
    partial_trace_oracle,
    two_spin_state,
)

from conftest import x_states


def _basis_solution(N, M):
    # M1 starts at -N/2; parity set by distance from the bottom
    parity = "M1" if (M + N / 2) % 2 == 0 else "M2"
    sec = dicke_sector(N, parity)
    v = (sec.m_values == M).astype(float)
    return GroundStateSolution(0.0, v, sec, 0.0)


@given(st.integers(2, 200))
def test_polarized_moments(N):
    m = moments_from_state(_basis_solution(N, N / 2))
    assert m.sz == N / 2
    assert m.sz2 == N * N / 4
    assert m.sx2 == pytest.approx(N / 4, abs=1e-12)
    assert m.sy2 == pytest.approx(N / 4, abs=1e-12)
    x = two_spin_state(m)
    assert (x.v1, x.v2, x.y, x.u) == pytest.approx((1, 0, 0, 0), abs=1e-14)


@given(st.integers(2, 100), st.data())
def test_basis_state_moments(N, data):
    M = data.draw(st.sampled_from(list(np.arange(-N / 2, N / 2 + 1))))
    m = moments_from_state(_basis_solution(N, M))
    S = N / 2
    assert m.sz == M
    assert m.sx2 == pytest.approx((S * (S + 1) - M * M) / 2, abs=1e-9)
    assert m.sy2 == m.sx2
    assert two_spin_state(m).u == 0.0


def _dense_moments(N, gamma, h):
    from lmg_coherence.hamiltonian import SX, SY_REAL, SZ
    import scipy.sparse as sp

    def collective(op):
        total = sp.csr_matrix((2 ** N, 2 ** N))
        for k in range(N):
            total = total + sp.kron(sp.kron(sp.identity(2 ** k), op), sp.identity(2 ** (N - k - 1)))
        return total

    w, V = np.linalg.eigh(build_full_space(ModelParams(N, gamma, h)))
    psi = V[:, 0]
    Sx, Sz = 0.5 * collective(SX), 0.5 * collective(SZ)
    Sy_real = 0.5 * collective(SY_REAL)  # Sy = i * Sy_real
    sy2 = -psi @ (Sy_real @ (Sy_real @ psi))
    return psi, CollectiveMoments(N, psi @ Sz @ psi, psi @ Sx @ (Sx @ psi), sy2, psi @ Sz @ (Sz @ psi))


def test_moments_match_full_space_n8():
    _, ref = _dense_moments(8, 0.5, 1.0)
    got = moments_from_state(global_ground_state(ModelParams(8, 0.5, 1.0)))
    for k in ("sz", "sx2", "sy2", "sz2"):
        assert getattr(got, k) == pytest.approx(getattr(ref, k), abs=1e-10)


def test_two_spin_matches_partial_trace_n8():
    psi, _ = _dense_moments(8, 0.5, 1.0)
    ref = partial_trace_oracle(psi, 8)
    x = two_spin_state(moments_from_state(global_ground_state(ModelParams(8, 0.5, 1.0))))
    np.testing.assert_allclose([x.v1, x.v2, x.y, x.u], [ref.v1, ref.v2, ref.y, ref.u], atol=1e-10)


@pytest.mark.parametrize("pair", [(0, 1), (2, 5), (1, 4), (3, 4)])
def test_partial_trace_pair_independent(pair):
    w, V = np.linalg.eigh(build_full_space(ModelParams(6, 0.5, 0.8)))
    a = partial_trace_oracle(V[:, 0], 6, (0, 1))
    b = partial_trace_oracle(V[:, 0], 6, pair)
    np.testing.assert_allclose([a.v1, a.v2, a.y, a.u], [b.v1, b.v2, b.y, b.u], atol=1e-10)


def test_two_spin_bell_like_ground_state():
    # N=2, gamma=0, h=0: H = -Sx^2 + 1/2 on the triplet; ground state (|uu> + |dd>)/sqrt2
    w, V = np.linalg.eigh(build_full_space(ModelParams(2, 0.0, 0.0)))
    x = partial_trace_oracle(V[:, 0], 2, check_symmetry=False)
    np.testing.assert_allclose([x.v1, x.v2, x.y, abs(x.u)], [0.5, 0.5, 0.0, 0.5], atol=1e-12)


def test_partial_trace_rejects_non_x_state():
    psi = np.kron([1, 1], [1, 0, 0, 0]) / np.sqrt(2)  # (|u> + |d>) |uu>
    with pytest.raises(ValueError):
        partial_trace_oracle(psi, 3, (0, 1), check_symmetry=False)


def test_broken_phase_approaches_mean_field_state():
    from lmg_coherence.baselines import tdl_two_spin_state

    t = tdl_two_spin_state(0.6)
    np.testing.assert_allclose([t.v1, t.v2, t.y, t.u], [0.64, 0.04, 0.16, 0.16], atol=1e-15)
    x = two_spin_state(moments_from_state(global_ground_state(ModelParams(2 ** 16, 0.5, 0.6))))
    np.testing.assert_allclose([x.v1, x.v2, x.y, x.u], [0.64, 0.04, 0.16, 0.16], atol=1e-4)


@given(st.integers(2, 2 ** 11), st.floats(0.0, 1.0), st.floats(0.0, 2.0))
def test_state_invariants(N, gamma, h):
    m = moments_from_state(global_ground_state(ModelParams(N, gamma, h)))
    S = N / 2
    assert m.sx2 + m.sy2 + m.sz2 == pytest.approx(S * (S + 1), rel=1e-12, abs=1e-9)
    assert m.sx2 >= m.sy2 - 1e-9 * N * N
    x = two_spin_state(m)
    assert x.v1 + x.v2 + 2 * x.y == pytest.approx(1.0, abs=1e-10)
    assert min(x.v1, x.v2, x.y, x.u) >= 0
    assert x.u * x.u <= x.v1 * x.v2 + 1e-12
    eig = np.linalg.eigvalsh(x.matrix())
    expected = sorted([2 * x.y, 0.0, (x.v1 + x.v2) / 2 + np.hypot(x.u, (x.v1 - x.v2) / 2),
                       (x.v1 + x.v2) / 2 - np.hypot(x.u, (x.v1 - x.v2) / 2)])
    np.testing.assert_allclose(eig, expected, atol=1e-12)
    assert eig.min() >= -1e-10
    s = x.single_spin()
    assert 0 <= s.p_up <= 1
    assert s.p_up == pytest.approx((1 + 2 * m.sz / N) / 2, abs=1e-10)
    if gamma == 1.0:
        assert x.u == 0.0


@given(x_states())
def test_trace_identity_algebraic(x):
    assert np.trace(x.matrix()) == pytest.approx(1.0, abs=1e-12)


def test_clamp_is_symmetric_about_threshold():
    N = 10
    base = CollectiveMoments(N, N / 2, N / 4, N / 4, N * N / 4)
    # y = (N^2 - 4 sz2) / (4N(N-1)); push y slightly negative
    eps = 0.5 * CLAMP_TOL * 4 * N * (N - 1) / 4
    tiny = CollectiveMoments(N, base.sz, base.sx2, base.sy2, base.sz2 + eps)
    assert two_spin_state(tiny).y == 0.0
    big = CollectiveMoments(N, base.sz, base.sx2, base.sy2, base.sz2 + 1e4 * eps)
    with pytest.raises(PositivityError):
        two_spin_state(big)
    # values above the threshold are never touched
    x = two_spin_state(CollectiveMoments(N, 2.0, 8.0, 7.0, 6.0))
    assert x.y == (N * N - 24.0) / (4 * N * (N - 1))


def test_two_spin_needs_two_spins():
    with pytest.raises(ValueError):
        two_spin_state(CollectiveMoments(1, 0.5, 0.25, 0.25, 0.25))
