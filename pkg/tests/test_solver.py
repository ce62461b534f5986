import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lmg_coherence.hamiltonian import ModelParams, TridiagonalHamiltonian, build_full_space, build_sector, dicke_sector
from lmg_coherence.solver import (
    DENSE_CUTOFF,
    SolverError,
    global_ground_state,
    ground_state,
    sturm_count,
)


def test_two_spin_isotropic_block():
    sol = ground_state(build_sector(ModelParams(2, 1.0, 2.0), "M1"))
    assert sol.energy == pytest.approx(-4.0, abs=1e-14)
    np.testing.assert_array_equal(sol.vector, [0.0, 1.0])
    assert global_ground_state(ModelParams(2, 1.0, 2.0)).energy == pytest.approx(-4.0, abs=1e-14)


@given(st.integers(2, 200), st.floats(0.0, 2.0), st.sampled_from(["M1", "M2"]))
def test_diagonal_block_gives_basis_vector(N, h, parity):
    H = build_sector(ModelParams(N, 1.0, h), parity)
    sol = ground_state(H)
    assert sol.energy == H.diag.min()
    assert np.count_nonzero(sol.vector) == 1
    assert H.diag[np.argmax(sol.vector)] == H.diag.min()


def test_isotropic_ground_vector_at_m0():
    # hN/2 = 0.8, nearest integer M0 = 1
    sol = global_ground_state(ModelParams(4, 1.0, 0.4))
    k = int(np.argmax(sol.vector))
    assert sol.sector.m_values[k] == 1.0
    assert sol.vector[k] == 1.0


def test_against_dense_n10():
    p = ModelParams(10, 0.5, 0.5)
    e_full = np.linalg.eigvalsh(build_full_space(p))[0]
    assert global_ground_state(p).energy == pytest.approx(e_full, abs=1e-10)


@pytest.mark.parametrize("N", [2 ** 8, 2 ** 10, 2 ** 12 + 1])
@pytest.mark.parametrize("h", [0.3, 1.0, 1.7])
def test_bisection_path_matches_dense(N, h):
    H = build_sector(ModelParams(N, 0.4, h), "M1" if N % 2 == 0 else "M2")
    assert H.dim >= DENSE_CUTOFF
    sol = ground_state(H)
    w, V = np.linalg.eigh(H.dense())
    assert sol.energy == pytest.approx(w[0], abs=1e-10 * max(1, abs(w[0])))
    assert abs(abs(sol.vector @ V[:, 0]) - 1) < 1e-10


@pytest.mark.parametrize("N", [2 ** 10, 2 ** 14])
def test_solution_invariants(N):
    sol = global_ground_state(ModelParams(N, 0.5, 0.9))
    assert abs(np.linalg.norm(sol.vector) - 1) < 1e-12
    assert sol.residual <= 1e-10 * max(1.0, abs(sol.energy))
    first = sol.vector[np.flatnonzero(np.abs(sol.vector) > 1e-12)[0]]
    assert first > 0


@pytest.mark.parametrize("h", [0.2, 1.0, 1.6])
def test_sturm_bracket(h):
    H = build_sector(ModelParams(2 ** 12, 0.5, h), "M1")
    sol = ground_state(H)
    assert sturm_count(H, sol.energy + 1e-9) >= 1
    assert sturm_count(H, sol.energy - 1e-9 * max(1, abs(sol.energy))) == 0


def test_sturm_count_counts_eigenvalues():
    H = build_sector(ModelParams(100, 0.3, 0.6), "M1")
    w = np.linalg.eigvalsh(H.dense())
    for x in (w[0] - 1, (w[3] + w[4]) / 2, w[-1] + 1):
        assert sturm_count(H, x) == np.count_nonzero(w < x)


def test_reproducible_bitwise():
    p = ModelParams(2 ** 13, 0.5, 1.0)
    a, b = global_ground_state(p), global_ground_state(p)
    assert a.energy == b.energy
    assert a.vector.tobytes() == b.vector.tobytes()


@pytest.mark.parametrize("N", [4, 6, 8, 10])
def test_large_field_selects_top_block(N):
    sol = global_ground_state(ModelParams(N, 0.5, 2.0))
    assert sol.sector.parity == "M1"
    assert sol.sector.contains_top
    e_full = np.linalg.eigvalsh(build_full_space(ModelParams(N, 0.5, 2.0)))[0]
    assert sol.energy == pytest.approx(e_full, abs=1e-10)


def test_tie_goes_to_top_block():
    # deep broken phase: parity splitting below 1e-10 relative
    sol = global_ground_state(ModelParams(2 ** 10, 0.0, 0.3))
    assert sol.sector.contains_top


def test_nonconvergence_is_an_error():
    sec = dicke_sector(200, "M1")
    d = np.linspace(0, 1, sec.dim)
    d[5] = np.nan
    H = TridiagonalHamiltonian(sec, d, np.full(sec.dim - 1, 0.1))
    with pytest.raises(SolverError):
        ground_state(H)
