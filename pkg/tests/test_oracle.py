import numpy as np
import pytest

from ghzsep import decompositions, matching, oracle, states, witness
from ghzsep.oracle import (
    BIPARTITION_CUTS,
    jacobi_eigenvalues,
    min_pt_eigenvalue,
    numeric_g_max,
    numeric_lambda,
    numeric_matched_witness,
    numeric_r_tilde,
    partial_transpose,
    partial_transpose_spectrum,
)
from ghzsep.states import make_werner

from conftest import random_state, random_symmetric_state


def sector(m8, m9, m15, diag=None):
    return witness.WitnessParams.from_sector(
        np.zeros(7) if diag is None else diag, m8, m9, m15)


# ---------------------------------------------------------------------------
# phase maximum

def test_numeric_g_max_reference_witnesses():
    assert numeric_g_max(sector(1, -1, 1)) == pytest.approx(1.0, abs=1e-8)
    assert numeric_g_max(sector(0, 1, 0)) == pytest.approx(1.5, abs=1e-8)
    assert numeric_g_max(sector(2, 0, 0)) == pytest.approx(2.0, abs=1e-8)


def test_numeric_g_max_general_coefficients(rng):
    # non-sector witness exercises the raw four-angle path
    m = np.zeros(15)
    m[7:] = rng.uniform(-1, 1, 8)
    w = witness.WitnessParams(m)
    coeff = witness.GPhaseCoefficients.from_witness(w)
    axis = np.linspace(0, 2 * np.pi, 241)
    pp, pm = np.meshgrid(axis, axis)
    ref = coeff.g1(pp.ravel(), pm.ravel()).max()
    assert numeric_g_max(w, grid=18) == pytest.approx(ref, abs=1e-5)


def test_numeric_g_max_grid_doubling(rng):
    for _ in range(5):
        w = sector(*rng.uniform(-1, 1, 3))
        a = numeric_g_max(w, grid=24)
        b = numeric_g_max(w, grid=48)
        assert b >= a - 1e-9


def test_numeric_g_max_validates_grid():
    with pytest.raises(ValueError):
        numeric_g_max(sector(1, 1, 1), grid=8)


# ---------------------------------------------------------------------------
# product maximum

def test_numeric_lambda_known_maximum():
    w = witness.WitnessParams.from_sector(
        np.array([0, 0, 0, 0, 0, 0, 1.0]), 1.0, -1.0, 1.0)
    assert numeric_lambda(w) == pytest.approx(1.0, abs=1e-6)


def test_numeric_lambda_interior_matches_phase_maximum(rng):
    for _ in range(10):
        w = oracle.random_inside_witness(rng)
        gt = witness.g_tilde(w.M[7], w.M[8], w.M[14])
        assert numeric_lambda(w) == pytest.approx(gt, abs=1e-6)


def test_numeric_lambda_exterior_lower_bound(rng):
    for _ in range(5):
        w = oracle.scaled_vertex_witness(rng)
        gt = witness.g_tilde(w.M[7], w.M[8], w.M[14])
        assert numeric_lambda(w) >= gt + 1e-4


def test_numeric_lambda_deterministic():
    w = sector(0.3, -0.8, 0.5, np.linspace(-0.5, 0.5, 7))
    assert numeric_lambda(w, seed=3) == numeric_lambda(w, seed=3)


# ---------------------------------------------------------------------------
# overlap maximum

def test_numeric_r_tilde_reference_triples():
    assert numeric_r_tilde(0.2, -1.2, 0.2) == pytest.approx(1.6, abs=1e-8)
    assert numeric_r_tilde(1.0, 3.0, 1.0) == pytest.approx(3.0, abs=1e-8)
    assert numeric_r_tilde(0.0, 3.0, 1.0) == pytest.approx(2.5, abs=1e-8)


def test_numeric_r_tilde_grid_doubling():
    t = (0.37, -0.61, 0.88)
    a = numeric_r_tilde(*t, grid=41)
    b = numeric_r_tilde(*t, grid=81)
    assert b >= a - 1e-9


# ---------------------------------------------------------------------------
# randomized two-step search

def test_search_detects_entangled_werner():
    rec = numeric_matched_witness(make_werner(0.2), rounds=10_000, seed=1)
    assert rec.l_best < 1.0
    assert rec.l_best >= matching.l_min(make_werner(0.2)) - 1e-6


def test_search_respects_separable_werner():
    rec = numeric_matched_witness(make_werner(0.05), rounds=10_000, seed=1)
    assert rec.l_best >= 1.0 - 1e-6


def test_search_approaches_boundary_value():
    st0 = decompositions.assembled_state(
        decompositions.curve_state(0.3, "LM", 0.25))
    rec = numeric_matched_witness(st0, rounds=10_000, seed=2)
    assert rec.l_best >= 1.0 - 1e-6
    assert rec.l_best <= 1.0 + 5e-3


def test_search_statistics_on_symmetric_states(rng):
    for i in range(25):
        st0 = random_symmetric_state(rng)
        lm = matching.l_min(st0)
        rec = numeric_matched_witness(st0, rounds=10_000, seed=50 + i)
        assert rec.l_best >= lm - 1e-6
        assert rec.l_best <= lm + 5e-3
        # recorded witness reproduces the recorded ratio
        w = rec.witness
        gt = witness.g_tilde(w.M[7], w.M[8], w.M[14])
        denom = float(w.M @ states.as_correlations(st0).R)
        assert gt / denom == pytest.approx(rec.l_best, rel=1e-12)


def test_search_deterministic():
    st0 = make_werner(0.3)
    a = numeric_matched_witness(st0, rounds=2000, seed=9)
    b = numeric_matched_witness(st0, rounds=2000, seed=9)
    assert a.l_best == b.l_best


# ---------------------------------------------------------------------------
# partial transposes

def test_partial_transpose_involution(rng):
    st0 = random_state(rng)
    rho = states.density_matrix(st0)
    for cut in BIPARTITION_CUTS:
        pt = partial_transpose(rho, cut)
        assert np.abs(partial_transpose(pt, cut) - rho).max() < 1e-15
        assert np.abs(pt - pt.T).max() < 1e-15


def test_partial_transpose_complementary_masks(rng):
    rho = states.density_matrix(random_state(rng))
    for cut in BIPARTITION_CUTS:
        a = np.sort(np.linalg.eigvalsh(partial_transpose(rho, cut)))
        b = np.sort(np.linalg.eigvalsh(partial_transpose(rho, 0xF ^ cut)))
        assert np.abs(a - b).max() < 1e-12


def test_partial_transpose_spectrum_examples():
    spectrum = partial_transpose_spectrum(make_werner(0.0), 1)
    assert np.allclose(spectrum, 1.0 / 16.0)
    spectrum = partial_transpose_spectrum(make_werner(1.0), 1)
    assert spectrum[0] == pytest.approx(-0.5, abs=1e-12)
    for cut in BIPARTITION_CUTS:
        spectrum = partial_transpose_spectrum(make_werner(1.0 / 9.0), cut)
        assert spectrum[0] == pytest.approx(0.0, abs=1e-12)


def test_partial_transpose_spectrum_block_structure(rng):
    # spectra of X-shaped transposes are pairs d_i +/- |a_j| with the
    # pairing induced by the cut mask
    st0 = random_state(rng)
    x = states.as_elements(st0)
    for cut in BIPARTITION_CUTS:
        expected = []
        for i in range(8):
            partner = (i ^ cut) if (i ^ cut) < 8 else 15 - (i ^ cut)
            expected += [x.d[i] - abs(x.a[partner]), x.d[i] + abs(x.a[partner])]
        got = partial_transpose_spectrum(st0, cut)
        assert np.abs(np.sort(expected) - got).max() < 1e-12


def test_invalid_cut_rejected():
    with pytest.raises(ValueError):
        partial_transpose_spectrum(make_werner(0.2), 0)
    with pytest.raises(ValueError):
        partial_transpose_spectrum(make_werner(0.2), 15)


def test_jacobi_matches_reference_solver(rng):
    for _ in range(20):
        a = rng.normal(size=(16, 16))
        a = a + a.T
        assert np.abs(jacobi_eigenvalues(a) - np.linalg.eigvalsh(a)).max() < 1e-12
    with pytest.raises(ValueError):
        jacobi_eigenvalues(rng.normal(size=(4, 4)))


def test_ppt_margin_equals_min_eigenvalue(rng):
    for _ in range(100):
        st0 = random_state(rng)
        _, margin = matching.ppt_criterion(st0)
        assert min_pt_eigenvalue(st0) == pytest.approx(-margin, abs=1e-12)


def test_check_ppt_small():
    result = oracle.check_ppt(trials=60, seed=3)
    assert result["ok"] and result["disagreements"] == 0


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("GHZSEP_THREADS", "4")
    assert oracle.worker_count() == 4
    monkeypatch.setenv("GHZSEP_THREADS", "junk")
    assert oracle.worker_count() == 1
    monkeypatch.delenv("GHZSEP_THREADS")
    assert oracle.worker_count() == 1


def test_results_independent_of_worker_count(monkeypatch):
    st0 = make_werner(0.37)
    base = min_pt_eigenvalue(st0)
    monkeypatch.setenv("GHZSEP_THREADS", "4")
    assert min_pt_eigenvalue(st0) == base
