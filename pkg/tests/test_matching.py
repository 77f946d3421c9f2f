import math

import numpy as np
import pytest

from ghzsep import boundaries, decompositions, matching, oracle, states, witness
from ghzsep.matching import (
    CriterionCase,
    Verdict,
    criteria,
    kay_condition,
    l_min,
    matched_witness,
    omega,
    ppt_criterion,
    r_tilde,
    report_json,
)
from ghzsep.states import (
    PauliCorrelations,
    correlations_to_probabilities,
    make_werner,
)

from conftest import random_state, random_symmetric_state


def flat_state_with(r8=0.0, r9=0.0, r15=0.0):
    r = np.zeros(15)
    r[7] = r8
    r[8:14] = r9
    r[14] = r15
    return correlations_to_probabilities(PauliCorrelations(r))


# ---------------------------------------------------------------------------
# anti-diagonal overlap maximum

def test_r_tilde_werner_triple():
    p = 0.31
    value, case = r_tilde(p, -6.0 * p, p)
    assert value == pytest.approx(8.0 * p)
    assert case is CriterionCase.I


def test_r_tilde_corner_case():
    value, case = r_tilde(1.0, 3.0, 1.0)
    assert value == pytest.approx(3.0)
    assert case is CriterionCase.II


def test_r_tilde_arc_case():
    value, case = r_tilde(0.0, 3.0, 1.0)
    assert value == pytest.approx(2.5)
    assert case is CriterionCase.III
    value, case = r_tilde(1.0, 3.0, 0.0)
    assert value == pytest.approx(2.5)
    assert case is CriterionCase.IV


def test_r_tilde_zero_rp9():
    value, _ = r_tilde(0.4, 0.0, -0.3)
    assert value == pytest.approx(0.7)
    value, _ = r_tilde(0.4, 0.0, 0.3)
    assert value == pytest.approx(0.7)
    assert r_tilde(0.0, 0.0, 0.0)[0] == 0.0


def test_r_tilde_oracle_agreement(rng):
    worst = 0.0
    for i in range(150):
        t = rng.uniform(-1, 1, 3)
        if i < 15:
            t[1] = 0.0
        value, _ = r_tilde(*t)
        worst = max(worst, abs(value - oracle.numeric_r_tilde(*t)))
    assert worst <= 1e-6


def test_r_tilde_flip_invariance(rng):
    for _ in range(100):
        t = rng.uniform(-1, 1, 3)
        assert r_tilde(*t)[0] == pytest.approx(r_tilde(*(-t))[0], abs=1e-13)


# ---------------------------------------------------------------------------
# minimal ratio

def test_l_min_werner():
    for p in (0.02, 1.0 / 9.0, 0.4, 1.0):
        assert l_min(make_werner(p)) == pytest.approx(1.0 / (9.0 * p), rel=1e-12)


def test_l_min_flat_r8_state():
    assert l_min(flat_state_with(r8=1.0)) == pytest.approx(1.0)


def test_l_min_maximally_mixed_sentinel():
    assert math.isinf(l_min(make_werner(0.0)))


# ---------------------------------------------------------------------------
# criteria and verdicts

def test_criteria_werner_boundary():
    rep = criteria(make_werner(1.0 / 9.0))
    assert rep.verdict is Verdict.SEPARABLE
    assert rep.margins[CriterionCase.I] == pytest.approx(0.0, abs=1e-12)
    assert all(m <= 1e-12 for m in rep.margins.values())


def test_criteria_werner_entangled():
    rep = criteria(make_werner(0.2))
    assert rep.verdict is Verdict.ENTANGLED
    assert rep.margins[CriterionCase.I] > 0


def test_criteria_triangle_vertex():
    rep = criteria(flat_state_with(r8=1.0))
    assert rep.verdict is Verdict.SEPARABLE
    assert rep.margins[CriterionCase.I] == pytest.approx(0.0, abs=1e-14)
    assert rep.margins[CriterionCase.II] == pytest.approx(0.0, abs=1e-14)
    assert rep.margins[CriterionCase.IV] == pytest.approx(0.0, abs=1e-14)
    assert rep.margins[CriterionCase.III] == -math.inf  # R15 vanishes


def test_criteria_omega():
    assert omega(make_werner(0.2)) == pytest.approx(0.05)
    rep = criteria(make_werner(0.2))
    assert rep.omega == pytest.approx(0.05)


def test_nonsymmetric_verdicts(rng):
    p = np.full(16, 1.0 / 16.0)
    p[1] += 0.01
    p[2] -= 0.01
    rep = criteria(states.GhzProbabilities(p))
    assert rep.verdict is Verdict.UNDETERMINED
    # strongly anti-diagonal non-symmetric state: necessity fires
    q = np.zeros(16)
    q[1] = 1.0
    rep = criteria(states.GhzProbabilities(q))
    assert rep.verdict is Verdict.ENTANGLED_BY_NECESSITY


def test_verdict_equivalence_on_symmetric_states(rng):
    for _ in range(1000):
        st0 = random_symmetric_state(rng)
        rep = criteria(st0)
        lm = rep.l_min
        entangled = rep.verdict is Verdict.ENTANGLED
        assert entangled == (lm < 1.0 - 1e-9)
        w = rep.matched_witness
        gt = witness.g_tilde(w.M[7], w.M[8], w.M[14])
        value = witness.witness_value(st0, w, gt)
        assert entangled == (value < -1e-9 * max(1.0, gt))


def test_l_min_iff_applicable_margins(rng):
    for _ in range(300):
        st0 = random_state(rng)
        rep = criteria(st0)
        r = states.as_correlations(st0)
        cands = matching._rtilde_candidates(r.r(8), r.rp9, r.r(15))
        applicable = {case for case, _ in cands}
        ok = all(rep.margins[c] <= 1e-9 for c in applicable)
        assert ok == (rep.l_min >= 1.0 - 1e-9)


def test_matched_witness_saturation(rng):
    for maker in (random_state, random_symmetric_state):
        for _ in range(100):
            st0 = maker(rng)
            rep = criteria(st0)
            w = rep.matched_witness
            gt = witness.g_tilde(w.M[7], w.M[8], w.M[14])
            assert gt > 0
            mem = witness.polyhedron_membership(w.diagonal / gt)
            assert mem.inside
            value = witness.witness_value(st0, w, gt)
            expected = 1.0 - (0.0 if math.isinf(rep.l_min) else 1.0 / rep.l_min)
            assert value / gt == pytest.approx(expected, abs=1e-9)


def test_matched_witness_detects_pushed_surface_states(rng):
    # push curved-surface points outward: the matched witness must fire
    for _ in range(50):
        p = rng.uniform(-0.95, 0.95)
        q = rng.uniform(-1.0, p)
        a = float(boundaries.lower_sheet_a(q, p))
        a_out = min(a * (1.0 + 1e-3), 1.0 - 1e-12)
        if a_out <= a:
            continue
        st0 = boundaries.sym_point_state(q, p, a_out, 1.0 / 16.0)
        rep = criteria(st0)
        assert rep.verdict is Verdict.ENTANGLED
        w = rep.matched_witness
        gt = witness.g_tilde(w.M[7], w.M[8], w.M[14])
        assert witness.witness_value(st0, w, gt) < 0.0


def test_matched_witness_werner_form():
    w = matched_witness(make_werner(0.3))
    assert abs(w.M[7]) == pytest.approx(1.0)
    assert np.allclose(w.M[8:14], -w.M[7])
    assert w.M[14] == pytest.approx(w.M[7])


# ---------------------------------------------------------------------------
# element-form positivity test and the coincidence condition

def test_ppt_werner_boundary():
    ok, margin = ppt_criterion(make_werner(1.0 / 9.0))
    assert ok and margin == pytest.approx(0.0, abs=1e-15)
    ok, margin = ppt_criterion(make_werner(1.0))
    assert not ok and margin == pytest.approx(0.5)


def test_ppt_on_separable_constructions():
    for dec in (decompositions.rho3(0.7, +1),
                decompositions.rho_pm(1.1, -1),
                decompositions.line_state(0.3, 0.2, 0.1, "plus")):
        ok, _ = ppt_criterion(decompositions.assembled_state(dec))
        assert ok


def test_ppt_implied_by_criterion_i_not_conversely():
    # positivity of all transposes implies the first-pair inequality ...
    rng = np.random.default_rng(9)
    for _ in range(200):
        st0 = random_state(rng)
        ok, _ = ppt_criterion(st0)
        if ok:
            rep = criteria(st0)
            assert rep.margins[CriterionCase.I] <= 1e-12
    # ... but a heavy anti-diagonal away from pair 1 passes criterion I
    # while failing the element inequality
    d = np.full(8, (0.5 - 3.0 / 32.0) / 7.0)
    d[3] = 3.0 / 32.0
    a = np.zeros(8)
    a[3] = 5.0 / 64.0
    st1 = states.elements_to_probabilities(states.XMatrixElements(d=d, a=a))
    ok, _ = ppt_criterion(st1)
    assert not ok
    assert criteria(st1).margins[CriterionCase.I] <= 0


def test_kay_condition_examples():
    assert kay_condition(make_werner(0.5))
    assert not kay_condition(flat_state_with(r8=0.1, r9=0.1, r15=0.1))
    # mirror-parabola boundary states violate it
    st0 = boundaries.sym_point_state(0.0, -1.0, float(np.sqrt(0.5)))
    assert not kay_condition(st0)


def test_report_json_layout():
    doc = report_json(make_werner(0.0))
    assert doc["l_min"] is None  # infinity sentinel
    assert set(doc) == {"omega", "r_tilde", "case", "l_min", "margins",
                        "verdict", "ppt", "kay", "witness"}
    assert set(doc["margins"]) == {"I", "II", "III", "IV"}
    assert len(doc["witness"]["M"]) == 15


def test_highly_symmetric_criteria_reduce_to_weight_inequality(rng):
    # on the highly symmetric family criteria II and III carry the same
    # content: |p2 - p15| <= p1 + p16
    for _ in range(300):
        p16 = rng.uniform(0.0, 0.45)
        u = 1.0 - 2.0 * p16
        v = rng.uniform(0.0, 1.0)
        alpha = rng.uniform(max(6.0, 14.0 * u / (1.0 + u)) - 0.5, 14.0)
        h = states.HighlySymmetricParams.from_point(p16, v, alpha)
        if min(h.p1, h.p2, h.p15) < 0.0:
            continue
        rep = criteria(states.make_highly_symmetric(h))
        weight_ineq = abs(h.p2 - h.p15) <= h.p1 + h.p16 + 1e-12
        assert (rep.margins[CriterionCase.II] <= 1e-12) == weight_ineq
        m3 = rep.margins[CriterionCase.III]
        if math.isfinite(m3):
            assert (m3 <= 1e-9) == weight_ineq
