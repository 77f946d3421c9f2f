import numpy as np
import pytest

from ghzsep import boundaries as B
from ghzsep import matching, states
from ghzsep.matching import Verdict, criteria, l_min


def segments_by_label(p16, n):
    out = {}
    for seg in B.hs_boundary(p16, n):
        out[seg.label] = seg
    return out


# ---------------------------------------------------------------------------
# (v, alpha) chart

def test_quadrilateral_regime_endpoints():
    segs = segments_by_label(0.3, 25)
    assert set(segs) == {"KL", "LM", "MN", "KN"}
    assert segs["KL"].points[0] == pytest.approx((0.0, 8.0), abs=1e-12)
    assert segs["KL"].points[-1] == pytest.approx((2.0 / 3.0, 8.0), abs=1e-12)
    assert segs["LM"].points[-1] == pytest.approx((1.0, 6.0), abs=1e-12)
    assert segs["MN"].points[-1] == pytest.approx((1.0 / 3.0, 6.0), abs=1e-12)
    assert segs["KN"].points[0] == pytest.approx((1.0 / 3.0, 6.0), abs=1e-12)
    assert segs["KN"].points[-1] == pytest.approx((0.0, 8.0), abs=1e-12)


def test_triangle_regime():
    segs = segments_by_label(0.0, 21)
    assert set(segs) == {"GH", "GJ", "HJ"}
    assert segs["GH"].points[0] == pytest.approx((0.0, 8.0))
    assert segs["GH"].points[-1] == pytest.approx((2.0 / 3.0, 8.0))
    # line intersection at (1/2, 7)
    assert segs["GJ"].points[0] == pytest.approx((0.5, 7.0), abs=1e-10)
    assert segs["HJ"].points[-1] == pytest.approx((0.5, 7.0), abs=1e-10)
    for v, alpha in segs["GJ"].points:
        assert alpha == pytest.approx(8.0 - 2.0 * v, abs=1e-12)
    for v, alpha in segs["HJ"].points:
        assert alpha == pytest.approx(4.0 + 6.0 * v, abs=1e-12)


def test_hexagon_regime_closes():
    segs = B.hs_boundary(0.0625, 15)
    assert [s.label for s in segs] == ["PQ", "QS", "ST", "UT", "UV", "PV"]
    for a, b in zip(segs, segs[1:] + segs[:1]):
        assert np.hypot(a.points[-1][0] - b.points[0][0],
                        a.points[-1][1] - b.points[0][1]) < 1e-9


def test_regime_split_degenerates_to_quadrilateral():
    byl = {s.label: s for s in B.hs_boundary(0.125, 40)}
    # at the split the hexagon collapses: the right arc runs all the way
    # to (1, 6), the physical line becomes the alpha = 6 edge, and the
    # two below-diagonal arcs shrink to points
    assert byl["QS"].points[-1] == pytest.approx((1.0, 6.0), abs=1e-9)
    assert byl["PV"].points[0] == pytest.approx((1.0 / 3.0, 6.0), abs=1e-9)
    assert byl["UT"].points[0] == pytest.approx((1.0, 6.0), abs=1e-9)
    assert byl["UT"].points[-1] == pytest.approx((1.0 / 3.0, 6.0), abs=1e-9)
    for seg in ("ST", "UV"):
        first, last = byl[seg].points[0], byl[seg].points[-1]
        assert np.hypot(first[0] - last[0], first[1] - last[1]) < 1e-9


def test_boundary_points_saturate_minimal_ratio():
    for p16 in (0.0, 0.0625, 0.125, 0.3, 0.45):
        for seg in B.hs_boundary(p16, 30):
            for v, alpha in seg.points:
                lm = l_min(B.hs_point_state(p16, v, alpha))
                if seg.label == "UT":
                    assert lm >= 1.0 - 1e-8
                else:
                    assert abs(lm - 1.0) <= 1e-8, (p16, seg.label, v, alpha)


def test_boundary_midpoints_are_separable(rng):
    for p16 in (0.0625, 0.3):
        pts = [pt for seg in B.hs_boundary(p16, 8) for pt in seg.points]
        weights = [B.hs_point_state(p16, v, a).p for v, a in pts]
        for _ in range(60):
            i, j = rng.integers(0, len(weights), 2)
            mid = states.GhzProbabilities((weights[i] + weights[j]) / 2.0)
            assert criteria(mid).verdict is Verdict.SEPARABLE


def test_degenerate_weightless_family_edge():
    # at p16 = 1/2 the family collapses to a classical two-pole mixture;
    # the chart still emits and every point reports a boundary ratio
    rows = B.fig2_rows(B.hs_boundary(0.5, 5), 0.5)
    assert all(abs(lm - 1.0) < 1e-12 for *_, lm in rows)


def test_input_validation():
    with pytest.raises(ValueError):
        B.hs_boundary(0.7, 10)
    with pytest.raises(ValueError):
        B.hs_boundary(0.1, 1)
    with pytest.raises(ValueError):
        B.hs_curve_parametrization(0.1, "LM", 0.9)
    with pytest.raises(ValueError):
        B.hs_curve_parametrization(0.1, "nope", 0.1)


def test_arc_parametrization_endpoints():
    assert B.hs_curve_parametrization(0.3, "LM", 0.0) == pytest.approx((1.0, 6.0))
    assert B.hs_curve_parametrization(0.3, "LM", 0.5) == pytest.approx(
        (2.0 / 3.0, 8.0))
    assert B.hs_curve_parametrization(0.3, "KN", 0.5) == pytest.approx(
        (1.0 / 3.0, 6.0))
    assert B.hs_curve_parametrization(0.3, "KN", 0.0) == pytest.approx((0.0, 8.0))
    # at p16 = 0 the below-diagonal arcs pinch onto the line intersection
    v, alpha = B.hs_curve_parametrization(0.0, "belowDiag", 0.5)
    assert alpha == pytest.approx(4.0 + 6.0 * v, abs=1e-10)


def test_arc_parametrization_matches_implicit_forms():
    p16 = 0.0625
    u = 1.0 - 2.0 * p16
    for s in np.linspace(0.0, 0.5, 41):
        v, alpha = B.hs_curve_parametrization(p16, "LM", s)
        assert B.right_arc_v(alpha) == pytest.approx(v, abs=1e-10)
        v, alpha = B.hs_curve_parametrization(p16, "KN", s)
        assert B.left_arc_v(alpha) == pytest.approx(v, abs=1e-10)
    for s in np.linspace(B.s1_limit(u), 0.5, 31):
        v, alpha = B.hs_curve_parametrization(p16, "belowDiagVU", s)
        assert B.left_arc_below_alpha(u, v) == pytest.approx(alpha, abs=1e-10)
    for s in np.linspace(0.0, B.s4_limit(u), 31):
        v, alpha = B.hs_curve_parametrization(p16, "belowDiagST", s)
        assert B.right_arc_below_alpha(u, v) == pytest.approx(alpha, abs=1e-10)


def test_arc_endpoints_hit_switch_and_physical_faces():
    for u in (0.76, 0.875, 0.99):
        p16 = (1.0 - u) / 2.0
        v, alpha = B.hs_curve_parametrization(p16, "belowDiagVU", B.s1_limit(u))
        assert alpha == pytest.approx(8.0 * u, abs=1e-9)
        assert v == pytest.approx(B.v1_endpoint(u), abs=1e-9)
        v, alpha = B.hs_curve_parametrization(p16, "belowDiagVU", 0.5)
        assert alpha == pytest.approx(B.physical_alpha(u), abs=1e-9)
        assert v == pytest.approx(B.v2_endpoint(u), abs=1e-9)
        v, alpha = B.hs_curve_parametrization(p16, "belowDiagST", 0.0)
        assert alpha == pytest.approx(B.physical_alpha(u), abs=1e-9)
        assert v == pytest.approx(B.v3_endpoint(u), abs=1e-9)
        v, alpha = B.hs_curve_parametrization(p16, "belowDiagST", B.s4_limit(u))
        assert alpha == pytest.approx(8.0 * u, abs=1e-9)
        assert v == pytest.approx(B.v4_endpoint(u), abs=1e-9)


# ---------------------------------------------------------------------------
# symmetric-family chart

def test_surface_heights_at_landmarks():
    assert B.lower_sheet_a(1.0, 1.0) == pytest.approx(1.0)
    assert B.upper_sheet_a(1.0, 1.0) == pytest.approx(1.0)
    assert B.parabola_a(1.0, +1) == pytest.approx(1.0)
    assert B.parabola_a(-1.0, +1) == pytest.approx(0.0)
    # the two sheets agree along their common edge q = p
    for t in np.linspace(-1, 1, 21):
        assert B.lower_sheet_a(t, t) == pytest.approx(B.upper_sheet_a(t, t), abs=1e-14)
        assert B.lower_sheet_a(t, t) == pytest.approx(1.0)


def test_parabola_is_surface_edge():
    for q in np.linspace(-1, 1, 31):
        assert B.parabola_a(q, +1) == pytest.approx(
            float(B.lower_sheet_a(q, 1.0)), abs=1e-14)


def test_sym_surface_segments_and_saturation():
    segs = B.sym_surface(1.0 / 16.0, 9)
    labels = {s.label for s in segs}
    assert labels == {"curvedSurfacePlus", "curvedSurfaceMinus",
                      "planeTriangle", "parabola"}
    for seg in segs:
        for q, p, a in seg.points:
            lm = l_min(B.sym_point_state(q, p, a, 1.0 / 16.0))
            assert abs(lm - 1.0) <= 1e-8, (seg.label, q, p, a)


def test_sym_surface_mesh_satisfies_sheet_equations():
    segs = B.sym_surface(1.0 / 16.0, 12)
    for seg in segs:
        for q, p, a in seg.points:
            if seg.source.startswith("curved:lower"):
                assert abs(a) == pytest.approx(float(B.lower_sheet_a(q, p)),
                                               abs=1e-12)
                assert q <= p + 1e-12
            elif seg.source.startswith("curved:upper"):
                assert abs(a) == pytest.approx(float(B.upper_sheet_a(q, p)),
                                               abs=1e-12)
                assert q >= p - 1e-12


def test_sym_point_state_lift():
    st0 = B.sym_point_state(0.3, -0.2, 0.5, 1.0 / 16.0)
    x = states.as_elements(st0)
    assert x.d.min() == pytest.approx(1.0 / 16.0)
    assert 16.0 * x.a[0] == pytest.approx(0.3)
    assert 16.0 * x.a[3] == pytest.approx(-0.2)
    assert 16.0 * x.a[1] == pytest.approx(0.5)
    assert states.is_symmetric_family(st0)
    # depressed-minimum lift keeps the scale for smaller omega
    st1 = B.sym_point_state(0.3, -0.2, 0.5, 0.04)
    assert states.as_elements(st1).d.min() == pytest.approx(0.04)
    with pytest.raises(states.InvalidStateError):
        B.sym_point_state(0.0, 0.0, 0.0, 0.2)


def test_sym_surface_midpoints_separable(rng):
    segs = B.sym_surface(1.0 / 16.0, 6)
    pts = [pt for seg in segs for pt in seg.points]
    for _ in range(60):
        i, j = rng.integers(0, len(pts), 2)
        wa = B.sym_point_state(*pts[i], 1.0 / 16.0).p
        wb = B.sym_point_state(*pts[j], 1.0 / 16.0).p
        mid = states.GhzProbabilities((wa + wb) / 2.0)
        assert criteria(mid).verdict is Verdict.SEPARABLE


def test_fig_rows_shapes():
    rows2 = B.fig2_rows(B.hs_boundary(0.3, 5), 0.3)
    assert len(rows2) == 4 * 5 and len(rows2[0]) == 4
    rows3 = B.fig3_rows(B.sym_surface(1.0 / 16.0, 4), 1.0 / 16.0)
    assert len(rows3[0]) == 5
