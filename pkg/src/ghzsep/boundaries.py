"""Analytic separable-set boundaries as labeled sampled segments.

Two charts are emitted.  For the highly symmetric family the boundary
lives in the (v, alpha) plane at fixed p16 (u = 1 - 2 p16): straight
criterion-I lines at alpha = 8 and alpha = 6, criterion-IV arcs, and for
0 < p16 < 1/8 a physical face p1 = 0 at alpha = 14u/(1+u).  For the
permutation-symmetric family the boundary lives in the scaled element
coordinates (rho_{1,16}, rho_{4,13}, rho_{2,15}) / Omega: two curved
surfaces, two plane triangles, and parabola arcs where a curved surface
meets the |rho_{4,13}| = Omega faces.

Only data is produced here; rendering lives with the CLI layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import (
    GhzProbabilities,
    HighlySymmetricParams,
    InvalidStateError,
    XMatrixElements,
    elements_to_probabilities,
    make_highly_symmetric,
)

REGIME_SPLIT = 0.125  # p16 value separating the hexagonal and quadrilateral shapes


@dataclass(frozen=True)
class BoundarySegment:
    label: str
    points: tuple[tuple[float, ...], ...]
    source: str


# ---------------------------------------------------------------------------
# highly symmetric family, (v, alpha) chart

def left_arc_v(alpha):
    """Left criterion-IV arc (KN, PV): v as a function of alpha in [6, 8]."""
    alpha = np.asarray(alpha, dtype=float)
    return (18.0 - alpha - np.sqrt((alpha + 42.0) * (alpha - 6.0))) / 36.0


def right_arc_v(alpha):
    """Right criterion-IV arc (LM, QS): v as a function of alpha in [6, 8]."""
    alpha = np.asarray(alpha, dtype=float)
    return (32.0 - alpha + np.sqrt((56.0 - alpha) * (8.0 - alpha))) / 36.0


def left_arc_below_alpha(u: float, v):
    """Below-diagonal continuation of the left arc (UV)."""
    v = np.asarray(v, dtype=float)
    a1 = 3.0 * u + (7.0 + u) * v
    b1 = 4.0 * u * (4.0 - 37.0 * v + 9.0 * v * v)
    return a1 + np.sqrt(a1 * a1 + b1)


def right_arc_below_alpha(u: float, v):
    """Below-diagonal continuation of the right arc (ST)."""
    v = np.asarray(v, dtype=float)
    a2 = 4.0 * u + (7.0 - u) * v
    b2 = 4.0 * u * (3.0 * v + 2.0) ** 2
    return a2 - np.sqrt(a2 * a2 - b2)


def v1_endpoint(u: float) -> float:
    return (9.0 - 4.0 * u - math.sqrt((4.0 * u + 21.0) * (4.0 * u - 3.0))) / 18.0


def v2_endpoint(u: float) -> float:
    return (5.0 * u - 2.0) / (3.0 * (1.0 + u))


def v3_endpoint(u: float) -> float:
    return (4.0 - 3.0 * u) / (1.0 + u)


def v4_endpoint(u: float) -> float:
    # continuity with the ST arc at alpha = 8u requires the plus branch
    return (4.0 - u + math.sqrt((7.0 - u) * (1.0 - u))) * 2.0 / 9.0


def physical_alpha(u: float) -> float:
    """alpha of the p1 = 0 face."""
    return 14.0 * u / (1.0 + u)


def s1_limit(u: float) -> float:
    return (4.0 * u + 1.0 - math.sqrt((4.0 * u + 21.0) * (4.0 * u - 3.0))) / 8.0


def s4_limit(u: float) -> float:
    return (2.0 - u - math.sqrt((1.0 - u) * (7.0 - u))) / 2.0


def hs_point_state(p16: float, v: float, alpha: float) -> GhzProbabilities:
    """Lift a (v, alpha) chart point to the full weight vector."""
    return make_highly_symmetric(HighlySymmetricParams.from_point(p16, v, alpha))


def hs_curve_parametrization(p16: float, variant: str, sin2phi: float) -> tuple[float, float]:
    """(v, alpha) of a boundary-arc point from its phase parameter sin^2(phi).

    Variants "LM" and "KN" cover the arcs above the diagonal switch
    alpha = 8u; "belowDiagVU" and "belowDiagST" their continuations
    below it ("belowDiag" is accepted as an alias of the ST/right
    branch).  The phase parameter runs over [0, 1/2].
    """
    s = float(sin2phi)
    if not 0.0 <= s <= 0.5 + 1e-12:
        raise ValueError(f"sin2phi must lie in [0, 1/2], got {s!r}")
    if variant == "LM":
        return 1.0 / (1.0 + s), (14.0 - 8.0 * (1.0 - s) ** 2) / (1.0 + s)
    if variant == "KN":
        return s / (1.0 + s), (14.0 * s + 8.0 * (1.0 - s) ** 2) / (1.0 + s)
    if variant in ("belowDiag", "belowDiagST", "belowDiagVU"):
        u = 1.0 - 2.0 * p16
        if u <= 0.0:
            raise ValueError("below-diagonal arcs need p16 < 1/2")
        branch = 1.0 if variant == "belowDiagVU" else -1.0
        x = (1.0 - s) * (8.0 * s - 1.0)
        num = 1.0 + s + branch * x
        den = (1.0 + s) * u + branch * x
        if abs(num) < 1e-13 and abs(den) < 1e-13:
            alpha = 7.0 * u  # both arcs pinch onto alpha = 8u = 7u only at u = 1
        elif abs(den) < 1e-13:
            raise ValueError("sin2phi outside the admissible arc range")
        else:
            alpha = 7.0 * u * num / den
        k = 8.0 * (1.0 - 7.0 * u / alpha) / (1.0 + s)
        r8 = branch * k * (1.0 - s) ** 2
        v = alpha * (1.0 - r8 / u) / 14.0
        return float(v), float(alpha)
    raise ValueError(f"unknown arc variant {variant!r}")


def _seg(label: str, source: str, vv, aa) -> BoundarySegment:
    pts = tuple((float(v), float(a)) for v, a in zip(np.atleast_1d(vv), np.atleast_1d(aa)))
    return BoundarySegment(label=label, points=pts, source=source)


def hs_boundary(p16: float, n: int) -> list[BoundarySegment]:
    """Boundary segments of the separable region at fixed p16.

    Three shapes: a triangle G-H-J at p16 = 0, the hexagon
    P-Q-S-T-U-V for 0 < p16 <= 1/8 (the straight piece UT being the
    physical face p1 = 0), and the quadrilateral K-L-M-N beyond 1/8.
    At exactly 1/8 the hexagon degenerates into the quadrilateral.
    """
    if not 0.0 <= p16 <= 0.5:
        raise ValueError(f"p16 must lie in [0, 1/2], got {p16!r}")
    if n < 2:
        raise ValueError("need at least 2 samples per segment")
    u = 1.0 - 2.0 * p16
    vs = np.linspace
    if p16 == 0.0:
        return [
            _seg("GH", "alpha=8", vs(0.0, 2.0 / 3.0, n), np.full(n, 8.0)),
            _seg("HJ", "alpha=4+6v", vs(2.0 / 3.0, 0.5, n), 4.0 + 6.0 * vs(2.0 / 3.0, 0.5, n)),
            _seg("GJ", "alpha=8-2v", vs(0.5, 0.0, n), 8.0 - 2.0 * vs(0.5, 0.0, n)),
        ]
    if p16 > REGIME_SPLIT:
        al_down = vs(8.0, 6.0, n)
        al_up = vs(6.0, 8.0, n)
        return [
            _seg("KL", "alpha=8", vs(0.0, 2.0 / 3.0, n), np.full(n, 8.0)),
            _seg("LM", "criterionIV:right-arc", right_arc_v(al_down), al_down),
            _seg("MN", "alpha=6", vs(1.0, 1.0 / 3.0, n), np.full(n, 6.0)),
            _seg("KN", "criterionIV:left-arc", left_arc_v(al_up), al_up),
        ]
    v1, v2, v3, v4 = (v1_endpoint(u), v2_endpoint(u), v3_endpoint(u), v4_endpoint(u))
    a_sw = 8.0 * u
    a_ph = physical_alpha(u)
    al_qs = vs(8.0, a_sw, n)
    v_st = vs(v4, v3, n)
    v_ut = vs(v3, v2, n)
    v_uv = vs(v2, v1, n)
    al_pv = vs(a_sw, 8.0, n)
    return [
        _seg("PQ", "alpha=8", vs(0.0, 2.0 / 3.0, n), np.full(n, 8.0)),
        _seg("QS", "criterionIV:right-arc", right_arc_v(al_qs), al_qs),
        _seg("ST", "criterionIV:right-arc-below", v_st, right_arc_below_alpha(u, v_st)),
        _seg("UT", "p1=0", v_ut, np.full(n, a_ph)),
        _seg("UV", "criterionIV:left-arc-below", v_uv, left_arc_below_alpha(u, v_uv)),
        _seg("PV", "criterionIV:left-arc", left_arc_v(al_pv), al_pv),
    ]


# ---------------------------------------------------------------------------
# symmetric family, element-ratio chart

def lower_sheet_a(q, p):
    """|rho_{2,15}|/Omega on the curved boundary sheet over q <= p."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    return 0.5 * (1.0 - p + np.sqrt((1.0 + p) * (1.0 + q)))


def upper_sheet_a(q, p):
    """|rho_{2,15}|/Omega on the curved boundary sheet over q >= p."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    return 0.5 * (1.0 + p + np.sqrt((1.0 - p) * (1.0 - q)))


def boundary_height(q, p):
    """Separable-set height |rho_{2,15}|/Omega over a base point (q, p)."""
    return np.where(np.asarray(q) <= np.asarray(p),
                    lower_sheet_a(q, p), upper_sheet_a(q, p))


def parabola_a(q, face: int = +1):
    """Parabola arc where the curved sheet meets rho_{4,13} = +/-Omega."""
    q = np.asarray(q, dtype=float)
    if face >= 0:
        return np.sqrt((1.0 + q) / 2.0)
    return np.sqrt((1.0 - q) / 2.0)


def sym_point_state(q: float, p: float, a: float, omega: float = 1.0 / 16.0) -> GhzProbabilities:
    """Lift scaled coordinates to a symmetric state with minimal pair omega.

    The minimal diagonal pair is placed on pair 1 and the remaining
    pairs share the rest of the trace, which requires omega <= 1/16.
    """
    if not 0.0 < omega <= 1.0 / 16.0 + 1e-15:
        raise InvalidStateError("omega must lie in (0, 1/16]")
    rest = (1.0 - 2.0 * omega) / 14.0
    d = np.full(8, rest)
    d[0] = omega
    avals = np.empty(8)
    avals[0] = q * omega
    for i in (1, 2, 4, 7):
        avals[i] = a * omega
    for i in (3, 5, 6):
        avals[i] = p * omega
    return elements_to_probabilities(XMatrixElements(d=d, a=avals))


def _seg3(label: str, source: str, pts) -> BoundarySegment:
    return BoundarySegment(label=label, source=source,
                           points=tuple((float(q), float(p), float(a)) for q, p, a in pts))


def sym_surface(omega: float, grid: int) -> list[BoundarySegment]:
    """Boundary pieces of the symmetric separable set, in units of omega.

    Points are (rho_{1,16}, rho_{4,13}, rho_{2,15}) / Omega triples.
    Both curved sheets, the plane triangles at rho_{1,16} = +/-Omega,
    the parabola arcs at rho_{4,13} = +/-Omega, and the mirror images
    under rho_{2,15} -> -rho_{2,15} are emitted.
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    if grid < 2:
        raise ValueError("grid must be at least 2")
    n = int(grid)
    axis = np.linspace(-1.0, 1.0, n)
    plus_pts, minus_pts = [], []
    for p in axis:
        for q in np.linspace(-1.0, p, n):
            plus_pts.append((q, p, float(lower_sheet_a(q, p))))
        for q in np.linspace(p, 1.0, n):
            minus_pts.append((q, p, float(upper_sheet_a(q, p))))
    tri_pos, tri_neg = [], []
    for p in axis:
        for a in np.linspace(-(1.0 + p) / 2.0, (1.0 + p) / 2.0, n):
            tri_pos.append((1.0, p, a))
        for a in np.linspace(-(1.0 - p) / 2.0, (1.0 - p) / 2.0, n):
            tri_neg.append((-1.0, p, a))
    par_pos = [(q, 1.0, float(parabola_a(q, +1))) for q in axis]
    par_neg = [(q, -1.0, float(parabola_a(q, -1))) for q in axis]

    def mirrored(pts):
        return [(q, p, -a) for q, p, a in pts]

    return [
        _seg3("curvedSurfacePlus", "curved:lower", plus_pts),
        _seg3("curvedSurfaceMinus", "curved:upper", minus_pts),
        _seg3("curvedSurfacePlus", "curved:lower:mirror", mirrored(plus_pts)),
        _seg3("curvedSurfaceMinus", "curved:upper:mirror", mirrored(minus_pts)),
        _seg3("planeTriangle", "plane:q=+1", tri_pos),
        _seg3("planeTriangle", "plane:q=-1", tri_neg),
        _seg3("parabola", "parabola:p=+1", par_pos),
        _seg3("parabola", "parabola:p=-1", par_neg),
        _seg3("parabola", "parabola:p=+1:mirror", mirrored(par_pos)),
        _seg3("parabola", "parabola:p=-1:mirror", mirrored(par_neg)),
    ]


# ---------------------------------------------------------------------------
# tabular emission

def fig2_rows(segments: list[BoundarySegment], p16: float) -> list[tuple]:
    """(label, v, alpha, l_min) rows for the (v, alpha) chart."""
    from .matching import l_min as _l_min

    rows = []
    for seg in segments:
        for v, alpha in seg.points:
            lm = _l_min(hs_point_state(p16, v, alpha))
            rows.append((seg.label, v, alpha, lm))
    return rows


def fig3_rows(segments: list[BoundarySegment], omega: float) -> list[tuple]:
    """(label, q, p, a, l_min) rows for the element-ratio chart."""
    from .matching import l_min as _l_min

    rows = []
    for seg in segments:
        for q, p, a in seg.points:
            lm = _l_min(sym_point_state(q, p, a, omega))
            rows.append((seg.label, q, p, a, lm))
    return rows
