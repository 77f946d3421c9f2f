"""Matched witnesses and the four separability criteria.

For a state with correlations R the best witness in the symmetric
sector maximizes ``sum_{i>=8} M_i R_i / g~``; that maximum, ``R~``, has
a four-case closed form in the anti-diagonal triple
``(R_8, R'_9, R_15)``.  Matching the diagonal part then gives

    L_min = 1 / (1 - 16 Omega + R~),   Omega = min_i d_i,

and the state is certified entangled when ``L_min < 1``.  For
permutation-symmetric states the criteria are also sufficient.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .states import (
    GhzProbabilities,
    StateLike,
    as_correlations,
    as_elements,
    is_symmetric_family,
)
from .witness import WitnessParams, g_tilde, polyhedron_vertex, vertex_for_pair

RP9_EPS = 1e-10       # |R'_9| below this is treated as zero
CASE_BAND = 1e-9      # tolerance band for case-condition boundaries
VERDICT_TOL = 1e-10   # margin tolerance separating verdicts


class CriterionCase(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


class Verdict(enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"
    ENTANGLED_BY_NECESSITY = "EntangledByNecessity"
    UNDETERMINED = "Undetermined"


def _rtilde_candidates(r8: float, rp9: float, r15: float) -> list[tuple[CriterionCase, float]]:
    """Anti-diagonal overlap values that are attained by some witness.

    Cases I and II (the corner witnesses) are always attainable; the two
    curved-arc cases only when the corresponding ratio passes 1/6, which
    is exactly when the arc's stationary point lies on the arc.
    """
    cands = [
        (CriterionCase.I, abs(rp9 - r8 - r15)),
        (CriterionCase.II, abs(rp9 / 3.0 + r8 + r15)),
    ]
    if abs(rp9) < RP9_EPS:
        if r15 != 0.0:
            cands.append((CriterionCase.III, abs(r15 - r8)))
        if r8 != 0.0:
            cands.append((CriterionCase.IV, abs(r8 - r15)))
        return cands
    if r15 / rp9 >= 1.0 / 6.0 - CASE_BAND:
        cands.append((CriterionCase.III,
                      abs(r15 - r8 + rp9 / 3.0 + rp9 * rp9 / (18.0 * r15))))
    if r8 / rp9 >= 1.0 / 6.0 - CASE_BAND:
        cands.append((CriterionCase.IV,
                      abs(r8 - r15 + rp9 / 3.0 + rp9 * rp9 / (18.0 * r8))))
    return cands


def r_tilde(r8: float, rp9: float, r15: float) -> tuple[float, CriterionCase]:
    """Maximal anti-diagonal overlap per unit g~ and the case attaining it.

    Exact ties (overlapping case conditions at their boundaries) resolve
    to the latest case, so degenerate anti-diagonal patterns report the
    arc cases they saturate.
    """
    cands = _rtilde_candidates(r8, rp9, r15)
    best_case, best = cands[0]
    for case, value in cands[1:]:
        if value >= best:
            best_case, best = case, value
    return best, best_case


def omega(state: StateLike) -> float:
    """Half the minimal diagonal pair sum, i.e. the minimal d_i."""
    return float(as_elements(state).d.min())


def l_min(state: StateLike) -> float:
    """Minimal witness ratio; < 1 certifies entanglement, inf when trivial."""
    x = as_elements(state)
    r = as_correlations(state)
    rt, _ = r_tilde(r.r(8), r.rp9, r.r(15))
    denom = 1.0 - 16.0 * float(x.d.min()) + rt
    if denom <= 1e-15:
        return math.inf
    return 1.0 / denom


def matched_witness(state: StateLike) -> WitnessParams:
    """Witness attaining L_min for the given state.

    The anti-diagonal triple is placed at the case-dependent optimum of
    the phase-maximum region (corner or arc point) and the diagonal part
    at the polyhedron vertex of the minimal diagonal pair; the overall
    anti-diagonal sign enforces sum_i M_i R_i >= 0.
    """
    x = as_elements(state)
    r = as_correlations(state)
    r8, rp9, r15 = r.r(8), r.rp9, r.r(15)
    _, case = r_tilde(r8, rp9, r15)
    if case is CriterionCase.I:
        xx, yy = -1.0, -1.0
    elif case is CriterionCase.II:
        xx, yy = 3.0, 3.0
    elif case is CriterionCase.III:
        xx = -9.0 * r15 / (3.0 * r15 + rp9)
        yy = 3.0 + 0.5 * (9.0 / xx - xx)
    else:
        yy = -9.0 * r8 / (3.0 * r8 + rp9)
        xx = 3.0 + 0.5 * (9.0 / yy - yy)
    overlap = xx * r8 + rp9 + yy * r15
    m9 = 1.0 if overlap >= 0.0 else -1.0
    gt = g_tilde(xx, 1.0, yy)
    pair = int(np.argmin(x.d)) + 1
    diagonal = gt * polyhedron_vertex(*vertex_for_pair(pair))
    return WitnessParams.from_sector(diagonal, m8=xx * m9, m9=m9, m15=yy * m9)


def ppt_criterion(state: StateLike) -> tuple[bool, float]:
    """max_i |a_i| <= min_j d_j test; margin = max|a| - min d."""
    x = as_elements(state)
    margin = float(np.abs(x.a).max() - x.d.min())
    return margin <= VERDICT_TOL, margin


def kay_condition(state: StateLike) -> bool:
    """True when R_9 R_15 <= 0 and R_9 R_8 <= 0 (R_9 as class representative).

    When it holds, positivity of the partial transposes and full
    separability coincide for GHZ-diagonal states.
    """
    r = as_correlations(state)
    r9 = r.r(9)
    return r9 * r.r(15) <= 0.0 and r9 * r.r(8) <= 0.0


@dataclass(frozen=True)
class CriterionReport:
    omega: float
    r_tilde: float
    l_min: float
    margins: dict[CriterionCase, float]
    active_case: CriterionCase
    verdict: Verdict
    matched_witness: WitnessParams


def _bare_margins(x, r) -> dict[CriterionCase, float]:
    """The four displayed inequalities as LHS - RHS (negative = satisfied).

    Criteria III and IV divide by R_15 / R_8; a vanishing divisor makes
    the criterion inapplicable, reported as -inf.
    """
    om = float(x.d.min())
    r8, rp9, r15 = r.r(8), r.rp9, r.r(15)
    margins = {
        CriterionCase.I: abs(float(x.a[0])) - om,
        CriterionCase.II: abs(float(x.a[3] + x.a[5] + x.a[6])) / 3.0 - om,
    }
    if r15 != 0.0:
        margins[CriterionCase.III] = (
            abs(r15 - r8 + rp9 / 3.0 + rp9 * rp9 / (18.0 * r15)) - 16.0 * om)
    else:
        margins[CriterionCase.III] = -math.inf
    if r8 != 0.0:
        margins[CriterionCase.IV] = (
            abs(r8 - r15 + rp9 / 3.0 + rp9 * rp9 / (18.0 * r8)) - 16.0 * om)
    else:
        margins[CriterionCase.IV] = -math.inf
    return margins


def criteria(state: StateLike) -> CriterionReport:
    """Evaluate all four criteria and classify the state.

    Violation of the (case-gated) criteria is necessary for any
    GHZ-diagonal state, and the whole set is also sufficient on the
    permutation-symmetric family; elsewhere a passing state stays
    Undetermined.
    """
    x = as_elements(state)
    r = as_correlations(state)
    om = float(x.d.min())
    rt, case = r_tilde(r.r(8), r.rp9, r.r(15))
    denom = 1.0 - 16.0 * om + rt
    lm = math.inf if denom <= 1e-15 else 1.0 / denom
    entangled = rt - 16.0 * om > VERDICT_TOL
    symmetric = is_symmetric_family(r)
    if entangled:
        verdict = Verdict.ENTANGLED if symmetric else Verdict.ENTANGLED_BY_NECESSITY
    else:
        verdict = Verdict.SEPARABLE if symmetric else Verdict.UNDETERMINED
    return CriterionReport(
        omega=om,
        r_tilde=rt,
        l_min=lm,
        margins=_bare_margins(x, r),
        active_case=case,
        verdict=verdict,
        matched_witness=matched_witness(state),
    )


def _json_float(v: float):
    return None if not math.isfinite(v) else float(v)


def report_json(state: GhzProbabilities) -> dict:
    """Full classification record in the report JSON layout."""
    rep = criteria(state)
    ppt_ok, _ = ppt_criterion(state)
    return {
        "omega": float(rep.omega),
        "r_tilde": float(rep.r_tilde),
        "case": rep.active_case.value,
        "l_min": _json_float(rep.l_min),
        "margins": {c.value: _json_float(m) for c, m in rep.margins.items()},
        "verdict": rep.verdict.value,
        "ppt": bool(ppt_ok),
        "kay": bool(kay_condition(state)),
        "witness": rep.matched_witness.to_json(),
    }
