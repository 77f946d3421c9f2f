"""Explicit product-state mixtures sitting on the separability boundary.

Every constructor returns a list of weighted pure product terms, never a
pre-assembled matrix, so separability is witnessed by construction.
The building blocks are equatorial product states

    |psi(phis)> = (1/4) (|0> + e^{i phi_1}|1>) ... (|0> + e^{i phi_4}|1>)

averaged over phase-shift patterns that cancel the unwanted Pauli
correlations, plus computational-basis projectors for diagonal weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _iterprod

import numpy as np

import numpy.typing as npt

from .boundaries import hs_curve_parametrization
from .states import StateLike, density_matrix, _freeze
from .witness import ProductState

WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class DecompositionTerm:
    """One pure product term: a weight and a product state.

    ``basis`` records terms that are computational-basis projectors (for
    those, theta/phi hold the equivalent pole angles)."""

    weight: float
    theta: np.ndarray
    phi: np.ndarray
    basis: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "theta", _freeze(self.theta))
        object.__setattr__(self, "phi", _freeze(self.phi))

    def product_state(self) -> ProductState:
        return ProductState(theta=self.theta, phi=self.phi)

    def projector(self) -> np.ndarray:
        vec = self.product_state().state_vector()
        return np.outer(vec, vec.conj())


@dataclass(frozen=True)
class SeparableDecomposition:
    terms: tuple[DecompositionTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        bad = [t.weight for t in terms if t.weight < -WEIGHT_TOL]
        if bad:
            raise ValueError(f"negative mixture weight {min(bad):.3e}")
        total = sum(t.weight for t in terms)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"mixture weights sum to {total!r}")
        object.__setattr__(self, "terms", terms)

    def assemble(self) -> np.ndarray:
        rho = np.zeros((16, 16), dtype=complex)
        for t in self.terms:
            if t.weight != 0.0:
                rho += t.weight * t.projector()
        return rho

    def to_json(self, target_residual: float | None = None) -> dict:
        out = []
        for t in self.terms:
            if t.basis is not None:
                out.append({"w": float(t.weight), "basis": t.basis})
            else:
                out.append({"w": float(t.weight),
                            "theta": [float(v) for v in t.theta],
                            "phi": [float(v) for v in t.phi]})
        doc: dict = {"terms": out}
        if target_residual is not None:
            doc["target_residual"] = float(target_residual)
        return doc

    @classmethod
    def from_json(cls, obj: dict) -> "SeparableDecomposition":
        terms = []
        for item in obj["terms"]:
            if "basis" in item:
                terms.append(_basis_term(float(item["w"]), item["basis"]))
            else:
                terms.append(DecompositionTerm(
                    weight=float(item["w"]),
                    theta=np.asarray(item["theta"], dtype=float),
                    phi=np.asarray(item["phi"], dtype=float)))
        return cls(tuple(terms))


def _basis_term(weight: float, bits: str) -> DecompositionTerm:
    if len(bits) != 4 or set(bits) - {"0", "1"}:
        raise ValueError(f"basis label must be 4 bits, got {bits!r}")
    theta = np.array([0.0 if b == "0" else np.pi for b in bits])
    return DecompositionTerm(weight=weight, theta=theta, phi=np.zeros(4),
                             basis=bits)


def _phase_term(weight: float, phis) -> DecompositionTerm:
    return DecompositionTerm(weight=weight,
                             theta=np.full(4, np.pi / 2.0),
                             phi=np.asarray(phis, dtype=float))


def _scaled(terms, factor: float) -> list[DecompositionTerm]:
    return [DecompositionTerm(weight=t.weight * factor, theta=t.theta,
                              phi=t.phi, basis=t.basis) for t in terms]


# ---------------------------------------------------------------------------
# phase-averaged families

def rho3(phi: float, sign: int = +1) -> SeparableDecomposition:
    """Real phase-averaged mixture built on |psi(p1, p2, p3)>.

    The three free phases are set equal; the fourth qubit carries the
    compensating phase -(p1+p2+p3) (shifted by pi for sign = -1).  Eight
    pi-shift patterns and the complex conjugate are averaged, which
    leaves a flat diagonal and only the eight GHZ-sector correlations.
    Permutation-symmetric exactly at phi = i pi/4.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    terms = []
    for conj in (1.0, -1.0):
        for k in _iterprod((0, 1), repeat=3):
            p123 = np.array([phi + k[0] * np.pi, phi + k[1] * np.pi,
                             phi + k[2] * np.pi])
            p4 = -p123.sum() + (0.0 if sign > 0 else np.pi)
            phis = conj * np.append(p123, p4)
            terms.append(_phase_term(1.0 / 16.0, phis))
    return SeparableDecomposition(tuple(terms))


def rho4(q1: float, q2: float, sign: int = +1) -> SeparableDecomposition:
    """Mixture (1-q1-q2) rho3(0) + q1 rho3(pi/4) + q2 rho3(pi/2)."""
    if q1 < -WEIGHT_TOL or q2 < -WEIGHT_TOL or q1 + q2 > 1.0 + WEIGHT_TOL:
        raise ValueError(f"weights (q1, q2) = ({q1!r}, {q2!r}) leave the simplex")
    terms = (_scaled(rho3(0.0, sign).terms, 1.0 - q1 - q2)
             + _scaled(rho3(np.pi / 4.0, sign).terms, q1)
             + _scaled(rho3(np.pi / 2.0, sign).terms, q2))
    return SeparableDecomposition(tuple(terms))


def line_state(p16: float, q1: float, q2: float, branch: str = "plus") -> SeparableDecomposition:
    """States on the straight criterion-I boundary lines.

    ``branch="plus"`` mixes u rho4(+) with weight p16 on each of the
    |0000> and |1111> projectors (the alpha = 8 lines and, for general
    q2, the whole plane triangle rho_{1,16} = u/16).  ``branch="minus"``
    realizes the alpha = 6 line, which exists only for p16 >= 1/8.
    """
    u = 1.0 - 2.0 * p16
    if branch == "plus":
        if p16 < -WEIGHT_TOL or u < -WEIGHT_TOL:
            raise ValueError(f"p16 = {p16!r} out of range")
        rho4_terms = _scaled(rho4(q1, q2, +1).terms, u)
        proj_w = p16
    elif branch == "minus":
        p1 = 1.0 - p16 - 7.0 * u / 6.0
        if p1 < -WEIGHT_TOL:
            raise ValueError(
                f"alpha = 6 line needs p16 >= 1/8; p1 would be {p1:.3e}")
        rho4_terms = _scaled(rho4(q1, q2, -1).terms, 1.0 - 2.0 * p1)
        proj_w = p1
    else:
        raise ValueError(f"unknown branch {branch!r}")
    terms = rho4_terms + [_basis_term(proj_w, "0000"), _basis_term(proj_w, "1111")]
    return SeparableDecomposition(tuple(terms))


def rho_pm(phi: float, sign: int = +1) -> SeparableDecomposition:
    """Parity-averaged equatorial mixture.

    Averages |psi(phi + m pi)> over the eight patterns m of fixed
    parity (even for sign = +1, odd for -1) together with the conjugate
    family at -phi, which cancels the odd-sine correlations and leaves
    an X-shaped state: cos^4 and sin^4 weights on the two pure
    GHZ-sector correlations and cos^2 sin^2 on the six mixed ones, all
    with the chosen sign.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    want = 0 if sign > 0 else 1
    terms = []
    for base in (phi, -phi):
        for m in _iterprod((0, 1), repeat=4):
            if sum(m) % 2 != want:
                continue
            terms.append(_phase_term(1.0 / 16.0, [base + mi * np.pi for mi in m]))
    return SeparableDecomposition(tuple(terms))


def _rho5_terms(phi: float, s: float, upper: bool) -> list[DecompositionTerm]:
    """(rho_-+(phi) + s rho_+-(pi/2)) / (1 + s); upper picks the minus main."""
    main = rho_pm(phi, -1 if upper else +1)
    extra = rho_pm(np.pi / 2.0, +1 if upper else -1)
    return (_scaled(main.terms, 1.0 / (1.0 + s))
            + _scaled(extra.terms, s / (1.0 + s)))


def curve_state(p16: float, variant: str, sin2phi: float) -> SeparableDecomposition:
    """States on the criterion-IV boundary arcs of the (v, alpha) chart.

    Mixes the matched equatorial family with computational-pole weight:
    above the diagonal switch (variants "LM", "KN") the poles carry
    (1 - 8u/alpha)/2 each; below it ("belowDiagVU"/"belowDiagST",
    alias "belowDiag") the equatorial weight is 8(1 - 7u/alpha).
    Parameters whose weights turn negative are rejected.
    """
    u = 1.0 - 2.0 * p16
    s = float(sin2phi)
    _, alpha = hs_curve_parametrization(p16, variant, s)
    phi = math.asin(math.sqrt(s))
    upper = variant in ("LM", "belowDiag", "belowDiagST")
    if variant in ("LM", "KN"):
        # above the switch the first diagonal pair is heavy: fill with poles
        w_main = 8.0 * u / alpha
        fill = (1.0 - w_main) / 2.0
        filler = [_basis_term(fill, "0000"), _basis_term(fill, "1111")]
    else:
        # below it the first pair is the lightest: fill the other 14
        # computational states uniformly instead
        w_main = 8.0 * (1.0 - 7.0 * u / alpha)
        fill = (1.0 - w_main) / 14.0
        filler = [_basis_term(fill, format(b, "04b")) for b in range(1, 15)]
    if w_main < -WEIGHT_TOL or fill < -WEIGHT_TOL:
        raise ValueError(
            f"arc point (p16={p16!r}, {variant}, sin2phi={s!r}) has negative weight")
    terms = _scaled(_rho5_terms(phi, s, upper), w_main) + filler
    return SeparableDecomposition(tuple(terms))


# ---------------------------------------------------------------------------
# symmetric-family surface constructions

_SURFACE_VARIANTS = {
    # variant: (main sign, extra sign, extra phi, cos2phi sign, surface tag)
    "lowerPos": (+1, -1, np.pi / 2.0, +1, "curved:lower"),
    "lowerNeg": (+1, -1, 0.0, -1, "curved:lower"),
    "upperPos": (-1, +1, 0.0, -1, "curved:upper"),
    "upperNeg": (-1, +1, np.pi / 2.0, +1, "curved:upper"),
}


def sym_boundary_state(mu: float, phi: float, variant: str) -> SeparableDecomposition:
    """Curved-surface states (rho_main(phi) + mu rho_extra)/(1 + mu).

    "lowerPos" / "lowerNeg" cover the sheet over rho_{1,16} <= rho_{4,13}
    (positive / negative rho_{2,15} side); the "upperPos" / "upperNeg"
    variants are their single-qubit Z conjugates on the opposite sheet.
    """
    if variant not in _SURFACE_VARIANTS:
        raise ValueError(f"unknown surface variant {variant!r}")
    if mu < 0.0:
        raise ValueError("mu must be nonnegative")
    main_sign, extra_sign, extra_phi, c2_sign, _ = _SURFACE_VARIANTS[variant]
    if c2_sign * math.cos(2.0 * phi) < -1e-12:
        raise ValueError(f"variant {variant} needs cos(2 phi) sign {c2_sign:+d}")
    terms = (_scaled(rho_pm(phi, main_sign).terms, 1.0 / (1.0 + mu))
             + _scaled(rho_pm(extra_phi, extra_sign).terms, mu / (1.0 + mu)))
    return SeparableDecomposition(tuple(terms))


def surface_point_params(q: float, p: float, a: float) -> tuple[str, float, float]:
    """Invert a curved-surface point to its (variant, mu, phi) parameters.

    The sheet is chosen by q <= p versus q >= p, the variant inside the
    sheet by the sign of a.  The height |a| itself is implied by (q, p).
    """
    if q <= p:
        if p <= -1.0 + 1e-14:
            raise ValueError("sheet parameters diverge at the q = p = -1 edge")
        mu = (1.0 - p) / (1.0 + p)
        c2 = math.sqrt(max((1.0 + q) / (1.0 + p), 0.0))
        variant = "lowerPos" if a >= 0.0 else "lowerNeg"
        if variant == "lowerNeg":
            c2 = -c2
    else:
        if p >= 1.0 - 1e-14:
            raise ValueError("sheet parameters diverge at the q = p = 1 edge")
        mu = (1.0 + p) / (1.0 - p)
        c2 = -math.sqrt(max((1.0 - q) / (1.0 - p), 0.0))
        variant = "upperPos" if a >= 0.0 else "upperNeg"
        if variant == "upperNeg":
            c2 = -c2
    phi = 0.5 * math.acos(min(1.0, max(-1.0, c2)))
    return variant, mu, phi


def sym_point_decomposition(q: float, p: float, a: float) -> SeparableDecomposition:
    """Decomposition of the curved-surface point above (q, p) on a's side."""
    variant, mu, phi = surface_point_params(q, p, a)
    return sym_boundary_state(mu, phi, variant)


def parabola_face_state(q: float, a: float, face: int = +1) -> SeparableDecomposition:
    """States of the face rho_{4,13} = +/-Omega enclosed by the parabola.

    Realized as a two-point mixture of pure equatorial states: the face
    condition fixes the second moment of cos(2 phi) to (1 +/- q)/2 and
    the height fixes its mean, so a weighted pair (one point pinned at
    phi = 0) always suffices.
    """
    if face not in (+1, -1):
        raise ValueError("face must be +1 or -1")
    if face < 0:
        return mirror_decomposition(parabola_face_state(-q, -a, +1))
    s2 = (1.0 + q) / 2.0
    if a * a > s2 + 1e-12:
        raise ValueError("point lies outside the parabola")
    if abs(1.0 - a) < 1e-14:
        return rho_pm(0.0, +1)
    beta = (1.0 - a) ** 2 / (s2 + 1.0 - 2.0 * a)
    c2 = min(1.0, max(-1.0, (a - 1.0 + beta) / beta))
    phi2 = 0.5 * math.acos(c2)
    terms = (_scaled(rho_pm(0.0, +1).terms, 1.0 - beta)
             + _scaled(rho_pm(phi2, +1).terms, beta))
    return SeparableDecomposition(tuple(terms))


def triangle_face_state(p: float, a: float, q_sign: int = +1,
                        p16: float = 0.0) -> SeparableDecomposition:
    """States of the plane triangles rho_{1,16} = +/-Omega (Omega = u/16)."""
    if q_sign not in (+1, -1):
        raise ValueError("q_sign must be +1 or -1")
    if q_sign < 0:
        return mirror_decomposition(triangle_face_state(-p, -a, +1, p16))
    q1 = (1.0 - p) / 2.0
    q2 = (1.0 - q1 - a) / 2.0
    return line_state(p16, q1, q2, "plus")


def mirror_decomposition(d: SeparableDecomposition) -> SeparableDecomposition:
    """Conjugate every term by Z on qubit 1, flipping all anti-diagonals."""
    terms = []
    for t in d.terms:
        phi = np.array(t.phi)
        phi[0] += np.pi
        terms.append(DecompositionTerm(weight=t.weight, theta=t.theta,
                                       phi=phi, basis=t.basis))
    return SeparableDecomposition(tuple(terms))


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class VerifyReport:
    weight_sum: float
    min_weight: float
    purity_deviation: float
    ghz_diagonal_deviation: float
    target_residual: float
    l_min_assembled: float

    def to_json(self) -> dict:
        from .matching import _json_float
        return {
            "weight_sum": self.weight_sum,
            "min_weight": self.min_weight,
            "purity_deviation": self.purity_deviation,
            "ghz_diagonal_deviation": self.ghz_diagonal_deviation,
            "target_residual": self.target_residual,
            "l_min_assembled": _json_float(self.l_min_assembled),
        }


def _x_projection(rho: np.ndarray) -> np.ndarray:
    """Nearest GHZ-diagonal (X-shaped, pair-symmetric, real) matrix."""
    out = np.zeros((16, 16))
    idx = np.arange(8)
    d = (rho[idx, idx].real + rho[15 - idx, 15 - idx].real) / 2.0
    a = (rho[idx, 15 - idx].real + rho[15 - idx, idx].real) / 2.0
    out[idx, idx] = d
    out[15 - idx, 15 - idx] = d
    out[idx, 15 - idx] = a
    out[15 - idx, idx] = a
    return out


def assembled_state(d: SeparableDecomposition):
    """Project the assembled matrix onto GHZ-diagonal form and wrap it."""
    from .states import XMatrixElements, elements_to_probabilities

    rho = _x_projection(d.assemble())
    idx = np.arange(8)
    return elements_to_probabilities(
        XMatrixElements(d=rho[idx, idx], a=rho[idx, 15 - idx]))


def verify(d: SeparableDecomposition, target: StateLike | npt.NDArray) -> VerifyReport:
    """Check mixture validity, term purity, X shape and distance to target."""
    from .matching import l_min

    sigma = d.assemble()
    purity_dev = 0.0
    for t in d.terms:
        proj = t.projector()
        purity_dev = max(purity_dev,
                         float(np.abs(proj @ proj - proj).max()),
                         abs(float(np.trace(proj).real) - 1.0))
    ghz_dev = float(np.abs(sigma - _x_projection(sigma)).max())
    if isinstance(target, np.ndarray):
        rho_t = np.asarray(target, dtype=complex)
    else:
        rho_t = density_matrix(target).astype(complex)
    residual = float(np.abs(sigma - rho_t).max())
    return VerifyReport(
        weight_sum=float(sum(t.weight for t in d.terms)),
        min_weight=float(min(t.weight for t in d.terms)),
        purity_deviation=purity_dev,
        ghz_diagonal_deviation=ghz_dev,
        target_residual=residual,
        l_min_assembled=float(l_min(assembled_state(d))),
    )
