"""Witness operators over the GHZ-diagonal Pauli sector.

An operator ``M = sum_i M_i P_i`` over the 15 strings in
:data:`ghzsep.states.PAULI_LABELS` turns into the witness
``W = Lambda I - M`` once ``Lambda``, the maximal mean of M over pure
product states, is known.  In the symmetric sector (M_9 = ... = M_14)
the phase maximum ``g~`` has a closed form and, whenever the rescaled
diagonal coefficients sit inside a polyhedron spanned by eight sign
vertices, ``Lambda = g~`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _optim
from .states import PauliCorrelations, StateLike, as_correlations, _freeze

POLY_TOL = 1e-12

_HADAMARD4 = np.array([
    [1, 1, 1, 1],
    [1, -1, 1, -1],
    [1, 1, -1, -1],
    [1, -1, -1, 1],
], dtype=float)


@dataclass(frozen=True)
class WitnessParams:
    """Coefficients M_1..M_15 of the Pauli-sector operator."""

    M: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.M, dtype=float)
        if m.shape != (15,):
            raise ValueError(f"expected 15 coefficients, got shape {m.shape}")
        object.__setattr__(self, "M", _freeze(m))

    @property
    def symmetric_sector(self) -> bool:
        """True when M_9 = M_10 = ... = M_14 exactly."""
        return bool(np.all(self.M[8:14] == self.M[8]))

    @property
    def diagonal(self) -> np.ndarray:
        """M_1..M_7 (the ZZ-type coefficients)."""
        return self.M[:7]

    @classmethod
    def from_sector(cls, diagonal, m8: float, m9: float, m15: float) -> "WitnessParams":
        m = np.zeros(15)
        m[:7] = np.asarray(diagonal, dtype=float)
        m[7] = m8
        m[8:14] = m9
        m[14] = m15
        return cls(m)

    @classmethod
    def from_json(cls, obj: dict) -> "WitnessParams":
        return cls(np.asarray(obj["M"], dtype=float))

    def to_json(self) -> dict:
        return {"M": [float(v) for v in self.M]}


@dataclass(frozen=True)
class ProductState:
    """Pure product state with one (theta, phi) Bloch pair per qubit.

    Polar angles must lie in [0, pi]; azimuthal angles are wrapped into
    [0, 2 pi).
    """

    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=float)
        ph = np.asarray(self.phi, dtype=float)
        if th.shape != (4,) or ph.shape != (4,):
            raise ValueError("theta and phi must each hold 4 angles")
        if th.min() < -1e-9 or th.max() > np.pi + 1e-9:
            raise ValueError("polar angles must lie in [0, pi]")
        object.__setattr__(self, "theta", _freeze(np.clip(th, 0.0, np.pi)))
        object.__setattr__(self, "phi", _freeze(np.mod(ph, 2.0 * np.pi)))

    def state_vector(self) -> np.ndarray:
        """Dense 16-component ket, qubit 1 on the most significant bit."""
        vec = np.array([1.0 + 0.0j])
        for th, ph in zip(self.theta, self.phi):
            q = np.array([np.cos(th / 2.0),
                          np.sin(th / 2.0) * np.exp(1j * ph)])
            vec = np.kron(vec, q)
        return vec


def g_phase(phi: np.ndarray, w: WitnessParams) -> float:
    """Anti-diagonal phase function g of the four azimuthal angles."""
    c = np.cos(phi)
    s = np.sin(phi)
    m = w.M
    return float(
        m[7] * c[0] * c[1] * c[2] * c[3]
        + m[8] * c[0] * c[1] * s[2] * s[3]
        + m[9] * c[0] * s[1] * c[2] * s[3]
        + m[10] * c[0] * s[1] * s[2] * c[3]
        + m[11] * s[0] * c[1] * c[2] * s[3]
        + m[12] * s[0] * c[1] * s[2] * c[3]
        + m[13] * s[0] * s[1] * c[2] * c[3]
        + m[14] * s[0] * s[1] * s[2] * s[3]
    )


def f_eval(state: ProductState, w: WitnessParams) -> float:
    """Mean of the operator on a product state, <psi|M|psi>."""
    z = np.cos(state.theta)
    t = np.sin(state.theta)
    m = w.M
    diag = (m[0] * z[2] * z[3] + m[1] * z[1] * z[3] + m[2] * z[1] * z[2]
            + m[3] * z[0] * z[3] + m[4] * z[0] * z[2] + m[5] * z[0] * z[1]
            + m[6] * z[0] * z[1] * z[2] * z[3])
    return float(diag + g_phase(state.phi, w) * t[0] * t[1] * t[2] * t[3])


@dataclass(frozen=True)
class GPhaseCoefficients:
    """Hadamard-transformed anti-diagonal coefficients A_1..A_8.

    With sum/difference angles ``phi_pm = phi_1 +/- phi_2`` the maximum of
    g over ``phi_3, phi_4`` is

        g1(phi_p, phi_m) = hypot(A1 c_p + A3 c_m, A5 s_p - A7 s_m)
                         + hypot(A2 c_p + A4 c_m, A6 s_p - A8 s_m),

    the largest singular value of the 2x2 coefficient block of the
    remaining two angles.  The transform is scaled so that no prefactor
    appears in g1.
    """

    A: np.ndarray

    @classmethod
    def from_witness(cls, w: WitnessParams) -> "GPhaseCoefficients":
        m = w.M
        first = np.array([m[7], -m[8], -m[13], m[14]]) @ _HADAMARD4 / 4.0
        second = np.array([m[9], m[10], m[11], m[12]]) @ _HADAMARD4 / 4.0
        return cls(A=_freeze(np.concatenate([first, second])))

    def g1(self, phi_plus, phi_minus):
        cp, sp = np.cos(phi_plus), np.sin(phi_plus)
        cm, sm = np.cos(phi_minus), np.sin(phi_minus)
        a = self.A
        return (np.hypot(a[0] * cp + a[2] * cm, a[4] * sp - a[6] * sm)
                + np.hypot(a[1] * cp + a[3] * cm, a[5] * sp - a[7] * sm))


def g_tilde(m8, m9, m15):
    """Closed-form maximum of g over all phases, in the symmetric sector.

    Maximum of the candidate values that are always attained: the two
    endpoint values max(|M8|,|M9|) and max(|M15|,|M9|), plus the
    stationary value of the equal-angle slice
    ``h(w) = a(1-w)^2 + 6b w(1-w) + c w^2`` (a, b, c the sign-normalized
    coefficients) whenever its critical point lies in [0, 1].  Accepts
    scalars or broadcasting arrays.
    """
    m8 = np.asarray(m8, dtype=float)
    m9 = np.asarray(m9, dtype=float)
    m15 = np.asarray(m15, dtype=float)
    endpoint = np.maximum(np.maximum(np.abs(m8), np.abs(m15)), np.abs(m9))
    sign = np.where(m9 >= 0.0, 1.0, -1.0)
    a = m8 * sign
    b = np.abs(m9)
    c = m15 * sign
    den = 6.0 * b - a - c
    safe = np.abs(den) > 1e-300
    den_safe = np.where(safe, den, 1.0)
    w = (3.0 * b - a) / den_safe
    stationary = (9.0 * b * b - a * c) / den_safe
    ok = safe & (w >= 0.0) & (w <= 1.0) & (b > 0.0)
    out = np.maximum(endpoint, np.where(ok, stationary, -np.inf))
    if out.ndim == 0:
        return float(out)
    return out


def delta_region_contains(x: float, y: float) -> bool:
    """Membership in the closed region where the stationary value wins.

    Bounded by the lines x = 3 and y = 3 and, in the lower-left, by the
    hyperbola-like arcs y = 3 + (9/x - x)/2 for x in [-3, -1] and the
    mirror arc with x and y exchanged.
    """
    if not (-3.0 <= x <= 3.0 and -3.0 <= y <= 3.0):
        return False
    if x < -1.0 and y < 3.0 + 0.5 * (9.0 / x - x):
        return False
    if y < -1.0 and x < 3.0 + 0.5 * (9.0 / y - y):
        return False
    return True


# ---------------------------------------------------------------------------
# diagonal-sector polyhedron

def polyhedron_vertex(j1: int, j2: int, j3: int) -> np.ndarray:
    """Vertex (j1, j2, -j1 j2, j3, -j1 j3, -j2 j3, j1 j2 j3)."""
    if {abs(j1), abs(j2), abs(j3)} != {1}:
        raise ValueError("vertex signs must be +/-1")
    return np.array([j1, j2, -j1 * j2, j3, -j1 * j3, -j2 * j3, j1 * j2 * j3],
                    dtype=float)


def vertex_for_pair(i: int) -> tuple[int, int, int]:
    """Signs (j1, j2, j3) of the vertex associated with diagonal pair i.

    At that vertex the diagonal form evaluates to 1 - 8(rho_ii +
    rho_{17-i,17-i}) on any GHZ-diagonal state.
    """
    if not 1 <= i <= 8:
        raise IndexError(f"pair index must be in 1..8, got {i}")
    b = i - 1
    s2 = 1 - 2 * ((b >> 2) & 1)
    s3 = 1 - 2 * ((b >> 1) & 1)
    s4 = 1 - 2 * (b & 1)
    return (-s3 * s4, -s2 * s4, -s4)


def _vertex_matrix() -> np.ndarray:
    return np.stack([polyhedron_vertex(*vertex_for_pair(i)) for i in range(1, 9)])


_VERTICES = _vertex_matrix()


@dataclass(frozen=True)
class PolyhedronMembership:
    weights: np.ndarray
    inside: bool


def polyhedron_membership(m, tol: float = POLY_TOL) -> PolyhedronMembership:
    """Barycentric weights of the scaled diagonal coefficients m = M_1..7 / g~.

    The eight coordinate functions together with the constant are the
    characters of a sign group, so the weights have the closed form
    ``lambda_i = (1 + vertex_i . m) / 8`` (indexed by diagonal pair);
    membership holds iff all weights are >= -tol.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (7,):
        raise ValueError("expected the 7 diagonal coefficients")
    weights = (1.0 + _VERTICES @ m) / 8.0
    return PolyhedronMembership(weights=weights,
                                inside=bool(weights.min() >= -tol))


# ---------------------------------------------------------------------------
# product-state maximum

@dataclass(frozen=True)
class SearchSettings:
    """Multistart refinement controls for the numeric fall-back."""

    grid: int = 11
    max_iter: int = 500
    step_tol: float = 1e-12


@dataclass(frozen=True)
class LambdaResult:
    value: float
    method: str  # "analytic" | "numeric"


def _f2_batch(theta: np.ndarray, w: WitnessParams, gt: float) -> np.ndarray:
    """Polar-angle reduction: max over phi and theta_4 already performed."""
    z = np.cos(theta)
    t = np.sin(theta)
    m = w.M
    base = m[5] * z[:, 0] * z[:, 1] + m[4] * z[:, 0] * z[:, 2] + m[2] * z[:, 1] * z[:, 2]
    axial = (m[3] * z[:, 0] + m[1] * z[:, 1] + m[0] * z[:, 2]
             + m[6] * z[:, 0] * z[:, 1] * z[:, 2])
    return base + np.hypot(axial, gt * t[:, 0] * t[:, 1] * t[:, 2])


def _f2_numeric_max(w: WitnessParams, gt: float, settings: SearchSettings) -> float:
    n = max(int(settings.grid), 3)
    axis = np.linspace(0.0, np.pi, n)
    mesh = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    vals = _f2_batch(mesh, w, gt)
    starts = _optim.top_k_grid(vals, mesh, 6)
    refined, fvals = _optim.compass_maximize_batch(
        lambda pts: _f2_batch(pts, w, gt),
        starts,
        step=float(axis[1] - axis[0]),
        min_step=settings.step_tol,
        max_iter=settings.max_iter,
        lower=np.zeros(3),
        upper=np.full(3, np.pi),
    )
    return float(fvals.max())


def lambda_product_max(
    w: WitnessParams,
    settings: SearchSettings = SearchSettings(),
) -> LambdaResult:
    """Maximal product-state mean Lambda of the operator.

    Symmetric sector and diagonal inside the polyhedron: Lambda = g~
    exactly.  Otherwise the reduced three-angle objective is maximized
    numerically and reported as a certified lower bound.
    """
    if not w.symmetric_sector:
        value = _full_numeric_lambda(w, settings)
        return LambdaResult(value=value, method="numeric")
    gt = g_tilde(w.M[7], w.M[8], w.M[14])
    if gt > 0.0:
        member = polyhedron_membership(w.diagonal / gt)
        if member.inside:
            return LambdaResult(value=float(gt), method="analytic")
    return LambdaResult(value=_f2_numeric_max(w, gt, settings), method="numeric")


def _full_numeric_lambda(w: WitnessParams, settings: SearchSettings) -> float:
    """Multistart maximization of f over all eight angles (general M)."""
    coeff = GPhaseCoefficients.from_witness(w)

    def batch(points: np.ndarray) -> np.ndarray:
        th = points[:, :4]
        pp = points[:, 4]
        pm = points[:, 5]
        z = np.cos(th)
        t = np.sin(th)
        m = w.M
        diag = (m[0] * z[:, 2] * z[:, 3] + m[1] * z[:, 1] * z[:, 3]
                + m[2] * z[:, 1] * z[:, 2] + m[3] * z[:, 0] * z[:, 3]
                + m[4] * z[:, 0] * z[:, 2] + m[5] * z[:, 0] * z[:, 1]
                + m[6] * z.prod(axis=1))
        return diag + coeff.g1(pp, pm) * t.prod(axis=1)

    n = max(int(settings.grid), 5)
    th_ax = np.linspace(0.0, np.pi, 5)
    ph_ax = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    mesh = np.stack(np.meshgrid(th_ax, th_ax, th_ax, th_ax, ph_ax, ph_ax,
                                indexing="ij"), axis=-1).reshape(-1, 6)
    vals = batch(mesh)
    starts = _optim.top_k_grid(vals, mesh, 8)
    lower = np.array([0.0, 0.0, 0.0, 0.0, -np.inf, -np.inf])
    upper = np.array([np.pi, np.pi, np.pi, np.pi, np.inf, np.inf])
    _, fvals = _optim.compass_maximize_batch(
        batch, starts, step=0.4, min_step=settings.step_tol,
        max_iter=settings.max_iter, lower=lower, upper=upper)
    return float(fvals.max())


def witness_value(state: StateLike | PauliCorrelations, w: WitnessParams,
                  lam: float | None = None) -> float:
    """Tr(rho W) = Lambda - sum_i M_i R_i; negative certifies entanglement."""
    r = as_correlations(state)
    if lam is None:
        lam = lambda_product_max(w).value
    return float(lam - w.M @ r.R)
