"""Four-qubit GHZ-diagonal states in three equivalent encodings.

The 16 GHZ basis vectors are ``|GHZ_j> = (|b> + s|~b>)/sqrt(2)`` where
``~b`` flips all four bits, ``s = +1`` for ``j = 1..8`` (with ``b = j-1``)
and ``s = -1`` for ``j = 9..16`` (with ``b = 16-j``).  A mixture of GHZ
basis projectors is "X shaped" in the computational basis: it is fully
described either by the 16 mixing weights ``p_j``, by the 8 diagonal
pair values ``d_i`` plus 8 anti-diagonal values ``a_i`` (1-based pair
``i`` couples computational indices ``i`` and ``17-i``), or by the 15
Pauli-string correlations ``R_1..R_15``.

The linear bijection between weights and correlations is derived at
import time by evaluating every Pauli string on every GHZ projector, so
no sign table is entered by hand.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

PROB_TOL = 1e-12

PAULI_LABELS = (
    "IIZZ", "IZIZ", "IZZI", "ZIIZ", "ZIZI", "ZZII", "ZZZZ",
    "XXXX", "XXYY", "XYXY", "XYYX", "YXXY", "YXYX", "YYXX", "YYYY",
)

_PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


class InvalidStateError(ValueError):
    """Raised when the given numbers do not describe a valid state."""


def pauli_matrix(label: str) -> np.ndarray:
    """Dense 16x16 matrix of a four-qubit Pauli string such as ``"XXYY"``.

    Character 0 acts on qubit 1, which is the most significant bit of the
    computational-basis index.
    """
    out = np.array([[1.0 + 0.0j]])
    for ch in label:
        out = np.kron(out, _PAULI_1Q[ch])
    return out


@functools.lru_cache(maxsize=1)
def pauli_strings() -> np.ndarray:
    """The 15 correlation Pauli strings, stacked as a (15, 16, 16) array."""
    return np.stack([pauli_matrix(lbl) for lbl in PAULI_LABELS])


def ghz_basis_vector(j: int) -> tuple[int, int, int]:
    """Computational-basis content ``(low, high, sign)`` of ``|GHZ_j>``.

    ``low`` and ``high = 15 - low`` are 0-based basis indices and the
    state is ``(|low> + sign*|high>)/sqrt(2)``.
    """
    if not 1 <= int(j) == j <= 16:
        raise IndexError(f"GHZ index must be an integer in 1..16, got {j!r}")
    if j <= 8:
        low, sign = j - 1, 1
    else:
        low, sign = 16 - j, -1
    return low, 15 - low, sign


def ghz_ket(j: int) -> np.ndarray:
    low, high, sign = ghz_basis_vector(j)
    ket = np.zeros(16)
    ket[low] = 1.0 / np.sqrt(2.0)
    ket[high] = sign / np.sqrt(2.0)
    return ket


def ghz_projector(j: int) -> np.ndarray:
    ket = ghz_ket(j)
    return np.outer(ket, ket)


@functools.lru_cache(maxsize=1)
def correlation_transform() -> np.ndarray:
    """16x16 sign matrix T with (1, R_1..R_15) = T @ p.

    Row 0 corresponds to the identity string; row ``alpha`` (1..15) is
    ``T[alpha, j-1] = Tr(|GHZ_j><GHZ_j| P_alpha)``.  The rows are
    orthogonal characters, so the inverse is ``T.T / 16``.
    """
    t = np.zeros((16, 16))
    t[0] = 1.0
    strings = pauli_strings()
    for j in range(1, 17):
        proj = ghz_projector(j)
        vals = np.einsum("aij,ji->a", strings, proj)
        if np.max(np.abs(vals.imag)) > 1e-14:
            raise AssertionError("GHZ-basis Pauli means must be real")
        t[1:, j - 1] = np.rint(vals.real)
    return t


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class GhzProbabilities:
    """The 16 GHZ-basis mixing weights, validated and renormalized.

    Entry ``p[j-1]`` is the weight of ``|GHZ_j>``.  Weights within
    ``PROB_TOL`` of the simplex are clipped/renormalized; anything
    further off is rejected.
    """

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (16,):
            raise InvalidStateError(f"expected 16 weights, got shape {p.shape}")
        worst = int(np.argmin(p))
        if p[worst] < -PROB_TOL:
            raise InvalidStateError(
                f"negative weight p_{worst + 1} = {p[worst]:.3e}"
            )
        total = float(p.sum())
        if abs(total - 1.0) > 1e-9:
            raise InvalidStateError(f"weights sum to {total!r}, not 1")
        p = np.clip(p, 0.0, None)
        p = p / p.sum()
        object.__setattr__(self, "p", _freeze(p))

    def value(self, j: int) -> float:
        """1-based accessor p_j."""
        if not 1 <= j <= 16:
            raise IndexError(f"index must be in 1..16, got {j}")
        return float(self.p[j - 1])


@dataclass(frozen=True)
class XMatrixElements:
    """Diagonal pairs ``d_i = rho[i,i] = rho[17-i,17-i]`` and anti-diagonal
    values ``a_i = rho[i,17-i]`` for the 1-based pairs i = 1..8."""

    d: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        a = np.asarray(self.a, dtype=float)
        if d.shape != (8,) or a.shape != (8,):
            raise InvalidStateError("d and a must each hold 8 values")
        if np.min(d) < -PROB_TOL:
            raise InvalidStateError(f"negative diagonal d_{int(np.argmin(d)) + 1}")
        if abs(2.0 * d.sum() - 1.0) > 1e-9:
            raise InvalidStateError("diagonal does not sum to one half")
        recon = np.concatenate([d + a, d - a])
        worst = int(np.argmin(recon))
        if recon[worst] < -PROB_TOL:
            raise InvalidStateError(
                "elements reconstruct a negative GHZ weight "
                f"(pair {worst % 8 + 1}, value {recon[worst]:.3e})"
            )
        object.__setattr__(self, "d", _freeze(d))
        object.__setattr__(self, "a", _freeze(a))

    def d_i(self, i: int) -> float:
        return float(self.d[i - 1])

    def a_i(self, i: int) -> float:
        return float(self.a[i - 1])


@dataclass(frozen=True)
class PauliCorrelations:
    """The 15 correlations R_1..R_15, ordered as in PAULI_LABELS."""

    R: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.R, dtype=float)
        if r.shape != (15,):
            raise InvalidStateError(f"expected 15 correlations, got {r.shape}")
        if np.max(np.abs(r)) > 1.0 + 1e-9:
            raise InvalidStateError("correlations must lie in [-1, 1]")
        object.__setattr__(self, "R", _freeze(np.clip(r, -1.0, 1.0)))

    def r(self, i: int) -> float:
        """1-based accessor R_i."""
        if not 1 <= i <= 15:
            raise IndexError(f"index must be in 1..15, got {i}")
        return float(self.R[i - 1])

    @property
    def rp9(self) -> float:
        """R'_9 = R_9 + ... + R_14, the summed two-Y correlations."""
        return float(self.R[8:14].sum())


@dataclass(frozen=True)
class SymmetricParams:
    """Distinct weights of the permutation-symmetric family.

    ``p2`` is shared by the orbit j = 2,3,5,8; ``p4`` by j = 4,6,7;
    ``p13`` by j = 10,11,13; ``p15`` by j = 9,12,14,15.
    """

    p1: float
    p2: float
    p4: float
    p13: float
    p15: float
    p16: float


@dataclass(frozen=True)
class HighlySymmetricParams:
    """Weights of the family with p_2 = ... = p_8 and p_9 = ... = p_15."""

    p1: float
    p2: float
    p15: float
    p16: float

    @property
    def u(self) -> float:
        return 1.0 - 2.0 * self.p16

    @property
    def v(self) -> float:
        tot = self.p2 + self.p15
        if tot <= 0.0:
            raise InvalidStateError("(v, alpha) undefined when p2 + p15 = 0")
        return self.p15 / tot

    @property
    def alpha(self) -> float:
        tot = self.p2 + self.p15
        if tot <= 0.0:
            raise InvalidStateError("(v, alpha) undefined when p2 + p15 = 0")
        return self.u / tot

    @classmethod
    def from_point(cls, p16: float, v: float, alpha: float) -> "HighlySymmetricParams":
        """Build from the (v, alpha) chart at fixed p16."""
        u = 1.0 - 2.0 * p16
        p15 = v * u / alpha
        p2 = (1.0 - v) * u / alpha
        p1 = 1.0 - p16 - 7.0 * (p2 + p15)
        return cls(p1=p1, p2=p2, p15=p15, p16=p16)


_SYM_ORBITS = {
    "p1": (1,), "p2": (2, 3, 5, 8), "p4": (4, 6, 7),
    "p13": (10, 11, 13), "p15": (9, 12, 14, 15), "p16": (16,),
}


def make_symmetric(s: SymmetricParams) -> GhzProbabilities:
    p = np.zeros(16)
    for name, orbit in _SYM_ORBITS.items():
        w = getattr(s, name)
        if w < -PROB_TOL:
            raise InvalidStateError(f"negative weight {name} = {w!r}")
        for j in orbit:
            p[j - 1] = w
    return GhzProbabilities(p)


def make_highly_symmetric(h: HighlySymmetricParams) -> GhzProbabilities:
    return make_symmetric(SymmetricParams(
        p1=h.p1, p2=h.p2, p4=h.p2, p13=h.p15, p15=h.p15, p16=h.p16,
    ))


def make_werner(p: float) -> GhzProbabilities:
    """GHZ state mixed with white noise: p |GHZ_1><GHZ_1| + (1-p)/16 I."""
    weights = np.full(16, (1.0 - p) / 16.0)
    weights[0] += p
    if weights[0] < -PROB_TOL:
        raise InvalidStateError(f"negative weight p_1 = {weights[0]:.3e}")
    if weights[1] < -PROB_TOL:
        raise InvalidStateError(f"negative weight p_2 = {weights[1]:.3e}")
    return GhzProbabilities(weights)


# ---------------------------------------------------------------------------
# conversions

def probabilities_to_elements(state: GhzProbabilities) -> XMatrixElements:
    p = state.p
    return XMatrixElements(d=(p[:8] + p[8:][::-1]) / 2.0,
                           a=(p[:8] - p[8:][::-1]) / 2.0)


def elements_to_probabilities(x: XMatrixElements) -> GhzProbabilities:
    return GhzProbabilities(np.concatenate([x.d + x.a, (x.d - x.a)[::-1]]))


def probabilities_to_correlations(state: GhzProbabilities) -> PauliCorrelations:
    # exactly rounded row sums: correlations within a permutation orbit
    # then agree exactly, not just to rounding noise
    t = correlation_transform()
    r = [math.fsum(t[alpha, j] * state.p[j] for j in range(16))
         for alpha in range(1, 16)]
    return PauliCorrelations(np.array(r))


def correlations_to_probabilities(r: PauliCorrelations) -> GhzProbabilities:
    full = np.concatenate([[1.0], r.R])
    return GhzProbabilities(correlation_transform().T @ full / 16.0)


def elements_to_correlations(x: XMatrixElements) -> PauliCorrelations:
    return probabilities_to_correlations(elements_to_probabilities(x))


def correlations_to_elements(r: PauliCorrelations) -> XMatrixElements:
    return probabilities_to_elements(correlations_to_probabilities(r))


StateLike = GhzProbabilities | XMatrixElements | PauliCorrelations


def as_probabilities(state: StateLike) -> GhzProbabilities:
    if isinstance(state, GhzProbabilities):
        return state
    if isinstance(state, XMatrixElements):
        return elements_to_probabilities(state)
    if isinstance(state, PauliCorrelations):
        return correlations_to_probabilities(state)
    raise TypeError(f"not a GHZ-diagonal state description: {type(state)!r}")


def as_elements(state: StateLike) -> XMatrixElements:
    if isinstance(state, XMatrixElements):
        return state
    return probabilities_to_elements(as_probabilities(state))


def as_correlations(state: StateLike) -> PauliCorrelations:
    if isinstance(state, PauliCorrelations):
        return state
    return probabilities_to_correlations(as_probabilities(state))


def density_matrix(state: StateLike) -> np.ndarray:
    """Dense real 16x16 matrix of the state (X shaped by construction)."""
    x = as_elements(state)
    rho = np.zeros((16, 16))
    idx = np.arange(8)
    rho[idx, idx] = x.d
    rho[15 - idx, 15 - idx] = x.d
    rho[idx, 15 - idx] = x.a
    rho[15 - idx, idx] = x.a
    return rho


def is_symmetric_family(state: StateLike, tol: float = 1e-10) -> bool:
    """True when the state is invariant under qubit permutations."""
    r = as_correlations(state).R
    return (np.max(np.abs(r[:6] - r[0])) <= tol
            and np.max(np.abs(r[8:14] - r[8])) <= tol)


# ---------------------------------------------------------------------------
# JSON state descriptions

def state_from_json(obj: dict) -> GhzProbabilities:
    """Decode the state-description JSON object (one kind key per object)."""
    if not isinstance(obj, dict):
        raise InvalidStateError("state description must be a JSON object")
    kinds = [k for k in ("probabilities", "correlations", "werner",
                         "highly_symmetric", "symmetric") if k in obj]
    if len(kinds) != 1:
        raise InvalidStateError(
            f"state object must contain exactly one kind key, found {kinds!r}"
        )
    kind = kinds[0]
    body = obj[kind]
    if kind == "probabilities":
        return GhzProbabilities(np.asarray(body, dtype=float))
    if kind == "correlations":
        return correlations_to_probabilities(
            PauliCorrelations(np.asarray(body["R"], dtype=float)))
    if kind == "werner":
        return make_werner(float(body["p"]))
    if kind == "highly_symmetric":
        return make_highly_symmetric(HighlySymmetricParams.from_point(
            float(body["p16"]), float(body["v"]), float(body["alpha"])))
    return make_symmetric(SymmetricParams(
        p1=float(body["p1"]), p2=float(body["p2"]), p4=float(body["p4"]),
        p13=float(body["p13"]), p15=float(body["p15"]), p16=float(body["p16"]),
    ))


def state_to_json(state: StateLike) -> dict:
    return {"probabilities": [float(v) for v in as_probabilities(state).p]}
