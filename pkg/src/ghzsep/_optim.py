"""Small deterministic derivative-free maximizers used by the numeric paths.

Compass (pattern) search: try +/- step along every coordinate, move to the
best improving candidate, halve the step when nothing improves.  Good
enough for the smooth low-dimensional objectives in this package and
fully deterministic.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

Objective = Callable[[np.ndarray], np.ndarray]


def compass_maximize_batch(
    f_batch: Objective,
    x0: np.ndarray,
    step: float,
    *,
    min_step: float = 1e-10,
    max_iter: int = 500,
    lower: np.ndarray | None = None,
    upper: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Refine a batch of start points at once.

    ``f_batch`` maps an (m, d) array of points to m values.  Returns the
    refined points (k, d) and their values (k,).  Bounds are clamped
    coordinate-wise when given; unbounded (angle) coordinates may drift
    outside their period, which is harmless for periodic objectives.
    """
    x = np.array(x0, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    k, d = x.shape
    steps = np.full(k, float(step))
    fx = f_batch(x)
    for _ in range(max_iter):
        active = steps >= min_step
        if not np.any(active):
            break
        # candidate moves: (k, 2d, d)
        eye = np.eye(d)
        moves = np.concatenate([eye, -eye], axis=0)  # (2d, d)
        cand = x[:, None, :] + steps[:, None, None] * moves[None, :, :]
        if lower is not None:
            cand = np.maximum(cand, lower)
        if upper is not None:
            cand = np.minimum(cand, upper)
        vals = f_batch(cand.reshape(k * 2 * d, d)).reshape(k, 2 * d)
        best = np.argmax(vals, axis=1)
        best_val = vals[np.arange(k), best]
        improved = active & (best_val > fx + 1e-300)
        x[improved] = cand[np.arange(k), best][improved]
        fx[improved] = best_val[improved]
        steps[~improved & active] *= 0.5
    return x, fx


def compass_maximize(
    f: Callable[[np.ndarray], float],
    x0: np.ndarray,
    step: float,
    **kwargs,
) -> tuple[np.ndarray, float]:
    """Scalar-objective wrapper around :func:`compass_maximize_batch`."""

    def f_batch(points: np.ndarray) -> np.ndarray:
        return np.array([f(p) for p in points])

    xs, vals = compass_maximize_batch(f_batch, np.asarray(x0, float)[None, :],
                                      step, **kwargs)
    return xs[0], float(vals[0])


def top_k_grid(values: np.ndarray, points: np.ndarray, k: int) -> np.ndarray:
    """Return the k grid points with the largest values."""
    order = np.argsort(values)[::-1][:k]
    return points[order]


def zoom_maximize(
    f_batch: Objective,
    center: np.ndarray,
    half_width: float,
    *,
    levels: int = 12,
    n: int = 33,
    shrink: float = 0.35,
) -> tuple[np.ndarray, float]:
    """Maximize by re-gridding shrinking boxes around the incumbent.

    Unlike direction-based search this cannot stall on a crease that is
    not axis aligned, which matters for objectives built from maxima of
    smooth candidates.  ``f_batch`` maps (m, d) points to m values.
    """
    center = np.asarray(center, dtype=float)
    d = center.size
    axes = [np.linspace(-1.0, 1.0, n)] * d
    offsets = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
    best_x = center.copy()
    best_f = float(f_batch(center[None, :])[0])
    width = float(half_width)
    for _ in range(levels):
        pts = best_x[None, :] + width * offsets
        vals = f_batch(pts)
        i = int(np.argmax(vals))
        if vals[i] > best_f:
            best_f = float(vals[i])
            best_x = pts[i]
        width *= shrink
    return best_x, best_f
