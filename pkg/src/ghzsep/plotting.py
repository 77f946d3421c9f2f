"""Figure rendering for the boundary data (CLI report path).

Kept apart from the boundary generators, which stay data-only.  Figures
are written straight to files with the Agg backend, so no display is
needed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .boundaries import BoundarySegment


def plot_hs_boundary(segments: list[BoundarySegment], p16: float, path: str) -> None:
    """Draw the (v, alpha) boundary loop in the (p2, p15) weight plane."""
    u = 1.0 - 2.0 * p16
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for seg in segments:
        vv = [pt[0] for pt in seg.points]
        aa = [pt[1] for pt in seg.points]
        p2 = [(1.0 - v) * u / a for v, a in zip(vv, aa)]
        p15 = [v * u / a for v, a in zip(vv, aa)]
        ax.plot(p2, p15, lw=1.5, label=seg.label)
        mid = len(p2) // 2
        ax.annotate(seg.label, (p2[mid], p15[mid]), fontsize=8)
    ax.set_xlabel(r"$p_2$")
    ax.set_ylabel(r"$p_{15}$")
    ax.set_title(f"separable boundary, p16 = {p16:g}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sym_surface(segments: list[BoundarySegment], omega: float, path: str) -> None:
    """3D scatter of the symmetric-family boundary pieces."""
    fig = plt.figure(figsize=(6.5, 5.5))
    ax = fig.add_subplot(projection="3d")
    for seg in segments:
        if seg.source.endswith(":mirror"):
            continue  # keep the canonical half readable
        qs = [pt[0] for pt in seg.points]
        ps = [pt[1] for pt in seg.points]
        azs = [pt[2] for pt in seg.points]
        ax.scatter(qs, ps, azs, s=2, label=f"{seg.label} [{seg.source}]")
    ax.set_xlabel(r"$\rho_{1,16}/\Omega$")
    ax.set_ylabel(r"$\rho_{4,13}/\Omega$")
    ax.set_zlabel(r"$\rho_{2,15}/\Omega$")
    ax.set_title(f"separable boundary, Omega = {omega:g}")
    ax.legend(fontsize=6, loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
