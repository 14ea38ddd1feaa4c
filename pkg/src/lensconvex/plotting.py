"""SVG figures for sweeps, erosion profiles and bodies.

Rendering goes through matplotlib's SVG backend with the timestamp
stripped and a fixed hash salt, so identical data give byte-identical files.
"""

from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("svg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .disk_polygon import DiskPolygon, ErosionProfile  # noqa: E402
from .harness import EXPONENTS, SweepRow, fitted_slope  # noqa: E402

_RC = {"svg.hashsalt": "lensconvex", "svg.fonttype": "path", "path.simplify": False}


def _save(fig, path) -> None:
    with matplotlib.rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def plot_sweep(rows: Sequence[SweepRow], path, title: str = "") -> float:
    """Log-log scatter of ``d_H`` against realized ``eps`` with the fitted
    line and the reference power law. Returns the fitted slope."""
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        eps = np.array([r.eps for r in rows])
        dh = np.array([r.d_H for r in rows])
        ax.loglog(eps, dh, "o", ms=4, color="tab:blue", label="bodies")
        slope = fitted_slope(rows)
        x = np.geomspace(eps.min(), eps.max(), 50)
        b = float(np.mean(np.log(dh) - slope * np.log(eps)))
        ax.loglog(x, np.exp(b) * x**slope, "-", color="tab:red", label=f"fit: slope {slope:.3f}")
        if rows:
            e = EXPONENTS[rows[0].theorem]
            c = float(np.max(dh / eps**e))
            ax.loglog(x, c * x**e, "--", color="gray", label=f"max ratio x eps^{e:g}")
        ax.set_xlabel("realized eps")
        ax.set_ylabel("d_H to best lens")
        if title:
            ax.set_title(title)
        ax.grid(True, which="both", lw=0.3)
        ax.legend(loc="lower right", fontsize=8)
    _save(fig, path)
    return slope


def plot_profile(prof: ErosionProfile, path, lens_f: Sequence[float] | None = None) -> None:
    with matplotlib.rc_context(_RC):
        fig, (a1, a2) = plt.subplots(1, 2, figsize=(8.0, 3.5))
        a1.plot(prof.ts, prof.f, "-", color="tab:blue", label="f_K")
        if lens_f is not None:
            a1.plot(prof.ts[: len(lens_f)], lens_f, "--", color="tab:red", label="lens")
            a1.legend(fontsize=8)
        a1.set_xlabel("t")
        a1.set_ylabel("perimeter of K_t")
        a2.plot(prof.ts, prof.g, "-", color="tab:green")
        a2.plot(prof.ts, math.pi * prof.ts**2, ":", color="gray")
        a2.set_xlabel("t")
        a2.set_ylabel("area of K_t")
        fig.tight_layout()
    _save(fig, path)


def plot_body(K: DiskPolygon, path, others: Sequence[DiskPolygon] = ()) -> None:
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        for body, style in [(K, "-")] + [(o, "--") for o in others]:
            pts = body.boundary_points(720)
            pts = np.vstack([pts, pts[:1]])
            ax.plot(pts[:, 0], pts[:, 1], style, lw=1.0)
        o = K.incenter
        t = np.linspace(0, 2 * math.pi, 361)
        ax.plot(o.x + K.inradius * np.cos(t), o.y + K.inradius * np.sin(t), ":", color="gray", lw=0.8)
        ax.set_aspect("equal")
    _save(fig, path)
