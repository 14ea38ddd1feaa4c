"""Cheeger constant of a disk-polygon.

For a planar convex body the Cheeger constant is ``1 / t`` where ``t`` is the
unique root of ``|K_t| = pi t^2`` (Kawohl & Lachand-Robert).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_geom import solve_monotone_root
from .disk_polygon import DiskPolygon, area_at

ROOT_TOL = 1e-12


@dataclass(frozen=True)
class CheegerResult:
    t_star: float
    h: float
    iterations: int
    residual: float


def balance(K: DiskPolygon, t: float) -> float:
    """``|K_t| - pi t^2``; strictly decreasing in ``t``."""
    return area_at(K, t) - math.pi * t * t


def cheeger(K: DiskPolygon, tol: float = ROOT_TOL) -> CheegerResult:
    r = K.inradius
    lo, hi = 0.0, r
    # the right endpoint is negative in exact arithmetic; shrink defensively
    # if rounding says otherwise
    while balance(K, hi) >= 0.0:
        hi = 0.5 * (hi + r) if hi < r else r * (1 - 1e-9)
        if r - hi < 1e-15 * r:
            break
    t, its = solve_monotone_root(lambda s: balance(K, s), lo, hi, tol=tol * max(1.0, K.R), full_output=True)
    return CheegerResult(t_star=t, h=1.0 / t, iterations=its, residual=abs(balance(K, t)))


def cheeger_constant(K: DiskPolygon) -> float:
    return cheeger(K).h


def sign_changes(K: DiskPolygon, n: int = 200) -> int:
    """Number of sign changes of the balance function on an ``n``-point grid
    of ``[0, r]``."""
    r = K.inradius
    vals = [balance(K, r * k / (n - 1)) for k in range(n)]
    signs = [v > 0.0 for v in vals if v != 0.0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def chord_bound(body_area: float, r: float) -> float:
    """Where ``pi t^2`` meets the line from ``(0, |K|)`` to ``(r, 0)``; an upper
    bound for ``t_star`` whenever ``t -> |K_t|`` is convex."""
    q = body_area / r
    return (-q + math.sqrt(q * q + 4.0 * math.pi * body_area)) / (2.0 * math.pi)

