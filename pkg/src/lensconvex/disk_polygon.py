"""Intersections of finitely many equal-radius disks.

A :class:`DiskPolygon` keeps only the disks that actually contribute a
boundary arc. Its inradius is ``R - rho`` where ``rho`` is the radius of the
minimum enclosing circle of the centers, and the incenter is that circle's
center. Eroding by ``t`` keeps the centers and shrinks the radius to ``R - t``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import integrate

from .core_geom import (
    TWO_PI,
    AngleInterval,
    Point,
    min_enclosing_circle,
    wrap_angle,
    _dedupe,
)
from .errors import (
    ArcChainError,
    EmptyOrDegenerateBody,
    ErosionEmpty,
    InvalidParameter,
    NotTouchingForm,
    NoVertices,
)

VERTEX_TOL = 1e-9
TOUCH_TOL = 1e-9
# arcs narrower than this (radians) are treated as tangencies and dropped
MIN_ARC_WIDTH = 1e-12
# erosion within this distance of the inradius counts as the empty body
PROFILE_END_TOL = 1e-12


@dataclass(frozen=True)
class Arc:
    """Boundary arc on circle ``center_index``; ``end - start`` is its angular width."""

    center_index: int
    start: float
    end: float

    @property
    def width(self) -> float:
        return self.end - self.start


@dataclass(frozen=True, eq=False)
class DiskPolygon:
    lam: float
    centers: tuple[Point, ...]
    arcs: tuple[Arc, ...]
    incenter: Point
    inradius: float
    # support-function pieces over [piece_start[0], piece_start[0] + 2pi)
    _piece_start: np.ndarray = field(repr=False)
    _piece_coef: np.ndarray = field(repr=False)

    @property
    def R(self) -> float:
        return 1.0 / self.lam

    @property
    def n_disks(self) -> int:
        return len(self.centers)

    def vertices(self) -> list[Point]:
        """Corner points, the end point of every arc (empty for a single disk)."""
        if len(self.arcs) == 1:
            return []
        R = self.R
        out = []
        for a in self.arcs:
            c = self.centers[a.center_index]
            out.append(Point(c.x + R * math.cos(a.end), c.y + R * math.sin(a.end)))
        return out

    def boundary_points(self, n: int) -> np.ndarray:
        """About ``n`` boundary points, spread over arcs in proportion to arc length."""
        total = sum(a.width for a in self.arcs)
        R = self.R
        chunks = []
        for a in self.arcs:
            k = max(2, int(round(n * a.width / total)))
            th = np.linspace(a.start, a.end, k)
            c = self.centers[a.center_index]
            chunks.append(np.column_stack([c.x + R * np.cos(th), c.y + R * np.sin(th)]))
        return np.vstack(chunks)

    def transformed(self, angle: float = 0.0, shift=(0.0, 0.0), scale: float = 1.0) -> "DiskPolygon":
        """Rotate about the origin, scale, then translate."""
        ca, sa = math.cos(angle), math.sin(angle)
        pts = [
            (scale * (ca * c.x - sa * c.y) + shift[0], scale * (sa * c.x + ca * c.y) + shift[1])
            for c in self.centers
        ]
        return build(pts, self.lam / scale)

    def to_json(self) -> dict:
        return {"lambda": self.lam, "centers": [[c.x, c.y] for c in self.centers]}


def _feasible_intervals(centers: Sequence[Point], R: float) -> list[Optional[AngleInterval]]:
    out = []
    for i, ci in enumerate(centers):
        iv: Optional[AngleInterval] = AngleInterval(0.0, math.pi)
        for j, cj in enumerate(centers):
            if i == j:
                continue
            dx, dy = cj.x - ci.x, cj.y - ci.y
            d = math.hypot(dx, dy)
            half = math.acos(min(1.0, d / (2.0 * R)))
            iv = iv.intersect(AngleInterval(math.atan2(dy, dx), half))
            if iv is None:
                break
        out.append(iv)
    return out


def build(centers: Iterable, lam: float = 1.0) -> DiskPolygon:
    """Body bounded by the disks of radius ``1/lam`` around ``centers``.

    Disks whose circle contributes no boundary arc are dropped.
    """
    if not lam > 0.0 or not math.isfinite(lam):
        raise InvalidParameter(f"lambda must be positive, got {lam}")
    pts = _dedupe(list(centers))
    if not pts:
        raise InvalidParameter("at least one center is required")
    R = 1.0 / lam
    mec = min_enclosing_circle(pts)
    if mec.radius >= R:
        raise EmptyOrDegenerateBody(f"MEC radius {mec.radius} >= R = {R}; body has no interior")

    if len(pts) == 1:
        kept = pts
        raw = [(0, 0.0, TWO_PI)]
    else:
        ivs = _feasible_intervals(pts, R)
        kept, raw = [], []
        for p, iv in zip(pts, ivs):
            if iv is None or iv.width <= MIN_ARC_WIDTH:
                continue
            raw.append((len(kept), iv.start, iv.start + iv.width))
            kept.append(p)
        if len(kept) == 1:
            raw = [(0, 0.0, TWO_PI)]
    raw.sort(key=lambda a: a[1])
    arcs = tuple(Arc(i, s, e) for i, s, e in raw)
    starts, coefs = _chain(kept, arcs, R)
    return DiskPolygon(
        lam=lam,
        centers=tuple(kept),
        arcs=arcs,
        incenter=mec.center,
        inradius=R - mec.radius,
        _piece_start=starts,
        _piece_coef=coefs,
    )


def _chain(centers: Sequence[Point], arcs: Sequence[Arc], R: float):
    """Check vertex continuity and lay out support-function pieces."""
    starts, coefs = [], []
    n = len(arcs)
    base = arcs[0].start
    for k, a in enumerate(arcs):
        c = centers[a.center_index]
        s = base + wrap_angle(a.start - base) if k else base
        starts.append(s)
        coefs.append((c.x, c.y, R))
        if n == 1:
            break
        nxt = arcs[(k + 1) % n]
        cn = centers[nxt.center_index]
        v = (c.x + R * math.cos(a.end), c.y + R * math.sin(a.end))
        w = (cn.x + R * math.cos(nxt.start), cn.y + R * math.sin(nxt.start))
        gap = math.hypot(v[0] - w[0], v[1] - w[1])
        if gap > VERTEX_TOL * max(1.0, R):
            raise ArcChainError(f"arcs {k} and {(k + 1) % n} miss each other by {gap:.3e}")
        cone = wrap_angle(nxt.start - a.end)
        if cone > math.pi:  # tiny overlap from rounding
            cone = 0.0
        if cone > 0.0:
            starts.append(s + a.width)
            coefs.append((0.5 * (v[0] + w[0]), 0.5 * (v[1] + w[1]), 0.0))
    return np.asarray(starts), np.asarray(coefs)


def perimeter(K: DiskPolygon) -> float:
    return K.R * sum(a.width for a in K.arcs)


def area(K: DiskPolygon) -> float:
    """Exact area from Green's theorem applied arc by arc."""
    R = K.R
    if len(K.arcs) == 1:
        return math.pi * R * R
    acc = 0.0
    for a in K.arcs:
        c = K.centers[a.center_index]
        acc += R * c.x * (math.sin(a.end) - math.sin(a.start))
        acc -= R * c.y * (math.cos(a.end) - math.cos(a.start))
        acc += R * R * a.width
    return 0.5 * acc


def erode(K: DiskPolygon, t: float) -> DiskPolygon:
    """Inner parallel body at distance ``t``."""
    if t < 0.0:
        raise InvalidParameter(f"erosion distance must be >= 0, got {t}")
    if t == 0.0:
        return K
    if t >= K.inradius:
        raise ErosionEmpty(f"t={t} >= inradius {K.inradius}")
    try:
        return build(K.centers, 1.0 / (K.R - t))
    except EmptyOrDegenerateBody as exc:
        raise ErosionEmpty(str(exc)) from exc


def perimeter_at(K: DiskPolygon, t: float) -> float:
    """``|boundary of K_t|``, zero at and beyond the inradius."""
    if t >= K.inradius - PROFILE_END_TOL:
        return 0.0
    try:
        return perimeter(erode(K, t))
    except ErosionEmpty:
        return 0.0


def area_at(K: DiskPolygon, t: float) -> float:
    """``|K_t|``, zero at and beyond the inradius."""
    if t >= K.inradius - PROFILE_END_TOL:
        return 0.0
    try:
        return area(erode(K, t))
    except ErosionEmpty:
        return 0.0


@dataclass(frozen=True)
class ErosionProfile:
    ts: np.ndarray
    f: np.ndarray
    g: np.ndarray

    def second_differences(self) -> np.ndarray:
        return np.diff(self.f, 2)

    def is_decreasing(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.diff(self.f) <= tol) and np.all(np.diff(self.g) <= tol))

    def is_concave(self, tol: float = 1e-8) -> bool:
        return bool(np.all(self.second_differences() <= tol))


def erosion_profile(K: DiskPolygon, n: int, tol: float = PROFILE_END_TOL) -> ErosionProfile:
    """Sample ``t -> (|dK_t|, |K_t|)`` at ``n`` equispaced ``t`` in ``[0, r - tol]``."""
    if n < 2:
        raise InvalidParameter("profile needs n >= 2")
    ts = np.linspace(0.0, K.inradius - tol, n)
    f = np.array([perimeter_at(K, t) for t in ts])
    g = np.array([area_at(K, t) for t in ts])
    return ErosionProfile(ts, f, g)


def _contributing(K: DiskPolygon, t: float) -> int:
    try:
        return erode(K, t).n_disks if t < K.inradius else 0
    except ErosionEmpty:
        return 0


def erosion_breakpoints(K: DiskPolygon, n_grid: int = 32, tol: float = 1e-13) -> list[float]:
    """Erosion distances at which an arc vanishes.

    Each disk carries at most one arc and the number of contributing disks is
    non-increasing in ``t``, so a grid scan plus recursive bisection finds
    every event lying between grid nodes with different counts.
    """
    r = K.inradius
    eps = tol * max(r, 1e-300)

    def split(a, ca, b, cb):
        if ca == cb:
            return []
        if b - a <= eps:
            return [0.5 * (a + b)]
        m = 0.5 * (a + b)
        cm = _contributing(K, m)
        return split(a, ca, m, cm) + split(m, cm, b, cb)

    ts = [r * k / n_grid for k in range(n_grid)] + [r * (1.0 - 1e-9)]
    counts = [_contributing(K, t) for t in ts]
    out: list[float] = []
    for k in range(len(ts) - 1):
        out += split(ts[k], counts[k], ts[k + 1], counts[k + 1])
    return out


def integrated_perimeter(K: DiskPolygon, epsrel: float = 1e-10) -> float:
    """Quadrature of ``t -> |dK_t|`` over ``[0, r]``; equals ``|K|``.

    The profile is smooth between arc-vanishing events, so each piece is
    integrated separately. On the last piece ``f`` may decay like a square
    root at ``t = r``; the substitution ``t = r - (r - b) u^2`` removes it.
    """
    r = K.inradius
    knots = [0.0] + erosion_breakpoints(K)
    total = 0.0
    for a, b in zip(knots, knots[1:]):
        val, _ = integrate.quad(lambda t: perimeter_at(K, t), a, b, epsabs=0.0, epsrel=epsrel, limit=200)
        total += val
    b = knots[-1]
    w = r - b
    val, _ = integrate.quad(lambda u: 2.0 * w * u * perimeter_at(K, r - w * u * u), 0.0, 1.0, epsabs=0.0, epsrel=epsrel, limit=200)
    return float(total + val)


def support(K: DiskPolygon, theta):
    """Support function ``max <u(theta), x>`` over ``x`` in ``K``; accepts arrays."""
    base = K._piece_start[0]
    th = np.asarray(theta, dtype=float)
    t = base + np.mod(th - base, TWO_PI)
    idx = np.searchsorted(K._piece_start, t, side="right") - 1
    idx = np.clip(idx, 0, len(K._piece_start) - 1)
    c = K._piece_coef[idx]
    out = c[..., 0] * np.cos(th) + c[..., 1] * np.sin(th) + c[..., 2]
    return float(out) if out.ndim == 0 else out


def contains(K: DiskPolygon, p, tol: float = 0.0) -> bool:
    R = K.R
    return all(math.hypot(p[0] - c.x, p[1] - c.y) <= R + tol for c in K.centers)


def reduce_to_touching(K: DiskPolygon, tol: Optional[float] = None) -> DiskPolygon:
    """Drop every disk whose circle does not touch the inscribed disk."""
    if tol is None:
        tol = TOUCH_TOL * K.R
    o, rho = K.incenter, K.R - K.inradius
    kept = [c for c in K.centers if math.hypot(c.x - o.x, c.y - o.y) >= rho - tol]
    if len(kept) == len(K.centers):
        return K
    return build(kept, K.lam)


def is_touching_form(K: DiskPolygon, tol: Optional[float] = None) -> bool:
    if tol is None:
        tol = TOUCH_TOL * K.R
    o, rho = K.incenter, K.R - K.inradius
    return all(math.hypot(c.x - o.x, c.y - o.y) >= rho - tol for c in K.centers)


@dataclass(frozen=True)
class AngleSpectrum:
    """Angles at the incenter subtended by the half-arcs between a vertex and
    a touching point, together with the half-arc lengths."""

    phis: tuple[float, ...]
    side_lengths: tuple[float, ...]
    N: int
    r: float
    lam: float

    @property
    def r_normalized(self) -> float:
        return self.r * self.lam

    @property
    def ratios(self) -> tuple[float, ...]:
        """``|F_i| / (r * phi_i)`` for every side."""
        return tuple(L / (self.r * p) for L, p in zip(self.side_lengths, self.phis))

    @property
    def angle_sum(self) -> float:
        return math.fsum(self.phis)

    @property
    def max_phi(self) -> float:
        return max(self.phis)

    @property
    def within_right_angle(self) -> bool:
        return self.max_phi <= math.pi / 2 + 1e-12


def angle_spectrum(K: DiskPolygon) -> AngleSpectrum:
    """Split every arc at its tangency with the inscribed circle and measure
    the angle each half subtends at the incenter."""
    if len(K.arcs) < 2:
        raise NoVertices("a single disk has no vertices")
    if not is_touching_form(K):
        raise NotTouchingForm("some disk misses the inscribed circle; run reduce_to_touching first")
    R, o = K.R, K.incenter
    phis, lengths = [], []
    for a in K.arcs:
        c = K.centers[a.center_index]
        theta_t = math.atan2(o.y - c.y, o.x - c.x)
        theta_t = a.start + wrap_angle(theta_t - a.start)
        if theta_t > a.end:
            # rounding can push the tangency just past an end of the arc
            theta_t = a.end if theta_t - a.end < math.pi else a.start
        for lo, hi in ((a.start, theta_t), (theta_t, a.end)):
            if hi - lo <= 1e-15:
                continue
            px, py = c.x + R * math.cos(lo) - o.x, c.y + R * math.sin(lo) - o.y
            qx, qy = c.x + R * math.cos(hi) - o.x, c.y + R * math.sin(hi) - o.y
            phis.append(math.atan2(abs(px * qy - py * qx), px * qx + py * qy))
            lengths.append(R * (hi - lo))
    return AngleSpectrum(tuple(phis), tuple(lengths), len(phis), K.inradius, K.lam)


def arcs_close(K1: DiskPolygon, K2: DiskPolygon, tol: float) -> bool:
    """Arc-for-arc comparison of two bodies (same radius, same arcs in the
    same cyclic order; the list may start at a different arc)."""
    if abs(K1.R - K2.R) > tol or len(K1.arcs) != len(K2.arcs):
        return False

    def same(a, b):
        ca, cb = K1.centers[a.center_index], K2.centers[b.center_index]
        return (
            math.hypot(ca.x - cb.x, ca.y - cb.y) <= tol
            and abs(math.remainder(a.start - b.start, TWO_PI)) <= tol
            and abs(a.width - b.width) <= tol
        )

    n = len(K1.arcs)
    for shift in range(n):
        if all(same(K1.arcs[k], K2.arcs[(k + shift) % n]) for k in range(n)):
            return True
    return False


def load_body(data: dict) -> DiskPolygon:
    """Parse the body JSON object ``{"lambda": ..., "centers": [[x, y], ...]}``."""
    lam = float(data.get("lambda", 1.0))
    centers = [(float(x), float(y)) for x, y in data["centers"]]
    return build(centers, lam)
