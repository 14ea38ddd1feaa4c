"""Independent reference computations.

None of these touch the arc structure built by the library; they work from
the raw disk centers only.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def mec_bruteforce(points):
    """Smallest circle among all pair diameters and triple circumcircles that
    encloses every point."""
    pts = [tuple(map(float, p)) for p in points]
    if len(pts) == 1:
        return pts[0], 0.0
    cands = []
    for a, b in itertools.combinations(pts, 2):
        c = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        cands.append((c, math.dist(a, b) / 2))
    for a, b, c in itertools.combinations(pts, 3):
        d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if abs(d) < 1e-14:
            continue
        ux = ((a[0] ** 2 + a[1] ** 2) * (b[1] - c[1]) + (b[0] ** 2 + b[1] ** 2) * (c[1] - a[1])
              + (c[0] ** 2 + c[1] ** 2) * (a[1] - b[1])) / d
        uy = ((a[0] ** 2 + a[1] ** 2) * (c[0] - b[0]) + (b[0] ** 2 + b[1] ** 2) * (a[0] - c[0])
              + (c[0] ** 2 + c[1] ** 2) * (b[0] - a[0])) / d
        cands.append(((ux, uy), math.dist((ux, uy), a)))
    best = None
    for c, r in cands:
        if all(math.dist(c, p) <= r * (1 + 1e-12) + 1e-14 for p in pts):
            if best is None or r < best[1]:
                best = (c, r)
    return best


def fixed_point_cos(n: int = 2000) -> float:
    t = 0.5
    for _ in range(n):
        t = math.cos(t)
    return t


def _inside_all(pts, centers, R, tol):
    d = np.hypot(pts[:, None, 0] - centers[None, :, 0], pts[:, None, 1] - centers[None, :, 1])
    return np.all(d <= R + tol, axis=1)


def candidate_points(centers, R, tol=1e-9):
    """All pairwise circle intersections that lie in every disk: the vertex
    set of the intersection, recovered without any arc bookkeeping."""
    cs = np.asarray(centers, dtype=float)
    out = []
    for i, j in itertools.combinations(range(len(cs)), 2):
        d = math.dist(cs[i], cs[j])
        if d == 0.0 or d >= 2 * R:
            continue
        mx, my = (cs[i] + cs[j]) / 2
        h = math.sqrt(R * R - d * d / 4)
        ux, uy = (cs[j] - cs[i]) / d
        out += [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]
    if not out:
        return np.zeros((0, 2))
    pts = np.array(out)
    return pts[_inside_all(pts, cs, R, tol)]


def support_oracle(centers, R, thetas):
    """Support function of the disk intersection from first principles: the
    maximizer in direction u is either some c_i + R u lying in all disks, or a
    vertex."""
    cs = np.asarray(centers, dtype=float)
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    u = np.column_stack([np.cos(th), np.sin(th)])
    best = np.full(len(th), -np.inf)
    for c in cs:
        p = c[None, :] + R * u
        ok = _inside_all(p, cs, R, 1e-12)
        val = p[:, 0] * u[:, 0] + p[:, 1] * u[:, 1]
        best = np.where(ok, np.maximum(best, val), best)
    verts = candidate_points(cs, R)
    if len(verts):
        best = np.maximum(best, (u @ verts.T).max(axis=1))
    return best


def boundary_samples(centers, R, n):
    """Dense boundary point cloud: points of every circle that lie in all
    disks, plus the exact vertices."""
    cs = np.asarray(centers, dtype=float)
    per = max(16, n // len(cs))
    th = np.linspace(0.0, 2 * math.pi, per, endpoint=False)
    chunks = [candidate_points(cs, R)]
    for c in cs:
        p = np.column_stack([c[0] + R * np.cos(th), c[1] + R * np.sin(th)])
        chunks.append(p[_inside_all(p, cs, R, 1e-12)])
    return np.vstack(chunks)


def mc_area(centers, R, n, seed=0, chunk=1_000_000):
    """Rejection-sampling area estimate and its standard error."""
    cs = np.asarray(centers, dtype=float)
    lo = cs.min(axis=0) - R
    hi = cs.max(axis=0) + R
    # the intersection sits inside any single disk; use the tightest box
    lo = np.maximum(lo, cs.max(axis=0) - R)
    hi = np.minimum(hi, cs.min(axis=0) + R)
    rng = np.random.default_rng(seed)
    box = float(np.prod(hi - lo))
    hits = 0
    done = 0
    while done < n:
        k = min(chunk, n - done)
        p = lo + (hi - lo) * rng.random((k, 2))
        hits += int(_inside_all(p, cs, R, 0.0).sum())
        done += k
    frac = hits / n
    return box * frac, box * math.sqrt(frac * (1 - frac) / n)


def polyline_length(points, center):
    """Length of the closed polyline through boundary points sorted by angle
    about an interior point."""
    p = np.asarray(points)
    ang = np.arctan2(p[:, 1] - center[1], p[:, 0] - center[0])
    q = p[np.argsort(ang)]
    d = np.diff(np.vstack([q, q[:1]]), axis=0)
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def hausdorff_sampled(c1, c2, R, n=100_000):
    th = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    return float(np.max(np.abs(support_oracle(c1, R, th) - support_oracle(c2, R, th))))


def two_disk_area_fine_scan_t(d, n=200_001):
    """Root of two_disk_area(1 - t, d) = pi t^2 by a fine grid scan with linear
    interpolation, using the textbook lens-area formula directly."""
    r = 1.0 - d / 2
    t = np.linspace(0.0, r, n)
    rho = 1.0 - t
    with np.errstate(invalid="ignore"):
        a = np.where(d < 2 * rho, 2 * rho**2 * np.arccos(np.clip(d / (2 * rho), -1, 1))
                     - d / 2 * np.sqrt(np.clip(4 * rho**2 - d * d, 0, None)), 0.0)
    g = a - np.pi * t**2
    k = int(np.argmax(g < 0))
    t0, t1, g0, g1 = t[k - 1], t[k], g[k - 1], g[k]
    return float(t0 - g0 * (t1 - t0) / (g1 - g0))
