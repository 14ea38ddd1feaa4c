"""Planar primitives: points, angular intervals, minimum enclosing circle,
a bracketing root finder, and the closed-form area of two equal disks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

from .errors import EmptyPointSet, InvalidGeometry, NoBracket

TWO_PI = 2.0 * math.pi

# Seed of the shuffle inside min_enclosing_circle. Changing it changes nothing
# mathematically but may perturb the last bits of the returned circle.
MEC_SHUFFLE_SEED = 20240917
DEDUPE_TOL = 1e-14
_MEC_REL_EPS = 1e-14


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise InvalidGeometry(f"negative radius {self.radius}")

    def contains(self, p, tol: float = 0.0) -> bool:
        return math.hypot(p[0] - self.center.x, p[1] - self.center.y) <= self.radius + tol


def wrap_angle(theta: float) -> float:
    """Map an angle into [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


def wrap_signed(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    t = wrap_angle(theta)
    return t - TWO_PI if t > math.pi else t


@dataclass(frozen=True)
class AngleInterval:
    """Closed arc of directions ``[mid - half_width, mid + half_width]``.

    ``half_width == pi`` is the full circle. The empty set is represented by
    ``None`` wherever an interval may vanish.
    """

    mid: float
    half_width: float

    def __post_init__(self):
        if not 0.0 <= self.half_width <= math.pi:
            raise InvalidGeometry(f"half_width {self.half_width} outside [0, pi]")
        object.__setattr__(self, "mid", wrap_angle(self.mid))

    @property
    def is_full(self) -> bool:
        return self.half_width >= math.pi

    @property
    def start(self) -> float:
        return wrap_angle(self.mid - self.half_width)

    @property
    def width(self) -> float:
        return 2.0 * self.half_width

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        if self.is_full:
            return True
        return abs(wrap_signed(theta - self.mid)) <= self.half_width + tol

    def intersect(self, other: "AngleInterval") -> Optional["AngleInterval"]:
        """Intersection of two intervals whose widths sum to less than 2*pi.

        Under that condition the intersection is connected, so it is again an
        interval (or empty).
        """
        if self.is_full:
            return other
        if other.is_full:
            return self
        offset = wrap_signed(other.mid - self.mid)
        lo = max(-self.half_width, offset - other.half_width)
        hi = min(self.half_width, offset + other.half_width)
        if hi < lo:
            return None
        return AngleInterval(self.mid + 0.5 * (lo + hi), 0.5 * (hi - lo))


def unit(theta: float) -> tuple[float, float]:
    return math.cos(theta), math.sin(theta)


# ---------------------------------------------------------------------------
# minimum enclosing circle

def _dedupe(points: Sequence, tol: float = DEDUPE_TOL) -> list[Point]:
    out: list[Point] = []
    for x, y in points:
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidGeometry(f"non-finite point ({x}, {y})")
        if all(abs(x - q.x) > tol or abs(y - q.y) > tol for q in out):
            out.append(Point(x, y))
    return out


def _in_circle(c: tuple[float, float, float], p: Point) -> bool:
    return math.hypot(p.x - c[0], p.y - c[1]) <= c[2] * (1.0 + _MEC_REL_EPS) + 1e-300


def _diameter(a: Point, b: Point) -> tuple[float, float, float]:
    cx, cy = 0.5 * (a.x + b.x), 0.5 * (a.y + b.y)
    return cx, cy, max(math.hypot(cx - a.x, cy - a.y), math.hypot(cx - b.x, cy - b.y))


def _circumcircle(a: Point, b: Point, c: Point) -> Optional[tuple[float, float, float]]:
    # translate to the bounding-box center for conditioning
    ox = (min(a.x, b.x, c.x) + max(a.x, b.x, c.x)) / 2
    oy = (min(a.y, b.y, c.y) + max(a.y, b.y, c.y)) / 2
    ax, ay = a.x - ox, a.y - oy
    bx, by = b.x - ox, b.y - oy
    cx, cy = c.x - ox, c.y - oy
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    x = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    y = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    r = max(math.hypot(x - a.x, y - a.y), math.hypot(x - b.x, y - b.y), math.hypot(x - c.x, y - c.y))
    return x, y, r


def _cross(ox, oy, ax, ay, bx, by) -> float:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _circle_two_points(pts: list[Point], p: Point, q: Point):
    circ = _diameter(p, q)
    left = right = None
    for r in pts:
        if _in_circle(circ, r):
            continue
        cross = _cross(p.x, p.y, q.x, q.y, r.x, r.y)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        side = _cross(p.x, p.y, q.x, q.y, c[0], c[1])
        if cross > 0.0 and (left is None or side > _cross(p.x, p.y, q.x, q.y, left[0], left[1])):
            left = c
        elif cross < 0.0 and (right is None or side < _cross(p.x, p.y, q.x, q.y, right[0], right[1])):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_one_point(pts: list[Point], p: Point):
    c = (p.x, p.y, 0.0)
    for i, q in enumerate(pts):
        if not _in_circle(c, q):
            if c[2] == 0.0:
                c = _diameter(p, q)
            else:
                c = _circle_two_points(pts[: i + 1], p, q)
    return c


def min_enclosing_circle(points: Sequence) -> Circle:
    """Smallest circle containing every point (randomized incremental, Welzl style).

    Points closer than ``DEDUPE_TOL`` in both coordinates are merged first. The
    shuffle uses a private ``random.Random(MEC_SHUFFLE_SEED)`` so the result is
    reproducible.
    """
    pts = _dedupe(points)
    if not pts:
        raise EmptyPointSet("min_enclosing_circle needs at least one point")
    random.Random(MEC_SHUFFLE_SEED).shuffle(pts)
    c = None
    for i, p in enumerate(pts):
        if c is None or not _in_circle(c, p):
            c = _circle_one_point(pts[: i + 1], p)
    return Circle(Point(c[0], c[1]), c[2])


# ---------------------------------------------------------------------------
# root finding

def solve_monotone_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_iter: int = 400,
    full_output: bool = False,
):
    """Root of a continuous function with a sign change on ``[a, b]``.

    Alternates a secant (false position) step with a bisection step, always
    keeping a valid bracket, and stops once the bracket is narrower than
    ``tol``. The returned point is the endpoint with the smaller ``|f|``.
    With ``full_output`` returns ``(root, iterations)``.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return (a, 0) if full_output else a
    if fb == 0.0:
        return (b, 0) if full_output else b
    if (fa > 0.0) == (fb > 0.0):
        raise NoBracket(f"f({a})={fa} and f({b})={fb} have the same sign")
    it = 0
    use_secant = True
    while abs(b - a) > tol and it < max_iter:
        it += 1
        m = 0.5 * (a + b)
        if use_secant and fb != fa:
            s = b - fb * (b - a) / (fb - fa)
            if min(a, b) < s < max(a, b):
                m = s
        use_secant = not use_secant
        fm = f(m)
        if fm == 0.0:
            return (m, it) if full_output else m
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    root = a if abs(fa) <= abs(fb) else b
    return (root, it) if full_output else root


# ---------------------------------------------------------------------------
# two-disk lens area

def two_disk_intersection_area(rho: float, d: float) -> float:
    """Area of the intersection of two disks of radius ``rho`` whose centers
    are ``d`` apart."""
    if rho <= 0.0 or d < 0.0 or not (math.isfinite(rho) and math.isfinite(d)):
        raise InvalidGeometry(f"need rho > 0 and d >= 0, got rho={rho}, d={d}")
    if d >= 2.0 * rho:
        return 0.0
    if d == 0.0:
        return math.pi * rho * rho
    return 2.0 * rho * rho * math.acos(d / (2.0 * rho)) - 0.5 * d * math.sqrt(4.0 * rho * rho - d * d)
