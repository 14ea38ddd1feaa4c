"""Closed-form lens functions and the explicit constants of the angle analysis.

All functions of a perimeter ``x`` take an optional ``lam``; the unit-radius
versions are rescaled as ``F(x) = F1(lam x) / lam^2``, ``G(x) = G1(lam x) / lam``
and ``H(x) = lam * H1(lam x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core_geom import TWO_PI, Point, solve_monotone_root, two_disk_intersection_area
from .disk_polygon import DiskPolygon, build
from .errors import InvalidParameter, OutOfDomain

# perimeters may overshoot 2*pi/lam by rounding
_DOMAIN_SLACK = 1e-12


def _check_perimeter(x: float, allow_zero: bool = True) -> float:
    if x > TWO_PI and x <= TWO_PI * (1.0 + _DOMAIN_SLACK):
        x = TWO_PI
    if not (0.0 <= x <= TWO_PI) or (not allow_zero and x == 0.0):
        raise OutOfDomain(f"lens perimeter {x} outside [0, 2pi]")
    return x


def F_area(x: float, lam: float = 1.0) -> float:
    """Area of the lens with perimeter ``x``."""
    y = _check_perimeter(lam * x)
    if y < 1e-3:
        # x/2 - sin(x/2) cancels catastrophically; use the series instead
        h = 0.5 * y
        val = h**3 / 6 * (1 - h * h / 20 * (1 - h * h / 42 * (1 - h * h / 72)))
    else:
        val = 0.5 * y - math.sin(0.5 * y)
    return val / (lam * lam)


def G_inradius(x: float, lam: float = 1.0) -> float:
    """Inradius of the lens with perimeter ``x``."""
    y = _check_perimeter(lam * x)
    return 2.0 * math.sin(y / 8.0) ** 2 / lam


def G_inverse(r: float, lam: float = 1.0) -> float:
    """Perimeter of the lens with inradius ``r``: ``4 arccos(1 - lam r) / lam``."""
    s = lam * r
    if not 0.0 <= s <= 1.0 + 1e-15:
        raise OutOfDomain(f"lens inradius {r} outside [0, 1/lam]")
    return 4.0 * math.acos(max(-1.0, 1.0 - s)) / lam


@lru_cache(maxsize=4096)
def _cheeger_t_unit(x: float) -> float:
    r = G_inradius(x)
    if r >= 1.0:
        return 0.5
    d = 2.0 * (1.0 - r)

    def balance(t: float) -> float:
        return two_disk_intersection_area(1.0 - t, d) - math.pi * t * t

    return solve_monotone_root(balance, 0.0, r, tol=1e-12 * max(r, 1e-3))


def H_cheeger(x: float, lam: float = 1.0) -> float:
    """Cheeger constant of the lens with perimeter ``x``."""
    y = _check_perimeter(lam * x, allow_zero=False)
    return lam / _cheeger_t_unit(y)


def lens_cheeger_t(x: float, lam: float = 1.0) -> float:
    """``t_L = 1 / H(x)``."""
    return 1.0 / H_cheeger(x, lam)


def H_phi(phi: float, r: float) -> float:
    """``|F| / (r phi)`` for a unit-circle side tangent to the inscribed circle
    of radius ``r`` and subtending ``phi`` at its center."""
    if not (0.0 < phi <= math.pi / 2 + 1e-12) or not (0.0 < r < 1.0):
        raise OutOfDomain(f"H_phi needs phi in (0, pi/2], r in (0, 1); got {phi}, {r}")
    return 1.0 / r - math.asin((1.0 - r) * math.sin(phi)) / (r * phi)


def H_phi_chord(phi: float, r: float) -> float:
    """Line through ``(0, H(0))`` and ``(pi/2, H(pi/2))``."""
    s = 1.0 - r
    return 2.0 * (math.pi * s - 2.0 * math.asin(s)) / (math.pi**2 * r) * phi + 1.0


@dataclass(frozen=True)
class AngleConstants:
    C: float
    D: float
    tildeC: float
    tildeD: float


def constants(r: float) -> AngleConstants:
    """The four explicit constants controlling small and big side angles."""
    if not 0.0 < r < 1.0:
        raise OutOfDomain(f"r must lie in (0, 1), got {r}")
    s = 1.0 - r
    a1 = 3.0 * math.asin(s / 2.0) - math.asin(s)
    a2 = math.pi * s - 2.0 * math.asin(s)
    C = 0.5 * math.pi * r / a1
    D = math.pi**2 * r / (2.0 * a2)
    tildeC = 2.0 * math.pi * math.acos(s) / a1
    tildeD = 12.0 * math.pi * math.acos(s) / a2
    return AngleConstants(C, D, tildeC, tildeD)


@dataclass(frozen=True)
class Lens:
    center: Point
    orientation: float
    r_lens: float
    lam: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.r_lens <= 1.0:
            raise InvalidParameter(f"r_lens must lie in (0, 1], got {self.r_lens}")
        if not self.lam > 0.0:
            raise InvalidParameter("lambda must be positive")

    @property
    def distance(self) -> float:
        """Distance between the two generating centers."""
        return 2.0 * (1.0 - self.r_lens) / self.lam

    def disk_centers(self) -> tuple[Point, Point]:
        h = 0.5 * self.distance
        ux, uy = math.cos(self.orientation), math.sin(self.orientation)
        cx, cy = self.center
        return Point(cx + h * ux, cy + h * uy), Point(cx - h * ux, cy - h * uy)


def lens_to_body(L: Lens) -> DiskPolygon:
    return build(L.disk_centers(), L.lam)


def lens_with_perimeter(x: float, lam: float = 1.0, center=(0.0, 0.0), orientation: float = 0.0) -> Lens:
    return Lens(Point(*center), orientation, min(1.0, lam * G_inradius(x, lam)), lam)


def lens_perimeter_at(r_lens: float, t: float, lam: float = 1.0) -> float:
    """``|dL_t|`` for the lens of normalized inradius ``r_lens``, closed form."""
    R = 1.0 / lam
    rho = (1.0 - r_lens) * R
    Rt = R - t
    if Rt <= rho:
        return 0.0
    return 4.0 * Rt * math.acos(rho / Rt)


def lens_area_at(r_lens: float, t: float, lam: float = 1.0) -> float:
    R = 1.0 / lam
    rho = (1.0 - r_lens) * R
    if R - t <= rho:
        return 0.0
    return two_disk_intersection_area(R - t, 2.0 * rho)
