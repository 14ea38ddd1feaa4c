"""Hausdorff distance, best-fit lenses, lens quotients and the inequality battery."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import lens_model as lm
from .cheeger import cheeger
from .core_geom import TWO_PI, Point
from .disk_polygon import (
    AngleSpectrum,
    DiskPolygon,
    area,
    contains,
    erode,
    erosion_profile,
    integrated_perimeter,
    perimeter,
    perimeter_at,
)
from .errors import ScaleMismatch

# tolerance ledger
GEOM_TOL = 1e-12
QUOTIENT_TOL = 1e-9
CHEEGER_TOL = 1e-6
PROFILE_REL_TOL = 1e-6
CONCAVITY_TOL = 1e-8
HS_SAMPLES = 256
# default tilde-T, the larger coefficient of the two small/big angle bounds
TILDE_T = max(2 * math.pi**2, 6 * math.pi**2 / (math.pi - 2))


# ---------------------------------------------------------------------------
# Hausdorff distance

def _pieces(K: DiskPolygon) -> tuple[list[float], list[tuple[float, float, float]]]:
    starts = np.mod(K._piece_start, TWO_PI)
    order = np.argsort(starts, kind="stable")
    return [float(starts[i]) for i in order], [tuple(map(float, K._piece_coef[i])) for i in order]


def _lens_pieces(cx: float, cy: float, ori: float, r_lens: float, R: float):
    """Support pieces of a lens without building a DiskPolygon."""
    h = (1.0 - r_lens) * R
    if h <= 0.0:
        return [0.0], [(cx, cy, R)]
    alpha = math.acos(min(1.0, h / R))
    w = math.sqrt(max(0.0, R * R - h * h))
    ux, uy = math.cos(ori), math.sin(ori)
    raw = sorted([
        ((ori - alpha) % TWO_PI, (cx - h * ux, cy - h * uy, R)),
        ((ori + alpha) % TWO_PI, (cx - w * uy, cy + w * ux, 0.0)),
        ((ori + math.pi - alpha) % TWO_PI, (cx + h * ux, cy + h * uy, R)),
        ((ori + math.pi + alpha) % TWO_PI, (cx + w * uy, cy - w * ux, 0.0)),
    ])
    return [s for s, _ in raw], [c for _, c in raw]


def _hausdorff_pieces(s1, c1, s2, c2) -> float:
    # plain Python: the piece lists are short and this sits inside the lens fit
    bps = sorted(set(s1) | set(s2) | {0.0})
    bps.append(TWO_PI)
    n1, n2 = len(s1), len(s2)
    j1 = j2 = 0
    best = 0.0
    for k in range(len(bps) - 1):
        a, b = bps[k], bps[k + 1]
        if b <= a:
            continue
        while j1 < n1 and s1[j1] <= a:
            j1 += 1
        while j2 < n2 and s2[j2] <= a:
            j2 += 1
        p, q = c1[j1 - 1], c2[j2 - 1]  # index -1 is the piece wrapping past 2pi
        A, B, C = p[0] - q[0], p[1] - q[1], p[2] - q[2]
        best = max(best, abs(A * math.cos(a) + B * math.sin(a) + C), abs(A * math.cos(b) + B * math.sin(b) + C))
        amp = math.hypot(A, B)
        if amp > 0.0:
            crit = math.atan2(B, A)
            if a + (crit - a) % TWO_PI <= b:
                best = max(best, abs(C + amp))
            if a + (crit + math.pi - a) % TWO_PI <= b:
                best = max(best, abs(C - amp))
    return best


def hausdorff(K1: DiskPolygon, K2: DiskPolygon) -> float:
    """Exact Hausdorff distance, the sup-norm of the support-function difference.

    Between consecutive breakpoints both support functions have the form
    ``<u, p> + c``, so each piece is maximized in closed form.
    """
    if not math.isclose(K1.lam, K2.lam, rel_tol=1e-12):
        raise ScaleMismatch(f"lambda {K1.lam} != {K2.lam}")
    return _hausdorff_pieces(*_pieces(K1), *_pieces(K2))


# ---------------------------------------------------------------------------
# best-fit lens

class FitMode(str, enum.Enum):
    FREE_PERIMETER = "free"
    MATCH_PERIMETER = "match"


@dataclass(frozen=True)
class BestLensFit:
    lens: lm.Lens
    d_H: float
    converged: bool
    starts_tried: int


def best_fit_lens(
    K: DiskPolygon,
    mode: FitMode | str = FitMode.FREE_PERIMETER,
    n_starts: int = 16,
    max_evals: int = 2000,
) -> BestLensFit:
    """Locally optimal lens in Hausdorff distance, by multi-start Nelder-Mead.

    Starts share the incenter and the perimeter-matched inradius and differ in
    orientation, on a uniform grid of ``[0, pi)``. The lens inradius is
    searched as ``1 - |q|`` so the disk (``q = 0``) is an interior point. The
    best start is then polished by restarting the simplex around it.
    """
    mode = FitMode(mode)
    R, lam = K.R, K.lam
    sK, cK = _pieces(K)
    p = perimeter(K)
    r0 = min(1.0, lam * lm.G_inradius(p, lam))
    q0 = 1.0 - r0
    o = K.incenter
    scale = max(q0, 1e-6)

    def r_of(q: float) -> float:
        return min(1.0, max(1e-9, 1.0 - abs(q)))

    if mode is FitMode.FREE_PERIMETER:
        def objective(x):
            return _hausdorff_pieces(sK, cK, *_lens_pieces(x[0], x[1], x[2], r_of(x[3]), R))
        steps = np.array([0.1 * scale * R, 0.1 * scale * R, math.pi / 16, 0.1 * scale])
    else:
        def objective(x):
            return _hausdorff_pieces(sK, cK, *_lens_pieces(x[0], x[1], x[2], r0, R))
        steps = np.array([0.1 * scale * R, 0.1 * scale * R, math.pi / 16])

    def run(x0, st):
        simplex = np.vstack([x0, np.asarray(x0) + np.diag(st)])
        return optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "maxfev": max_evals, "xatol": 1e-13, "fatol": 1e-15},
        )

    best = None
    for k in range(n_starts):
        x0 = [o.x, o.y, math.pi * k / n_starts, q0][: len(steps)]
        res = run(x0, steps)
        if best is None or res.fun < best.fun:
            best = res
    converged = bool(best.success)
    for _ in range(3):
        st = steps * 0.1
        res = run(best.x, st)
        if res.fun >= best.fun * (1.0 - 1e-9):
            break
        best = res
        converged = bool(res.success)
    x = best.x
    r_fit = r_of(x[3]) if mode is FitMode.FREE_PERIMETER else r0
    lens = lm.Lens(Point(float(x[0]), float(x[1])), float(x[2]) % math.pi, float(r_fit), lam)
    d = hausdorff(K, lm.lens_to_body(lens))
    return BestLensFit(lens=lens, d_H=d, converged=converged, starts_tried=n_starts)


# ---------------------------------------------------------------------------
# quotients

@dataclass(frozen=True)
class QuotientReport:
    perimeter: float
    area: float
    inradius: float
    cheeger_h: float
    quotient_I: float
    quotient_in: float
    quotient_Ch: float
    lam: float

    @property
    def I_ok(self) -> bool:
        return self.quotient_I >= 1.0 - QUOTIENT_TOL

    @property
    def in_ok(self) -> bool:
        return self.quotient_in >= 1.0 - QUOTIENT_TOL

    @property
    def Ch_ok(self) -> bool:
        return self.quotient_Ch <= 1.0 + CHEEGER_TOL

    @property
    def all_ok(self) -> bool:
        return self.I_ok and self.in_ok and self.Ch_ok


def quotients(K: DiskPolygon, with_cheeger: bool = True, cheeger_tol: float = 1e-12) -> QuotientReport:
    lam = K.lam
    p, A, r = perimeter(K), area(K), K.inradius
    if with_cheeger:
        h = cheeger(K, cheeger_tol).h
        Ch = h / lm.H_cheeger(p, lam)
    else:
        h = Ch = math.nan
    return QuotientReport(
        perimeter=p,
        area=A,
        inradius=r,
        cheeger_h=h,
        quotient_I=A / lm.F_area(p, lam),
        quotient_in=r / lm.G_inradius(p, lam),
        quotient_Ch=Ch,
        lam=lam,
    )


def perimeter_deficit(K: DiskPolygon) -> float:
    """``1 - |dK| / |dL|`` for the lens ``L`` with the same inradius as ``K``."""
    return 1.0 - perimeter(K) / lm.G_inverse(K.inradius, K.lam)


# ---------------------------------------------------------------------------
# inequality battery

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    bound: float
    detail: str = ""
    # non-gating checks are reported but do not decide the verdict
    gating: bool = True

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "bound": self.bound,
            "gating": self.gating,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    quotients: QuotientReport
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gating)

    def failures(self, include_informational: bool = False) -> list[Check]:
        return [c for c in self.checks if not c.passed and (c.gating or include_informational)]


def _hs_inclusion(K: DiskPolygon, r_lens_abs: float) -> Check:
    rK = K.inradius
    s = (rK - r_lens_abs) / rK
    if s <= GEOM_TOL:
        return Check("hs_inclusion", True, 0.0, 0.0, "r(K) = r(L): both sides reduce to the incenter")
    Kr = erode(K, r_lens_abs)
    o = K.incenter
    pts = K.boundary_points(HS_SAMPLES)
    img = np.column_stack([o.x + s * (pts[:, 0] - o.x), o.y + s * (pts[:, 1] - o.y)])
    cs = np.array(Kr.centers)
    excess = np.max(np.hypot(img[:, None, 0] - cs[None, :, 0], img[:, None, 1] - cs[None, :, 1])) - Kr.R
    ok = all(contains(Kr, q, tol=1e-9 * K.R) for q in img)
    return Check("hs_inclusion", ok, float(excess), 1e-9 * K.R, f"scale {s:.6g} about the incenter")


def verify_inequalities(K: DiskPolygon, n_profile: int = 64, cheeger_tol: float = 1e-12) -> VerificationReport:
    q = quotients(K, cheeger_tol=cheeger_tol)
    lam, p = K.lam, q.perimeter
    checks = [
        Check("I_ge_1", q.I_ok, q.quotient_I, 1.0 - QUOTIENT_TOL),
        Check("in_ge_1", q.in_ok, q.quotient_in, 1.0 - QUOTIENT_TOL),
        Check("Ch_le_1", q.Ch_ok, q.quotient_Ch, 1.0 + CHEEGER_TOL),
    ]

    prof = erosion_profile(K, n_profile)
    dec = float(np.max(np.diff(prof.f)))
    conc = float(np.max(prof.second_differences())) if n_profile > 2 else 0.0
    checks.append(Check("profile_decreasing", dec <= 1e-12 * max(1.0, p), dec, 1e-12 * max(1.0, p)))
    checks.append(Check("profile_concave", conc <= CONCAVITY_TOL, conc, CONCAVITY_TOL))

    r_lens = min(1.0, lam * lm.G_inradius(p, lam))
    rL = r_lens / lam
    ts = np.linspace(0.0, rL, n_profile + 1)[1:]
    gaps = [perimeter_at(K, t) - lm.lens_perimeter_at(r_lens, t, lam) for t in ts]
    worst = float(min(gaps))
    checks.append(Check("perimeter_dominates_lens", worst >= -1e-9, worst, -1e-9, "min f_K - f_L on (0, r(L)]"))

    integ = integrated_perimeter(K)
    rel = abs(integ - q.area) / q.area
    checks.append(Check("volume_integral", rel <= PROFILE_REL_TOL, rel, PROFILE_REL_TOL))

    checks.append(_hs_inclusion(K, rL))

    lhs = q.quotient_in - 1.0
    rhs = 2.0 * (q.quotient_I - 1.0) + 1e-8
    checks.append(Check("inradius_vs_area_quotient", lhs <= rhs, lhs, rhs, "in - 1 <= 2 (I - 1)", gating=False))

    # (x - 1)^2 / x <= C eps with x = in, C = 2|L| / (|dL| r(L)); x sits
    # below the larger root of x^2 - (2 + C eps) x + 1
    ce = 2.0 * lm.F_area(p, lam) / (p * rL) * max(q.quotient_I - 1.0, 0.0)
    root = 1.0 + 0.5 * (ce + math.sqrt(max(0.0, (2.0 + ce) ** 2 - 4.0)))
    checks.append(Check("inradius_root_bound", q.quotient_in <= root + 1e-9, q.quotient_in, root + 1e-9,
                        "in <= larger root of the area-deficit quadratic"))
    return VerificationReport(q, tuple(checks))


# ---------------------------------------------------------------------------
# angle classification

class AngleLabel(str, enum.Enum):
    BIG = "Big"
    SMALL = "Small"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class AngleClassification:
    labels: tuple[AngleLabel, ...]
    eps_used: float
    tildeT_used: float
    threshold: float
    out_of_regime: bool

    @property
    def n_big(self) -> int:
        return sum(1 for x in self.labels if x is AngleLabel.BIG)

    @property
    def n_small(self) -> int:
        return sum(1 for x in self.labels if x is AngleLabel.SMALL)

    @property
    def n_unresolved(self) -> int:
        return sum(1 for x in self.labels if x is AngleLabel.UNRESOLVED)


def classify_angles(spec: AngleSpectrum, eps: float, tildeT: float = TILDE_T) -> AngleClassification:
    """Label each side angle Small (``phi <= T sqrt(eps)/N``), Big
    (``phi >= pi/2 - T sqrt(eps)/N``) or Unresolved.

    Once the threshold reaches ``pi/4`` the two regions overlap; such angles
    go to the nearer label and the result is flagged out of regime.
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    thr = tildeT * math.sqrt(eps) / spec.N
    half = math.pi / 4
    labels = []
    for phi in spec.phis:
        small = phi <= thr
        big = phi >= math.pi / 2 - thr
        if small and big:
            labels.append(AngleLabel.BIG if phi >= half else AngleLabel.SMALL)
        elif small:
            labels.append(AngleLabel.SMALL)
        elif big:
            labels.append(AngleLabel.BIG)
        else:
            labels.append(AngleLabel.UNRESOLVED)
    return AngleClassification(tuple(labels), eps, tildeT, thr, thr >= half)


# ---------------------------------------------------------------------------
# serialization

def report_json(K: DiskPolygon, fit: bool = True, cheeger_tol: float = 1e-12) -> dict:
    """Full analysis in the fixed report schema."""
    ver = verify_inequalities(K, cheeger_tol=cheeger_tol)
    q = ver.quotients
    d = best_fit_lens(K).d_H if fit else None
    return {
        "lambda": K.lam,
        "perimeter": q.perimeter,
        "area": q.area,
        "inradius": q.inradius,
        "cheeger": q.cheeger_h,
        "I": q.quotient_I,
        "in": q.quotient_in,
        "Ch": q.quotient_Ch,
        "d_H_best_lens": d,
        "passed": ver.passed,
        "checks": [c.to_json() for c in ver.checks],
    }
