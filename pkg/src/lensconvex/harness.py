"""Body generators, near-lens perturbation families and stability sweeps.

Randomness comes from numpy's PCG64 bit generator seeded directly with the
integer seed (via ``SeedSequence``); its output stream is specified and
identical across platforms and numpy versions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .disk_polygon import DiskPolygon, build
from .errors import FamilyTuningFailed, InvalidParameter
from .metrics import best_fit_lens, quotients

EXPONENTS = {"A": 0.5, "B": 0.5, "C": 0.25}
THEOREM_KIND = {"A": "I", "B": "in", "C": "Ch"}


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_centers(seed: int, m: int, spread: float) -> list[tuple[float, float]]:
    if m < 1:
        raise InvalidParameter("m must be >= 1")
    if not 0.0 < spread < 1.0:
        raise InvalidParameter("spread must lie in (0, 1)")
    rng = rng_for(seed)
    rad = spread * np.sqrt(rng.random(m))
    ang = 2.0 * math.pi * rng.random(m)
    return [(float(a), float(b)) for a, b in zip(rad * np.cos(ang), rad * np.sin(ang))]


def random_body(seed: int, m: int, spread: float, lam: float = 1.0) -> DiskPolygon:
    """``m`` unit disks with centers uniform in the disk of radius ``spread``,
    then rescaled to curvature bound ``lam``."""
    pts = random_centers(seed, m, spread)
    return build([(x / lam, y / lam) for x, y in pts], lam)


def suite_plan(n: int, seed: int, m_max: int) -> list[tuple[int, int]]:
    """Per-body ``(seed, m)`` pairs drawn from one master stream."""
    rng = rng_for(seed)
    return [(int(rng.integers(0, 2**62)), int(rng.integers(1, m_max + 1))) for _ in range(n)]


def suite_bodies(n: int, seed: int, m_max: int, spread: float, lam: float = 1.0) -> Iterator[tuple[int, int, int, DiskPolygon]]:
    """The verification suite: yields ``(index, body_seed, m, body)``."""
    for i, (s, m) in enumerate(suite_plan(n, seed, m_max)):
        yield i, s, m, random_body(s, m, spread, lam)


def realized_eps(K: DiskPolygon, kind: str) -> float:
    q = quotients(K, with_cheeger=(kind == "Ch"))
    if kind == "I":
        return q.quotient_I - 1.0
    if kind == "in":
        return q.quotient_in - 1.0
    if kind == "Ch":
        return 1.0 - q.quotient_Ch
    raise InvalidParameter(f"unknown quotient kind {kind!r}")


FAMILY_STYLES = ("round", "vertex")


@dataclass(frozen=True)
class PerturbedLens:
    body: DiskPolygon
    eps: float
    kind: str
    style: str
    magnitude: float
    n_extra: int


def _family_centers(rng: np.random.Generator, style: str):
    """Center layout of one family member as a function of its magnitude.

    ``round``: a lens whose generating centers sit at distance ``m`` from the
    origin, plus extra disks whose centers lie on the same circle at seeded
    angles well away from the lens axis. Every disk touches the inscribed
    circle and ``m -> 0`` collapses the body to the unit disk.

    ``vertex``: a fixed lens of inradius ``r`` in ``[0.25, 0.75]`` plus extra
    touching disks rotated by angle ``m`` off one generating center; they cut
    the lens vertices and ``m -> 0`` recovers the lens.
    """
    psi = float(rng.uniform(0.0, math.pi))
    n_extra = int(rng.integers(1, 4))
    if style == "round":
        angles = [float(rng.uniform(0.3, math.pi - 0.3)) * (1.0 if rng.random() < 0.5 else -1.0) for _ in range(n_extra)]

        def centers(m: float):
            dirs = [0.0, math.pi] + angles
            return [(m * math.cos(psi + a), m * math.sin(psi + a)) for a in dirs]

        return n_extra, centers, (1e-9, 0.9)
    if style == "vertex":
        rho = 1.0 - float(rng.uniform(0.25, 0.75))
        extras = [
            (int(rng.integers(0, 2)), 1.0 if rng.random() < 0.5 else -1.0, float(rng.uniform(0.5, 1.0)))
            for _ in range(n_extra)
        ]

        def centers(m: float):
            pts = [(rho * math.cos(psi), rho * math.sin(psi)), (-rho * math.cos(psi), -rho * math.sin(psi))]
            for side, sign, frac in extras:
                ang = psi + side * math.pi + sign * frac * m
                pts.append((rho * math.cos(ang), rho * math.sin(ang)))
            return pts

        return n_extra, centers, (1e-12, 1.0)
    raise InvalidParameter(f"unknown family style {style!r}")


def lens_perturbation_family(
    eps_target: float, seed: int, kind: str = "I", style: str = "round", max_steps: int = 80
) -> PerturbedLens:
    """A lens plus 1-3 extra disks touching its inscribed circle, with the
    perturbation magnitude bisected (in log scale) until the chosen quotient
    deviation lands in ``[eps_target / 2, 2 eps_target]``."""
    if not 0.0 < eps_target <= 0.1:
        raise InvalidParameter("eps_target must lie in (0, 0.1]")
    n_extra, centers, (m_lo, m_hi) = _family_centers(rng_for(seed), style)
    lo, hi = math.log(m_lo), math.log(m_hi)
    for _ in range(max_steps):
        mid = 0.5 * (lo + hi)
        K = build(centers(math.exp(mid)))
        eps = realized_eps(K, kind)
        if eps_target / 2 <= eps <= 2 * eps_target:
            return PerturbedLens(K, eps, kind, style, math.exp(mid), n_extra)
        if eps < eps_target:
            lo = mid
        else:
            hi = mid
    raise FamilyTuningFailed(f"no perturbation reached eps={eps_target} (seed {seed}, kind {kind}, style {style})")


@dataclass(frozen=True)
class SweepRow:
    theorem: str
    kind: str
    eps_target: float
    seed: int
    n_disks: int
    eps: float
    d_H: float

    @property
    def ratio(self) -> float:
        return self.d_H / self.eps ** EXPONENTS[self.theorem]


def sweep_targets(eps_min: float, eps_max: float, steps: int) -> list[float]:
    return [float(x) for x in np.geomspace(eps_min, eps_max, steps)]


def sweep_row(theorem: str, eps_target: float, seed: int, style: str = "round") -> SweepRow:
    kind = THEOREM_KIND[theorem]
    fam = lens_perturbation_family(eps_target, seed, kind, style)
    fit = best_fit_lens(fam.body)
    return SweepRow(theorem, kind, eps_target, seed, fam.body.n_disks, fam.eps, fit.d_H)


def run_sweep(theorem: str, targets: Sequence[float], seeds: Sequence[int], style: str = "round") -> list[SweepRow]:
    if theorem not in THEOREM_KIND:
        raise InvalidParameter(f"unknown theorem {theorem!r}")
    return [sweep_row(theorem, e, s, style) for e in targets for s in seeds]


def fitted_slope(rows: Sequence[SweepRow]) -> float:
    """Least-squares slope of ``log d_H`` against ``log eps``."""
    x = np.log([r.eps for r in rows])
    y = np.log([max(r.d_H, 1e-300) for r in rows])
    return float(np.polyfit(x, y, 1)[0])
