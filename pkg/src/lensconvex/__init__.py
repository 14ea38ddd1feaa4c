"""Reverse isoperimetric-type inequalities for lambda-convex bodies.

Bodies are disk-polygons: intersections of finitely many disks of radius
``1/lam``. The package computes their perimeter, area, inradius, erosions and
Cheeger constant exactly (up to root finding), compares them to the lens with
the same perimeter, and measures how far near-extremal bodies sit from lenses.
"""

from .cheeger import CheegerResult, cheeger, cheeger_constant
from .core_geom import Circle, Point, min_enclosing_circle, solve_monotone_root
from .disk_polygon import (
    AngleSpectrum,
    DiskPolygon,
    ErosionProfile,
    angle_spectrum,
    area,
    area_at,
    build,
    erode,
    erosion_profile,
    integrated_perimeter,
    load_body,
    perimeter,
    perimeter_at,
    reduce_to_touching,
    support,
)
from .errors import GeometryError
from .harness import lens_perturbation_family, random_body, run_sweep
from .lens_model import F_area, G_inradius, H_cheeger, H_phi, Lens, constants, lens_to_body
from .metrics import (
    AngleLabel,
    BestLensFit,
    FitMode,
    QuotientReport,
    best_fit_lens,
    classify_angles,
    hausdorff,
    quotients,
    verify_inequalities,
)

__version__ = "0.1.0"

__all__ = [
    "AngleLabel", "AngleSpectrum", "BestLensFit", "CheegerResult", "Circle", "DiskPolygon",
    "ErosionProfile", "F_area", "FitMode", "G_inradius", "GeometryError", "H_cheeger", "H_phi",
    "Lens", "Point", "QuotientReport", "angle_spectrum", "area", "area_at", "best_fit_lens",
    "build", "cheeger", "cheeger_constant", "classify_angles", "constants", "erode",
    "erosion_profile", "hausdorff", "integrated_perimeter", "lens_perturbation_family",
    "lens_to_body", "load_body", "min_enclosing_circle", "perimeter", "perimeter_at",
    "quotients", "random_body", "reduce_to_touching", "run_sweep", "solve_monotone_root",
    "support", "verify_inequalities",
]
