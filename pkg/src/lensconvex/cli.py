"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
Floats in CSV output carry 17 significant digits so rows round-trip exactly.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from . import lens_model as lm
from .disk_polygon import DiskPolygon, angle_spectrum, erosion_profile, load_body
from .errors import GeometryError
from .harness import (
    FAMILY_STYLES,
    THEOREM_KIND,
    fitted_slope,
    random_body,
    suite_plan,
    sweep_row,
    sweep_targets,
)
from .metrics import FitMode, best_fit_lens, classify_angles, quotients, report_json, verify_inequalities

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

VERIFY_CHECKS = (
    "I_ge_1",
    "in_ge_1",
    "Ch_le_1",
    "profile_decreasing",
    "profile_concave",
    "perimeter_dominates_lens",
    "volume_integral",
    "hs_inclusion",
    "inradius_vs_area_quotient",
    "inradius_root_bound",
)


class InputError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def write_csv(rows: Iterable[Sequence], header: Sequence[str], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _emit_csv(path, header, rows) -> None:
    fh, close = _open_out(path)
    try:
        write_csv(rows, header, fh)
    finally:
        if close:
            fh.close()


def _emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, allow_nan=True)
    sys.stdout.write("\n")


def read_body(path: str, lam: float | None) -> DiskPolygon:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "centers" not in data:
        raise InputError(f"{path}: expected an object with a 'centers' list")
    try:
        K = load_body(data)
    except (TypeError, ValueError, KeyError) as exc:
        raise InputError(f"{path}: malformed body ({exc})") from exc
    if lam is not None and lam != K.lam:
        # rescale about the origin to the requested curvature bound
        K = K.transformed(scale=K.lam / lam)
    return K


# ---------------------------------------------------------------------------
# subcommands

def cmd_analyze(args) -> int:
    K = read_body(args.body, args.lam)
    _emit_json(report_json(K, fit=not args.no_fit, cheeger_tol=args.tol))
    return EXIT_OK


def _verify_one(job):
    index, seed, m, spread, lam, tol = job
    K = random_body(seed, m, spread, lam)
    rep = verify_inequalities(K, cheeger_tol=tol)
    q = rep.quotients
    by_name = {c.name: c.passed for c in rep.checks}
    return [index, seed, m, K.n_disks, q.perimeter, q.area, q.inradius, q.cheeger_h,
            q.quotient_I, q.quotient_in, q.quotient_Ch] + [by_name[n] for n in VERIFY_CHECKS] + [rep.passed]


def cmd_verify(args) -> int:
    if args.n < 1 or args.m_max < 1:
        raise InputError("--n and --m-max must be >= 1")
    if not 0.0 < args.spread < 1.0:
        raise InputError("--spread must lie in (0, 1)")
    lam = args.lam or 1.0
    jobs = [(i, s, m, args.spread, lam, args.tol) for i, (s, m) in enumerate(suite_plan(args.n, args.seed, args.m_max))]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_verify_one, jobs, chunksize=8))
    else:
        rows = [_verify_one(j) for j in jobs]
    header = ["index", "seed", "m", "n_disks", "perimeter", "area", "inradius", "cheeger",
              "I", "in", "Ch"] + list(VERIFY_CHECKS) + ["passed"]
    _emit_csv(args.out, header, rows)
    n_fail = sum(1 for r in rows if not r[-1])
    print(f"verified {len(rows)} bodies, {n_fail} failed", file=sys.stderr)
    return EXIT_OK if n_fail == 0 else EXIT_FAIL


def cmd_profile(args) -> int:
    if args.n < 2:
        raise InputError("--n must be >= 2")
    K = read_body(args.body, args.lam)
    prof = erosion_profile(K, args.n)
    _emit_csv(args.out, ["t", "f", "g"], zip(map(float, prof.ts), map(float, prof.f), map(float, prof.g)))
    if args.plot:
        from .plotting import plot_profile

        r_lens = min(1.0, K.lam * lm.G_inradius(float(prof.f[0]), K.lam))
        plot_profile(prof, args.plot, [lm.lens_perimeter_at(r_lens, float(t), K.lam) for t in prof.ts])
    return EXIT_OK


def cmd_bestlens(args) -> int:
    K = read_body(args.body, args.lam)
    fit = best_fit_lens(K, FitMode(args.mode), n_starts=args.starts)
    L = fit.lens
    _emit_json(
        {
            "lambda": K.lam,
            "mode": args.mode,
            "d_H": fit.d_H,
            "converged": fit.converged,
            "starts": fit.starts_tried,
            "lens": {
                "center": [L.center.x, L.center.y],
                "orientation": L.orientation,
                "r_lens": L.r_lens,
                "centers": [[c.x, c.y] for c in L.disk_centers()],
            },
        }
    )
    if args.plot:
        from .plotting import plot_body

        plot_body(K, args.plot, [lm.lens_to_body(L)])
    return EXIT_OK


def cmd_spectrum(args) -> int:
    K = read_body(args.body, args.lam)
    spec = angle_spectrum(K)
    out = {
        "N": spec.N,
        "r": spec.r_normalized,
        "phis": list(spec.phis),
        "side_lengths": list(spec.side_lengths),
        "ratios": list(spec.ratios),
        "angle_sum": spec.angle_sum,
    }
    eps = args.eps
    if eps is None:
        eps = quotients(K, with_cheeger=False).quotient_I - 1.0
    if eps > 0.0:
        cls = classify_angles(spec, eps)
        out["classification"] = {
            "eps": eps,
            "threshold": cls.threshold,
            "out_of_regime": cls.out_of_regime,
            "labels": [lab.value for lab in cls.labels],
        }
    _emit_json(out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not 0.0 < args.eps_min <= args.eps_max <= 0.1:
        raise InputError("need 0 < eps-min <= eps-max <= 0.1")
    if args.steps < 1 or args.seeds < 1:
        raise InputError("--steps and --seeds must be >= 1")
    targets = sweep_targets(args.eps_min, args.eps_max, args.steps)
    seeds = [args.seed + k for k in range(args.seeds)]
    jobs = [(args.theorem, e, s, args.style) for e in targets for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    scale = 1.0 / (args.lam or 1.0)
    header = ["theorem", "kind", "eps_target", "seed", "n_disks", "eps", "d_H", "ratio"]
    _emit_csv(
        args.out,
        header,
        ([r.theorem, r.kind, r.eps_target, r.seed, r.n_disks, r.eps, r.d_H * scale, r.ratio * scale] for r in rows),
    )
    ratios = [r.ratio for r in rows]
    slope = fitted_slope(rows)
    print(
        f"theorem {args.theorem}: slope {slope:.4f}, ratio max/min {max(ratios) / min(ratios):.4g}",
        file=sys.stderr,
    )
    if args.plot:
        from .plotting import plot_sweep

        plot_sweep(rows, args.plot, title=f"Theorem {args.theorem} ({THEOREM_KIND[args.theorem]})")
    return EXIT_OK


def _sweep_one(job):
    theorem, e, s, style = job
    return sweep_row(theorem, e, s, style)


# ---------------------------------------------------------------------------
# argument parsing

def _positive(x: str) -> float:
    v = float(x)
    if not (v > 0.0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {x}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base seed for generated bodies")
    common.add_argument("--lambda", dest="lam", type=_positive, default=None,
                        help="curvature bound; inputs are rescaled to it on entry (default 1)")
    common.add_argument("--tol", type=_positive, default=1e-12, help="root tolerance for the Cheeger solver")

    parser = argparse.ArgumentParser(prog="lensconvex", description="Reverse isoperimetric checks for disk-polygons.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="quotients, checks and best lens for one body")
    p.add_argument("body", help="JSON file with \"centers\" and optional \"lambda\"")
    p.add_argument("--no-fit", action="store_true", help="skip the best-lens fit")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="run the inequality battery on random bodies")
    p.add_argument("--n", type=int, default=1000, help="number of bodies")
    p.add_argument("--m-max", type=int, default=12, help="max disks per body")
    p.add_argument("--spread", type=float, default=0.6, help="center scatter radius, below 1")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", parents=[common], help="erosion profile (t, f, g) of one body")
    p.add_argument("body", help="JSON file with \"centers\" and optional \"lambda\"")
    p.add_argument("--n", type=int, default=64, help="grid points on [0, r(K))")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--plot", default=None, help="SVG path")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("bestlens", parents=[common], help="Hausdorff-closest lens")
    p.add_argument("body", help="JSON file with \"centers\" and optional \"lambda\"")
    p.add_argument("--mode", choices=[m.value for m in FitMode], default=FitMode.FREE_PERIMETER.value)
    p.add_argument("--starts", type=int, default=16, help="Nelder-Mead starts")
    p.add_argument("--plot", default=None, help="SVG path")
    p.set_defaults(func=cmd_bestlens)

    p = sub.add_parser("spectrum", parents=[common], help="side angles and their classification")
    p.add_argument("body", help="JSON file with \"centers\" and optional \"lambda\"")
    p.add_argument("--eps", type=float, default=None, help="deviation for the classification (default I - 1)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", parents=[common], help="stability sweep over a lens-perturbation family")
    p.add_argument("--theorem", choices=sorted(THEOREM_KIND), required=True,
                   help="A and B use I - 1, C uses 1 - Ch")
    p.add_argument("--eps-min", type=float, default=1e-6)
    p.add_argument("--eps-max", type=float, default=1e-2)
    p.add_argument("--steps", type=int, default=24, help="log-spaced targets")
    p.add_argument("--seeds", type=int, default=3, help="number of seeds, counted up from --seed")
    p.add_argument("--style", choices=FAMILY_STYLES, default="round", help="family construction")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--plot", default=None, help="SVG path")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
