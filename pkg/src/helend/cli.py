"""Command-line interface.

Exit codes: 0 all requested checks pass, 1 verification failure, 2 usage
error, 3 numerical-tolerance failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import geometry, residue
from .descriptor import EndDescriptor, helicoid
from .errors import HelendError, ToleranceError
from .export import mesh_end, read_descriptor, write_curve_csv, write_descriptor, write_obj
from .geometry import combine_reports
from .weierstrass import period_check

ALL_CHECKS = ("residue", "periods", "rays", "curvature", "embed",
              "asymptote", "no-line")


def _load_descriptor(args, parser) -> EndDescriptor:
    if getattr(args, "helicoid", False):
        return helicoid()
    if args.desc is None:
        parser.error("provide --desc FILE or --helicoid")
    try:
        return read_descriptor(args.desc)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))


def _add_descriptor_args(sub):
    sub.add_argument("--desc", help="descriptor JSON file")
    sub.add_argument("--helicoid", action="store_true",
                     help="use the helicoid descriptor")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helend",
        description="Helicoid-type minimal ends: solve admissibility, "
                    "evaluate the immersion, verify the geometry.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="solve the residue condition")
    p.add_argument("--family", choices=["simple"],
                   help="named coefficient family")
    p.add_argument("--roots", type=int, default=1,
                   help="number of family roots to return")
    p.add_argument("--desc", help="descriptor JSON file (general solve)")
    p.add_argument("--free", type=int, help="index k of the free coefficient c_k")
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--write-desc", metavar="PREFIX",
                   help="write one descriptor JSON per root")
    p.add_argument("--json", help="write the root list to this JSON file")
    p.add_argument("--tol-residual", type=float, default=1e-10)

    p = subs.add_parser("verify", help="run geometric verification checks")
    _add_descriptor_args(p)
    p.add_argument("--checks", default="all",
                   help=f"comma-separated subset of {','.join(ALL_CHECKS)}")
    p.add_argument("--json", help="write the report to this JSON file")
    p.add_argument("--segments", type=int, default=2000,
                   help="polyline segments per level curve (embed check)")
    p.add_argument("--alphas", type=float, nargs="+",
                   default=[2.0, -2.0, 5.0, -5.0, 10.0, -10.0],
                   help="curve heights for the embed check")
    p.add_argument("--curvature-alphas", type=float, nargs="+",
                   default=[5.0, 10.0, 20.0])
    p.add_argument("--radii", type=float, nargs="+",
                   default=[5.0, 10.0, 15.0, 20.0],
                   help="circle radii for the asymptote check")
    p.add_argument("--period-radius", type=float, default=5.0)
    p.add_argument("--epsilon", type=float, default=0.2,
                   help="cone half-width for the embed check")
    p.add_argument("--tol-residue", type=float, default=1e-10)
    p.add_argument("--tol-period", type=float, default=1e-8)
    p.add_argument("--tol-ray", type=float, default=1e-8)
    p.add_argument("--tol-curvature", type=float, default=1e-6)
    p.add_argument("--distance-eps", type=float, default=0.1)

    p = subs.add_parser("residue", help="residue of the Gauss-map factor")
    _add_descriptor_args(p)
    p.add_argument("--method", choices=["series", "quadrature", "both"],
                   default="both")
    p.add_argument("--radius", type=float, help="quadrature contour radius")
    p.add_argument("--nodes", type=int, default=64)

    p = subs.add_parser("bessel-zeros", help="positive zeros of J1")
    p.add_argument("--n", type=int, default=3)

    p = subs.add_parser("mesh", help="export a surface mesh (OBJ)")
    _add_descriptor_args(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--t-range", type=float, nargs=2, default=[-3.5, 3.5])
    p.add_argument("--alpha-range", type=float, nargs=2, default=[-3.5, 3.5])
    p.add_argument("--nt", type=int, default=48)
    p.add_argument("--nalpha", type=int, default=48)
    p.add_argument("--exclude", type=float, default=None,
                   help="excluded-disk radius (default rmin)")

    p = subs.add_parser("levelcurve", help="export a level curve (CSV)")
    _add_descriptor_args(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t-range", type=float, nargs=2, default=[-10.0, 10.0])
    p.add_argument("--n", type=int, default=512)

    return parser


def _check_bracket(args, parser):
    if args.bracket is not None and args.bracket[0] >= args.bracket[1]:
        parser.error(f"bracket out of order: {args.bracket[0]:g} >= "
                     f"{args.bracket[1]:g}")


def cmd_solve(args, parser) -> int:
    _check_bracket(args, parser)
    if args.family == "simple":
        roots = residue.solve_simple_family(args.roots,
                                            residual_tol=args.tol_residual)
    else:
        if args.desc is None or args.free is None or args.bracket is None:
            parser.error("general solve needs --desc, --free and --bracket")
        d = read_descriptor(args.desc)
        roots = residue.solve_coefficient(d, args.free, tuple(args.bracket),
                                          residual_tol=args.tol_residual)
    print(f"{len(roots.values)} root(s)  (residual tolerance "
          f"{args.tol_residual:g})")
    for v, r, (lo, hi) in zip(roots.values, roots.residuals, roots.brackets):
        print(f"  {v!r}   |residue| = {r:.3g}   bracket [{lo:g}, {hi:g}]")
    for note in roots.notes:
        print(f"  note: {note}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"values": list(roots.values),
                       "residuals": list(roots.residuals),
                       "brackets": [list(b) for b in roots.brackets],
                       "notes": list(roots.notes)}, fh, indent=2)
    if args.write_desc:
        for i, v in enumerate(roots.values, start=1):
            write_descriptor(EndDescriptor(coefficients=(v,)),
                             f"{args.write_desc}{i}.json")
            print(f"  wrote {args.write_desc}{i}.json")
    return 0


def _run_checks(d: EndDescriptor, names, args):
    reports = []
    S = d.curvature_series_bound()
    for name in names:
        if name == "residue":
            series = residue.residue_series(d)
            quad = residue.residue_quadrature(d)
            reports.append(geometry.VerificationReport(checks=(
                geometry.CheckResult.equality("residue_series", series,
                                              args.tol_residue),
                geometry.CheckResult.equality("residue_cross_method",
                                              abs(series - quad),
                                              args.tol_residue),
            )))
        elif name == "periods":
            rep = period_check(d, args.period_radius)
            reports.append(geometry.VerificationReport(checks=(
                geometry.CheckResult.equality("period_horizontal_1",
                                              rep.horizontal_defect[0],
                                              args.tol_period),
                geometry.CheckResult.equality("period_horizontal_2",
                                              rep.horizontal_defect[1],
                                              args.tol_period),
                geometry.CheckResult.equality("period_vertical",
                                              rep.vertical_defect,
                                              args.tol_period),
            ), notes=f"radius {rep.radius:g}, {rep.nodes} nodes"))
        elif name == "rays":
            reports.append(geometry.ray_check(
                d, (max(2.0, d.rmin + 1.0), max(10.0, d.rmin + 5.0)),
                line_tol=args.tol_ray))
        elif name == "curvature":
            for alpha in args.curvature_alphas:
                curve = geometry.level_curve(d, alpha, (-30.0, 30.0), 2001)
                reports.append(geometry.total_curvature_check(
                    curve, S, tol=args.tol_curvature))
        elif name == "embed":
            reports.append(geometry.embeddedness_check(
                d, args.alphas, (-15.0, 15.0), n=args.segments,
                epsilon=args.epsilon))
        elif name == "asymptote":
            reports.append(geometry.helicoid_distance_check(
                d, args.radii, eps=args.distance_eps))
        elif name == "no-line":
            reports.append(geometry.line_asymptote_divergence(
                d, alpha=2.0, t_range=(5.0, 15.0)))
        else:
            raise ValueError(f"unknown check '{name}'")
    return combine_reports(*reports)


def cmd_verify(args, parser) -> int:
    d = _load_descriptor(args, parser)
    names = ALL_CHECKS if args.checks == "all" else tuple(
        s.strip() for s in args.checks.split(",") if s.strip())
    for name in names:
        if name not in ALL_CHECKS:
            parser.error(f"unknown check '{name}' "
                         f"(choose from {', '.join(ALL_CHECKS)})")
    report = _run_checks(d, names, args)
    print(report)
    tol_echo = {"tol_residue": args.tol_residue, "tol_period": args.tol_period,
                "tol_ray": args.tol_ray, "tol_curvature": args.tol_curvature,
                "distance_eps": args.distance_eps, "epsilon": args.epsilon}
    print("effective tolerances: "
          + ", ".join(f"{k}={v:g}" for k, v in tol_echo.items()))
    if args.json:
        payload = report.to_dict()
        payload["tolerances"] = tol_echo
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    return 0 if report.passed else 1


def cmd_residue(args, parser) -> int:
    d = _load_descriptor(args, parser)
    if args.method in ("series", "both"):
        s = residue.residue_series(d)
        print(f"series:     {s!r}")
    if args.method in ("quadrature", "both"):
        q = residue.residue_quadrature(d, radius=args.radius, nodes=args.nodes)
        print(f"quadrature: {q.real!r} + {q.imag!r}j")
    if args.method == "both":
        print(f"difference: {abs(s - q):.3g}")
    return 0


def cmd_bessel_zeros(args, parser) -> int:
    if args.n < 1:
        parser.error("--n must be at least 1")
    for x in residue.bessel_j1_zeros(args.n):
        print(repr(x))
    return 0


def cmd_mesh(args, parser) -> int:
    d = _load_descriptor(args, parser)
    mesh = mesh_end(d, tuple(args.t_range), tuple(args.alpha_range),
                    args.nt, args.nalpha, exclude_disk=args.exclude)
    write_obj(mesh, args.output)
    print(f"wrote {args.output}: {len(mesh.vertices)} vertices, "
          f"{len(mesh.faces)} faces")
    return 0


def cmd_levelcurve(args, parser) -> int:
    d = _load_descriptor(args, parser)
    curve = geometry.level_curve(d, args.alpha, tuple(args.t_range), args.n)
    write_curve_csv(curve, args.output)
    print(f"wrote {args.output}: {len(curve)} samples at height {args.alpha:g}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"solve": cmd_solve, "verify": cmd_verify,
                "residue": cmd_residue, "bessel-zeros": cmd_bessel_zeros,
                "mesh": cmd_mesh, "levelcurve": cmd_levelcurve}
    try:
        return handlers[args.command](args, parser)
    except ToleranceError as exc:
        print(f"numerical tolerance failure: {exc}", file=sys.stderr)
        return 3
    except HelendError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
