"""Command-line interface.

Subcommands: distance, john, replay, search, render.  Exit codes:
0 verified result, 1 I/O or parse failure, 2 non-convergence or failed
assertions, 3 no certificate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import john as john_mod
from . import random_bodies, scenarios, svg
from .distance import (DistanceOptions, DistanceReport, banach_mazur_distance,
                       extremal_pair_search, grunbaum_distance)
from .errors import BmforgeError, NoCertificate, NonConverged
from .geometry import apply_affine, load_polygon


def _seed_from(args) -> int:
    env = os.environ.get("BMFORGE_SEED")
    if env is not None:
        return int(env)
    return args.seed


def _opts_from(args) -> DistanceOptions:
    opts = DistanceOptions(seed=_seed_from(args))
    if args.restarts is not None:
        opts.restarts = args.restarts
    if args.max_iters is not None:
        opts.max_evals = args.max_iters
    if args.cert_tol is not None:
        opts.cert_tol = args.cert_tol
    if getattr(args, "no_maxvol", False):
        opts.use_maxvol = False
    return opts


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def cmd_distance(args) -> int:
    files = args.files
    if len(files) < 2 or len(files) % 2 != 0:
        print("distance expects an even number of polygon files",
              file=sys.stderr)
        return 1
    pairs = [(files[i], files[i + 1]) for i in range(0, len(files), 2)]
    opts = _opts_from(args)
    mode = "grunbaum" if args.grunbaum else "banach_mazur"
    solve = grunbaum_distance if args.grunbaum else banach_mazur_distance

    rows = []
    reports = []
    worst_exit = 0
    for kf, lf in pairs:
        try:
            k = load_polygon(kf)
            l = load_polygon(lf)
        except (OSError, ValueError, KeyError, BmforgeError) as exc:
            print(f"error reading {kf!r}/{lf!r}: {exc}", file=sys.stderr)
            return 1
        t0 = time.perf_counter()
        try:
            rep = solve(k, l, opts)
        except NonConverged as exc:
            print(f"non-converged on {kf!r}/{lf!r}: {exc}", file=sys.stderr)
            worst_exit = max(worst_exit, 2)
            continue
        secs = time.perf_counter() - t0
        rows.append([kf, lf, mode, f"{rep.r:.9f}", rep.sign, rep.verified,
                     rep.restarts_used, f"{secs:.3f}"])
        reports.append(rep)
        if not rep.verified:
            worst_exit = max(worst_exit, 2)
        if args.render:
            svg.render_distance_report(k, l, rep, args.render)

    if args.format == "csv":
        print("k_file,l_file,mode,r,sign,verified,restarts_used,seconds")
        for row in rows:
            print(",".join(str(x) for x in row))
    else:
        _emit([rep.to_json() for rep in reports]
              if len(reports) != 1 else reports[0].to_json())
    return worst_exit


def cmd_john(args) -> int:
    try:
        k = load_polygon(args.k)
        l = load_polygon(args.l)
    except (OSError, ValueError, KeyError, BmforgeError) as exc:
        print(f"error reading input: {exc}", file=sys.stderr)
        return 1
    try:
        if not args.no_maxvol:
            pos = john_mod.max_volume_position(k, l)
            k = apply_affine(pos, k)
        z, cert = john_mod.recenter_search(k, l)
    except NoCertificate as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return 3
    except NonConverged as exc:
        print(f"non-converged: {exc}", file=sys.stderr)
        return 2
    report = john_mod.check_john_certificate(cert)
    out = cert.to_json()
    out["residuals"] = {
        "identity": cert.residual_identity,
        "sum_u": cert.residual_u,
        "sum_v": cert.residual_v,
        "recenter": list(np.asarray(z, dtype=float)),
        "passed": report.passed,
    }
    _emit(out)
    return 0 if report.passed else 3


def cmd_replay(args) -> int:
    try:
        sc = scenarios.run_scenario(args.scenario)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error reading scenario: {exc}", file=sys.stderr)
        return 1
    except BmforgeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(sc.to_json())
    if args.render:
        if sc.bodies:
            svg.render_scenario(sc, args.render)
        else:
            print("scenario has no bodies to render", file=sys.stderr)
    return 0 if sc.passed else 2


_GENERATORS = {
    "symmetric": lambda rng: (random_bodies.random_symmetric_polygon(rng, 4),
                              random_bodies.random_symmetric_polygon(rng, 4)),
    "general": lambda rng: (random_bodies.random_convex_polygon(
                                rng, int(rng.integers(4, 7))),
                            random_bodies.random_symmetric_polygon(rng, 3)),
    "parallelogram-triangle": lambda rng: (
        random_bodies.random_parallelogram(rng),
        random_bodies.random_triangle(rng)),
    "quad-pentagon": lambda rng: (random_bodies.random_quadrilateral(rng),
                                  random_bodies.random_pentagon(rng)),
}


def cmd_search(args) -> int:
    gen = _GENERATORS[args.classes]
    opts = DistanceOptions(restarts=args.restarts or 24,
                           max_evals=args.max_iters or 1200,
                           seed=_seed_from(args))
    found = extremal_pair_search(gen, args.budget, opts)
    _emit([{"k": k.to_json(), "l": l.to_json(), "estimate": est}
           for k, l, est in found])
    return 0


def cmd_render(args) -> int:
    try:
        with open(args.report) as fh:
            rep = DistanceReport.from_json(json.load(fh))
        k = load_polygon(args.k)
        l = load_polygon(args.l)
    except (OSError, ValueError, KeyError, BmforgeError) as exc:
        print(f"error reading input: {exc}", file=sys.stderr)
        return 1
    svg.render_distance_report(k, l, rep, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bmforge")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--cert-tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restarts", type=int, default=None)
        p.add_argument("--max-iters", type=int, default=None)

    p = sub.add_parser("distance", help="distance between two polygons")
    p.add_argument("files", nargs="+")
    p.add_argument("--grunbaum", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--render", metavar="SVG", default=None)
    common(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("john", help="John certificate for K inside L")
    p.add_argument("k")
    p.add_argument("l")
    p.add_argument("--no-maxvol", action="store_true")
    common(p)
    p.set_defaults(func=cmd_john)

    p = sub.add_parser("replay", help="run a scenario file or id")
    p.add_argument("scenario")
    p.add_argument("--render", metavar="SVG", default=None)
    common(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("search", help="extremal-pair random probe")
    p.add_argument("--classes", choices=sorted(_GENERATORS), default="general")
    p.add_argument("--budget", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="render a saved distance report")
    p.add_argument("report")
    p.add_argument("k")
    p.add_argument("l")
    p.add_argument("-o", "--out", default="report.svg")
    common(p)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BmforgeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
