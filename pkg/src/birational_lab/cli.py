"""Command-line entry point: ``birational-lab <subcommand> ...``.

A JSON file given with ``--config`` supplies defaults, either as top-level
keys or under a key named after the subcommand; explicit flags win.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import a3, raster, verify
from .core import ExtPoint, ext_real
from .normal_form import normal_form
from .regions import classify_orbit, region_of

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _coord(s: str) -> float:
    try:
        return ext_real(s)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="birational-lab",
                                description="Numerical lab for f_a(x,y) = (y(x+a)/(x-1), x+a-1).")
    p.add_argument("--config", help="JSON file with default option values")
    p.add_argument("-v", "--verbose", action="store_true", help="log at INFO level")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("render", help="basin raster as PPM plus JSON stats")
    r.add_argument("--a", type=float, default=2.0)
    r.add_argument("--xmin", type=float)
    r.add_argument("--xmax", type=float)
    r.add_argument("--ymin", type=float)
    r.add_argument("--ymax", type=float)
    r.add_argument("--torus", action="store_true", help="whole torus through atan charts")
    r.add_argument("--width", type=int, default=512)
    r.add_argument("--height", type=int, default=512)
    r.add_argument("--iters", type=int, default=1000)
    r.add_argument("--threads", type=int, help="worker threads (default: THREADS env or cpu count)")
    r.add_argument("--arcs", action="store_true",
                   help="overlay stable (red) and unstable (blue) arcs; a = 3 only")
    r.add_argument("--out", default="basin.ppm")
    r.add_argument("--stats-out")

    c = sub.add_parser("classify", help="orbit class of one point as JSON")
    c.add_argument("--a", type=float, default=2.0)
    c.add_argument("--x", type=_coord)
    c.add_argument("--y", type=_coord)
    c.add_argument("--iters", type=int, default=1000)
    c.add_argument("--backward", action="store_true", help="classify the backward orbit")

    t = sub.add_parser("trace-arcs", help="stable and unstable arcs of p_fix at a = 3")
    t.add_argument("--iters", type=int, default=60)
    t.add_argument("--resolution", type=int, default=a3.RESOLUTION)
    t.add_argument("--u-eps", type=float, default=a3.U_EPS)
    t.add_argument("--out-prefix", default="arc")

    n = sub.add_parser("normal-form", help="rotation data at the fixed point as JSON")
    n.add_argument("--a", type=float, default=3.0)

    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="also write the JSON report here")

    g = sub.add_parser("regions", help="region tags of one point")
    g.add_argument("--a", type=float, default=2.0)
    g.add_argument("--x", type=_coord)
    g.add_argument("--y", type=_coord)
    return p


def _load_config(path, command, parser):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}") from e
    if not isinstance(cfg, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    flat = {k: v for k, v in cfg.items() if not isinstance(v, dict)}
    flat.update(cfg.get(command, {}))
    sub = parser._subparsers._group_actions[0].choices[command]
    known = {a.dest for a in sub._actions}
    unknown = sorted(k.replace("-", "_") for k in flat if k.replace("-", "_") not in known)
    if unknown:
        raise UsageError(f"unknown config keys for {command}: {', '.join(unknown)}")
    types = {a.dest: a.type for a in sub._actions}
    out = {}
    for k, v in flat.items():
        k = k.replace("-", "_")
        conv = types.get(k)
        if conv is not None and v is not None and not isinstance(v, bool):
            try:
                v = conv(str(v))
            except (ValueError, argparse.ArgumentTypeError) as e:
                raise UsageError(f"bad config value {k}={v!r}: {e}") from e
        out[k] = v
    return sub, out


def _dump(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _cmd_render(args):
    if args.torus:
        if any(v is not None for v in (args.xmin, args.xmax, args.ymin, args.ymax)):
            raise UsageError("--torus excludes --xmin/--xmax/--ymin/--ymax")
        view = raster.Viewport.torus(args.width, args.height)
    else:
        a = args.a
        box = [args.xmin, args.xmax, args.ymin, args.ymax]
        default = [-a - 1, 2.0, -2.0, a + 1]
        box = [d if b is None else b for b, d in zip(box, default)]
        view = raster.Viewport.plane(*box, width=args.width, height=args.height)
    r = raster.render_basin(args.a, view, args.iters, threads=args.threads)
    stable, unstable = (), ()
    if args.arcs:
        if args.a != 3:
            raise UsageError("--arcs needs --a 3")
        stable, unstable = _global_arcs()
    raster.write_image(r, args.out, stable, unstable)
    if args.stats_out:
        raster.write_stats(r, args.stats_out)
    _dump(raster.stats_record(r))
    return EXIT_OK


def _global_arcs(n_iters=60, resolution=a3.RESOLUTION):
    stable, unstable = [], []
    for w in range(3):
        for direction, bucket in (("stable", stable), ("unstable", unstable)):
            arc = a3.trace_arc(w, direction, n_iters, resolution)
            bucket.append(a3.extend_arc(arc))
    return stable, unstable


def _point(args):
    if args.x is None or args.y is None:
        raise UsageError("--x and --y are required")
    return ExtPoint(args.x, args.y)


def _cmd_classify(args):
    p = _point(args)
    oc = classify_orbit(args.a, p, args.iters, inverse=args.backward)
    _dump(oc.to_record(args.a, p))
    return EXIT_OK


def _cmd_trace(args):
    summary = []
    for direction in ("unstable", "stable"):
        for w in range(3):
            arc = a3.trace_arc(w, direction, args.iters, args.resolution, args.u_eps)
            stem = f"{args.out_prefix}_{direction}_w{w}"
            a3.write_arc_csv(arc, stem + ".csv")
            a3.write_arc_json(arc, stem + ".json")
            summary.append(arc.metadata())
    _dump(summary)
    return EXIT_OK


def _cmd_normal_form(args):
    _dump(normal_form(args.a).to_record())
    return EXIT_OK


def _cmd_verify(args):
    rep = verify.report(verify.run_suite(args.suite, seed=args.seed))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rep, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _dump(rep)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def _cmd_regions(args):
    p = _point(args)
    tags = sorted(t.value for t in region_of(args.a, p))
    _dump({"a": args.a, "point": [_jf(p.x), _jf(p.y)], "tags": tags})
    return EXIT_OK


def _jf(v):
    return "inf" if math.isinf(v) else v


COMMANDS = {"render": _cmd_render, "classify": _cmd_classify, "trace-arcs": _cmd_trace,
            "normal-form": _cmd_normal_form, "verify": _cmd_verify, "regions": _cmd_regions}


def cli_main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    command = next((tok for tok in argv if tok in COMMANDS), None)
    try:
        if known.config and command:
            sub, defaults = _load_config(known.config, command, parser)
            sub.set_defaults(**defaults)
    except UsageError as e:
        print(f"birational-lab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as e:
        print(f"birational-lab {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"birational-lab {args.command}: error: {e}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
