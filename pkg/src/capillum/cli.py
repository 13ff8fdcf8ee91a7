"""Command-line interface: ``capillum {bound,measure,illuminate,verify,generate}``.

Machine-readable JSON goes to stdout (or ``--output``); a short human summary
goes to stderr. Exit codes: 0 success/verified, 1 domain or verification
failure, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import capbody, cover, ilp
from . import illumination as il
from .errors import CapillumError, DomainError, SearchExhausted, TieUnresolved, VerificationFailed

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


def _emit(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_bound(args) -> int:
    t0 = time.perf_counter()
    if args.t < 1 or args.D < 1:
        _say("error: --t and --D must be positive")
        return EXIT_FAIL
    if args.mode == "float":
        rep = ilp.float_report(args.t, args.grid)
        _emit(rep.to_json(), args.output)
        _say(f"M_{args.t} ~= {rep.M_t:.6f} (floating point, NOT certified; solve {rep.extra['solve_seconds']:.3f}s)")
        return EXIT_OK
    try:
        model = ilp.build_model(args.t, args.D, args.packing, threads=args.threads)
        sol = ilp.solve_exact(model)
        rep = ilp.certify(sol, model)
    except (TieUnresolved, VerificationFailed, CapillumError) as err:
        _say(f"error: {err}")
        return EXIT_FAIL
    _emit(rep.to_json(), args.output)
    _say(
        f"M_{args.t} = {rep.M_t} (= {float(rep.M_t):.6f}), floor = {rep.floor_M_t}, "
        f"directions <= {rep.directions_bound}; {time.perf_counter() - t0:.2f}s"
    )
    return EXIT_OK if rep.verdict_lt_3 else EXIT_FAIL


def _measure_row(theta: float, samples: int, rng) -> dict:
    case = cover.union_case(theta)
    row = {"theta": theta, "case": case, "union_measure": cover.union_measure(theta)}
    if case == 2:
        row["lune_area"] = cover.lune_area(theta)
    if samples > 0:
        est, se = cover.union_measure_mc(theta, samples, rng)
        row["monte_carlo"] = {"estimate": est, "stderr": se, "samples": samples}
    return row


def cmd_measure(args) -> int:
    rng = np.random.default_rng(args.seed)
    try:
        if args.grid:
            rows = [_measure_row(math.pi / 2 * k / args.grid, args.samples, rng) for k in range(1, args.grid + 1)]
            _emit({"rows": rows}, args.output)
            for r in rows:
                _say(f"{r['theta']:.6f}  case {r['case']}  {r['union_measure']:.9f}")
            return EXIT_OK
        if args.theta is None:
            _say("error: give --theta or --grid")
            return EXIT_FAIL
        row = _measure_row(args.theta, args.samples, rng)
    except DomainError as err:
        _say(f"error: {err}")
        return EXIT_FAIL
    _emit(row, args.output)
    _say(f"sigma(C_{args.theta}) = {row['union_measure']:.12f} (case {row['case']})")
    return EXIT_OK


def _load_body(path: str):
    """Returns (body, exit_code)."""
    try:
        return capbody.load_body(path), EXIT_OK
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as err:
        _say(f"error: cannot read cap-body file {path}: {err}")
        return None, EXIT_IO
    except (CapillumError, ValueError) as err:
        code = EXIT_FAIL if isinstance(err, CapillumError) else EXIT_IO
        _say(f"error: invalid cap body in {path}: {err}")
        return None, code


def cmd_illuminate(args) -> int:
    body, code = _load_body(args.input)
    if body is None:
        return code
    try:
        dirs = il.illuminate(body, args.budget, args.seed, args.threads)
    except SearchExhausted as err:
        _say(f"error: {err}")
        return EXIT_FAIL
    report = il.verify_illumination(body, dirs)
    if args.output:
        il.save_directions(dirs, args.output)
        _emit(report.to_json(), None)
    else:
        _emit({**dirs.to_json(), "report": report.to_json()}, None)
    _say(f"{len(body)} caps, {len(dirs)} directions, illuminated: {report.illuminated}")
    return EXIT_OK if report.illuminated else EXIT_FAIL


def cmd_verify(args) -> int:
    body, code = _load_body(args.input)
    if body is None:
        return code
    try:
        dirs = il.load_directions(args.directions)
    except (OSError, ValueError, TypeError) as err:
        _say(f"error: cannot read direction file {args.directions}: {err}")
        return EXIT_IO
    report = il.verify_illumination(body, dirs)
    _emit(report.to_json(), args.output)
    _say(f"hull_ok={report.hull_ok} unlit={report.unlit} -> {report.to_json()['status']}")
    return EXIT_OK if report.illuminated else EXIT_FAIL


def cmd_generate(args) -> int:
    rng = np.random.default_rng(args.seed)
    try:
        body = capbody.generate_random_body(rng, args.count, (args.radius_min, args.radius_max))
    except (CapillumError, ValueError) as err:
        _say(f"error: {err}")
        return EXIT_FAIL
    _emit(body.to_json(), args.output)
    _say(f"generated {len(body)} caps")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="capillum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write JSON here instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("bound", parents=[common], help="compute and certify the bound M_t")
    b.add_argument("--t", type=int, default=ilp.DEFAULT_T)
    b.add_argument("--D", type=int, default=ilp.DEFAULT_D)
    b.add_argument("--mode", choices=["exact", "float"], default="exact")
    b.add_argument("--packing", choices=list(ilp.PACKING_FORMS), default="doubled",
                   help="how the packing constraint is rounded (default reproduces 2999/1000)")
    b.add_argument("--grid", type=int, default=10000, help="weight grid for --mode float")
    b.set_defaults(func=cmd_bound)

    m = sub.add_parser("measure", parents=[common], help="evaluate sigma(C_theta)")
    m.add_argument("--theta", type=float)
    m.add_argument("--grid", type=int, default=0, help="tabulate N equally spaced theta in (0, pi/2]")
    m.add_argument("--samples", type=int, default=100_000, help="Monte Carlo samples (0 to skip)")
    m.set_defaults(func=cmd_measure)

    i = sub.add_parser("illuminate", parents=[common], help="find <= 6 illuminating directions")
    i.add_argument("--input", required=True)
    i.add_argument("--budget", type=int, default=il.DEFAULT_BUDGET)
    i.set_defaults(func=cmd_illuminate)

    v = sub.add_parser("verify", parents=[common], help="check a direction set against a cap body")
    v.add_argument("--input", required=True)
    v.add_argument("--directions", required=True)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", parents=[common], help="write a random valid cap body")
    g.add_argument("--count", type=int, default=10)
    g.add_argument("--radius-min", type=float, default=0.1)
    g.add_argument("--radius-max", type=float, default=1.0)
    g.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
