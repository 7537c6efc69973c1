"""Command-line front end.

Subcommands: eval (sample a geodesic), classify (open/closed structure),
solve (all BVP branches), distance (Carnot-Caratheodory distance), table
(dump Phi/Psi/B values for re-plotting).  Output is machine-readable and
byte-deterministic: JSON numbers carry 17 significant digits, CSV uses a '.'
decimal separator, ',' field separator, '\n' line endings and always a header
row.

Exit codes: 0 success, 2 usage/domain error, 3 I/O failure, 4 no solution
within q_max.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bvp, distance as dist, geodesics
from .errors import (
    DegenerateOmega,
    DomainError,
    HopfGeoError,
    InvalidRatio,
    NoSolutionWithinQmax,
)
from .jsonfmt import format_float, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NO_SOLUTION = 4


def _write(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out_path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _csv(header: list[str], rows: list[tuple]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return format_float(v)
    return str(v)


def _parse_complex(text: str) -> complex:
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from exc


def _parse_ratio(text: str) -> tuple[int, int]:
    try:
        p_s, q_s = text.split("/")
        return int(p_s), int(q_s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'p/q', got {text!r}") from exc


def _parse_range(text: str) -> tuple[float, float]:
    try:
        a_s, b_s = text.split(":")
        a, b = float(a_s), float(b_s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'a:b', got {text!r}") from exc
    if not a < b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfgeo",
        description="Sub-Riemannian geodesics and distances on S^3 (Hopf fibration).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="sample a geodesic (u, rho, alpha) over s in [0,1]")
    p_eval.add_argument("--u", type=float, required=True)
    p_eval.add_argument("--rho", type=float, required=True)
    p_eval.add_argument("--alpha", type=float, required=True)
    p_eval.add_argument("--samples", type=int, default=101)
    p_eval.add_argument("--out", default=None)
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")

    p_cls = sub.add_parser("classify", help="open/closed classification of a geodesic")
    group = p_cls.add_mutually_exclusive_group(required=True)
    group.add_argument("--vf", type=float, help="vertical speed |v_F| (irrational branch)")
    group.add_argument("--ratio", type=_parse_ratio, help="exact p/q (closed branch)")

    for name in ("solve", "distance"):
        p = sub.add_parser(
            name,
            help="solve the BVP / compute the distance to an endpoint (z1, z2)",
        )
        p.add_argument("--z1", type=_parse_complex, required=True, metavar="RE,IM")
        p.add_argument("--z2", type=_parse_complex, required=True, metavar="RE,IM")
        p.add_argument("--qmax", type=int, default=8)
        p.add_argument("--case-eps", type=float, default=1e-10)
        p.add_argument("--out", default=None)

    p_tab = sub.add_parser("table", help="CSV table of Phi, Psi or B for re-plotting")
    p_tab.add_argument("--function", choices=("phi", "psi", "b"), required=True)
    p_tab.add_argument("--z1abs", type=float, required=True)
    p_tab.add_argument("--z2abs", type=float, default=None)
    p_tab.add_argument("--range", type=_parse_range, required=True, metavar="A:B")
    p_tab.add_argument("--samples", type=int, default=1001)
    p_tab.add_argument("--out", default=None)

    return parser


def cmd_eval(args) -> int:
    if not (abs(args.u) < 1.0 and args.rho > 0.0):
        print("error: need |u| < 1 and rho > 0", file=sys.stderr)
        return EXIT_USAGE
    if args.samples < 2:
        print("error: need --samples >= 2", file=sys.stderr)
        return EXIT_USAGE
    params = geodesics.S3GeodesicParams(args.u, args.rho, args.alpha)
    rows = geodesics.curve_rows(params, args.samples)
    header = ["s", "re_z1", "im_z1", "re_z2", "im_z2"]
    if args.format == "csv":
        text = _csv(header, rows)
    else:
        text = render({"columns": header, "rows": [list(r) for r in rows]}) + "\n"
    return _write(text, args.out)


def cmd_classify(args) -> int:
    try:
        if args.ratio is not None:
            report = geodesics.classify(args.ratio)
        else:
            vf = args.vf
            c = vf / math.sqrt(1.0 + vf * vf)
            report = geodesics.classify(c)
    except InvalidRatio as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(report.to_dict()) + "\n")
    return EXIT_OK


def _endpoint_from(args) -> bvp.Endpoint | None:
    z1, z2 = args.z1, args.z2
    nrm = math.sqrt(abs(z1) ** 2 + abs(z2) ** 2)
    if abs(nrm - 1.0) > 1e-6:
        print(f"error: |z1|^2 + |z2|^2 = {nrm**2:.9f} is not 1", file=sys.stderr)
        return None
    return bvp.Endpoint(z1 / nrm, z2 / nrm, case_eps=args.case_eps)


def cmd_solve(args) -> int:
    endpoint = _endpoint_from(args)
    if endpoint is None:
        return EXIT_USAGE
    config = bvp.SolverConfig(q_max=args.qmax)
    try:
        sols = bvp.solve(endpoint, config)
    except NoSolutionWithinQmax as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (DegenerateOmega, HopfGeoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _write(bvp.solutions_to_json(sols) + "\n", args.out)


def cmd_distance(args) -> int:
    endpoint = _endpoint_from(args)
    if endpoint is None:
        return EXIT_USAGE
    config = bvp.SolverConfig(q_max=args.qmax)
    try:
        result = dist.cc_distance(endpoint, config)
    except NoSolutionWithinQmax as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (DegenerateOmega, HopfGeoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _write(render(result.to_dict()) + "\n", args.out)


def cmd_table(args) -> int:
    lo, hi = args.range
    if args.samples < 2:
        print("error: need --samples >= 2", file=sys.stderr)
        return EXIT_USAGE
    fn = args.function
    if fn == "b":
        if args.z2abs is None:
            print("error: --z2abs is required for the B table", file=sys.stderr)
            return EXIT_USAGE
        header = ["u", "b"]

        def value(x: float) -> float:
            return bvp.b_function(x, args.z1abs, args.z2abs)

    else:
        header = ["rho", fn]
        func = bvp.phi_function if fn == "phi" else bvp.psi_function

        def value(x: float) -> float:
            return func(x, args.z1abs)

    rows = []
    defined = 0
    for k in range(args.samples):
        x = lo + (hi - lo) * k / (args.samples - 1)
        try:
            y = value(x)
            defined += 1
        except DomainError:
            y = math.nan
        rows.append((x, y))
    if defined == 0:
        print("error: the requested range misses the function's domain", file=sys.stderr)
        return EXIT_USAGE
    return _write(_csv(header, rows), args.out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "eval": cmd_eval,
        "classify": cmd_classify,
        "solve": cmd_solve,
        "distance": cmd_distance,
        "table": cmd_table,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
