"""Command-line driver: ``ghilb {fan,gsets,count,euclid,verify}``.

Exit codes: 0 success, 1 usage error, 2 invalid action, 3 validation failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import InvalidActionError
from .euclid import count_trace, predicted_count, primitive_sequence
from .export import RenderConfig, export_json, export_svg, export_text
from .fan import build_fan, validate_fan
from .gset import enumerate_all, valleys
from .lattice import GroupAction, format_monomial

EXIT_OK, EXIT_USAGE, EXIT_ACTION, EXIT_VALIDATION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _span_text(action, g) -> str:
    return "span(" + ", ".join(format_monomial(action.orient(m)) for m in g.span()) + ")"


def _write(data: bytes, out) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def cmd_fan(args) -> int:
    act = GroupAction.from_input(args.r, args.a)
    fan = build_fan(act)
    oracle = enumerate_all(act, bound=max(60, act.r)) if args.oracle else None
    report = validate_fan(fan, oracle=oracle, samples=args.samples, seed=args.seed)
    if args.format == "json":
        data = export_json(fan, report)
    elif args.format == "svg":
        data = export_svg(fan, RenderConfig(chart=args.chart, width=args.width, height=args.height))
    else:
        data = export_text(fan, report)
    _write(data, args.out)
    if not report.ok:
        for f in report.failures:
            print(f"validation failure: {f}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_gsets(args) -> int:
    if args.oracle:
        act = GroupAction.from_input(args.r, args.a, allow_unit_weight=True)
        gsets = [(g, "") for g in enumerate_all(act, bound=max(60, act.r))]
    else:
        act = GroupAction.from_input(args.r, args.a)
        gsets = [(c.gset, c.region) for c in build_fan(act).cones]
    for g, region in gsets:
        vs = ",".join(
            f"{({'y': 'z', 'z': 'y'}[v.kind] if act.swapped else v.kind)}:"
            f"{format_monomial(act.orient(v.position))}"
            for v in valleys(g)
        )
        i, j, k = g.i, g.j, g.k
        if act.swapped:
            j, k = k, j
        line = f"{_span_text(act, g)}  ijk=({i},{j},{k})  valleys=[{vs}]"
        print(f"{region:<12} {line}" if region else line)
    return EXIT_OK


def cmd_count(args) -> int:
    act = GroupAction.from_input(args.r, args.a)
    predicted = predicted_count(act)
    if not args.check:
        print(predicted)
        return EXIT_OK
    enumerated = len(enumerate_all(act, bound=max(60, act.r)))
    ok = enumerated == predicted
    print(f"predicted {predicted}, enumerated {enumerated}, {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_euclid(args) -> int:
    act = GroupAction.from_input(args.r, args.a)
    trace = count_trace(act)
    seq = primitive_sequence(act)
    print(f"b = {act.input_b}")
    print(f"p = {list(trace.p)}")
    print(f"q = {list(trace.q)}")
    p1, p2, last = trace.p[0], trace.p[1], trace.p[-1]
    print(f"sum q_l p_(l+1)   = {trace.linear_sum()} = p1 + p2 - p_(n+1) = {p1 + p2 - last}")
    print(f"sum q_l p_(l+1)^2 = {trace.square_sum()} = p1 * p2 = {p1 * p2}")
    for n, e in enumerate(seq.entries, start=1):
        tag = "" if n <= seq.m else "  (not primitive)"
        print(f"Gamma_{n} = {_span_text(act, e.gset)}{tag}")
    print(f"m = {seq.m}")
    return EXIT_OK if trace.identities_hold() else EXIT_VALIDATION


def _verify_one(job):
    r, a, samples = job
    act = GroupAction.from_input(r, a)
    report = validate_fan(build_fan(act), oracle=enumerate_all(act, bound=max(60, r)), samples=samples)
    return r, a, len(report.checks) and report.ok, report.failures


def valid_pairs(r_max: int):
    """Canonical (r, a) with 2 <= a < r - a, gcd(r, a) = 1 and r <= r_max."""
    return [(r, a) for r in range(5, r_max + 1) for a in range(2, r)
            if 2 * a < r and math.gcd(r, a) == 1]


def cmd_verify(args) -> int:
    jobs = [(r, a, args.samples) for r, a in valid_pairs(args.r_max)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    failed = 0
    for r, a, ok, failures in results:
        print(f"{r:>4} {a:>4}  {'ok' if ok else 'FAIL'}")
        for f in failures:
            print(f"      {f}")
        failed += not ok
    print(f"{len(results) - failed}/{len(results)} actions verified")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ghilb", description="Fans of G-Hilbert schemes for 1/r(1,a,r-a).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def action_args(sp):
        sp.add_argument("r", type=int)
        sp.add_argument("a", type=int)

    f = sub.add_parser("fan", help="build, validate and export the fan")
    action_args(f)
    f.add_argument("--format", choices=("text", "json", "svg"), default="text")
    f.add_argument("--chart", choices=("barycentric", "affine"), default="barycentric")
    f.add_argument("--out", metavar="PATH")
    f.add_argument("--samples", type=int, default=1000)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--width", type=int, default=800)
    f.add_argument("--height", type=int, default=720)
    f.add_argument("--oracle", action="store_true", help="also compare with brute-force enumeration")
    f.set_defaults(func=cmd_fan)

    g = sub.add_parser("gsets", help="list G-sets")
    action_args(g)
    g.add_argument("--oracle", action="store_true", help="use brute-force enumeration")
    g.set_defaults(func=cmd_gsets)

    c = sub.add_parser("count", help="number of G-sets")
    action_args(c)
    c.add_argument("--check", action="store_true", help="compare with brute-force enumeration")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("euclid", help="Euclid trace and primitive sequence")
    action_args(e)
    e.set_defaults(func=cmd_euclid)

    v = sub.add_parser("verify", help="sweep all actions up to r-max")
    v.add_argument("r_max", metavar="r-max", type=int)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except InvalidActionError as exc:
        print(f"ghilb: invalid action: {exc}", file=sys.stderr)
        return EXIT_ACTION
    except ValueError as exc:
        print(f"ghilb: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
