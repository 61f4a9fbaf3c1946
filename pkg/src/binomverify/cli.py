"""Command-line front end.

Exit status: 0 when every check passed, 1 when at least one point reported a
mismatch, 2 for usage or parameter errors (including enumeration ceilings
exceeded without ``--allow-skip``).

Ranges are inclusive ``a..b`` (or a single value). Bounds of ``--k`` may
refer to ``m``, e.g. ``--k 0..m`` or ``--k 0..m-1``.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import acceptance, dominoes, matrices, ominoes, verifier
from .verifier import Ceilings, RangeSpec

DEFAULT_RANGES = {
    "eq3": {"m": "0..5", "k": "0..m", "b": "0..3"},
    "eq4": {"m": "0..5", "k": "0..m"},
    "eq5": {"m": "0..3", "k": "0..m", "b": "0..2", "q": "1..3"},
    "eq6": {"m": "1..5", "k": "0..m-1"},
    "eq6_special": {"m": "0..6"},
    "master1": {"m": "0..6", "y": "0..3"},
    "master2": {"m": "0..6", "y": "0..3", "z": "0..3"},
}


class UsageError(Exception):
    pass


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")
    p.add_argument("--ceiling", type=int, default=Ceilings.ground,
                   help="largest ground set enumerated (default %(default)s)")
    p.add_argument("--matrix-ceiling", type=int, default=Ceilings.matrix_m,
                   help="largest matrix size m enumerated (default %(default)s)")
    p.add_argument("--allow-skip", action="store_true",
                   help="report points beyond the ceilings as skipped instead of failing")
    p.add_argument("--timing", action="store_true",
                   help="add per-point elapsed time (JSON 'volatile' section)")


def _add_range(p: argparse.ArgumentParser, *names: str) -> None:
    for n in names:
        p.add_argument(f"--{n}", metavar="RANGE", help=f"range for {n}, e.g. 0..4")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binomverify",
        description="Exact verification of a binomial identity and its "
                    "generalization by enumeration and involutions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="sweep one or more families over parameter ranges")
    p.add_argument("families", nargs="+", metavar="FAMILY",
                   help=f"one of {', '.join(verifier.FAMILIES)}")
    _add_range(p, "m", "k", "b", "q", "y", "z")
    p.add_argument("--mode", choices=verifier.MODES, default="all")
    p.add_argument("--orientation", choices=dominoes.ORIENTATIONS, default="bw",
                   help="colored active pair for the domino engine")
    p.add_argument("--bij1-column", choices=("last", "first"), default="last",
                   help=argparse.SUPPRESS)
    _add_output(p)

    p = sub.add_parser("master", help="check the master identities as polynomials in x")
    p.add_argument("--which", choices=("1", "2", "both"), default="both")
    _add_range(p, "m", "y", "z")
    _add_output(p)

    p = sub.add_parser("show-fixed", help="list fixed points or survivors")
    p.add_argument("engine", choices=("dominoes", "ominoes", "matrices"))
    p.add_argument("--variant", choices=dominoes.VARIANTS, default=dominoes.SUN3)
    p.add_argument("--orientation", choices=dominoes.ORIENTATIONS, default="bw")
    for n in ("m", "k", "b", "q"):
        p.add_argument(f"--{n}", type=int, default=None)

    p = sub.add_parser("trace", help="apply the involution to one configuration")
    p.add_argument("engine", choices=("dominoes", "ominoes", "matrices"))
    p.add_argument("--variant", choices=dominoes.VARIANTS, default=dominoes.SUN3)
    p.add_argument("--orientation", choices=dominoes.ORIENTATIONS, default="bw")
    for n in ("m", "k", "b", "q"):
        p.add_argument(f"--{n}", type=int, default=None)
    p.add_argument("--config", help='domino/omino trace, e.g. "W B B W W W [..] W | B"')
    p.add_argument("--top", help='matrix top row, extension after a space, e.g. "0u10 00"')
    p.add_argument("--bottom", help="matrix bottom row")

    sub.add_parser("selftest", help="run the acceptance criteria")
    return parser


def _ranges(args, family: str) -> dict[str, RangeSpec]:
    out = {}
    for name, default in DEFAULT_RANGES[family].items():
        text = getattr(args, name, None) or default
        out[name] = RangeSpec.parse(text)
    return out


def _emit(args, reports) -> int:
    skipped = [r for r in reports if r.status == verifier.SKIPPED]
    if skipped and not args.allow_skip:
        r = skipped[0]
        raise UsageError(f"{r.family} {r.params} skipped: {r.reason} (pass --allow-skip to report it)")
    if args.format == "json":
        text = verifier.to_json(reports, include_elapsed=args.timing)
    elif args.format == "csv":
        text = verifier.to_csv(reports)
    else:
        text = verifier.to_text(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if verifier.overall_ok(reports) else 1


def _sweep_args(args) -> dict:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return dict(ceilings=Ceilings(args.ceiling, args.matrix_ceiling), jobs=args.jobs)


def cmd_verify(args) -> int:
    reports = []
    for fam in args.families:
        if fam not in verifier.FAMILIES:
            raise UsageError(f"unknown family {fam!r}; choose from {', '.join(verifier.FAMILIES)}")
    for fam in args.families:
        reports += verifier.sweep(
            [fam], _ranges(args, fam), mode=args.mode, orientation=args.orientation,
            bij1_column=args.bij1_column, **_sweep_args(args),
        )
    return _emit(args, reports)


def cmd_master(args) -> int:
    fams = {"1": ["master1"], "2": ["master2"], "both": ["master1", "master2"]}[args.which]
    reports = []
    for fam in fams:
        reports += verifier.sweep([fam], _ranges(args, fam), **_sweep_args(args))
    return _emit(args, reports)


def _need(args, *names: str) -> list[int]:
    vals = []
    for n in names:
        v = getattr(args, n)
        if v is None:
            raise UsageError(f"--{n} is required for this engine")
        vals.append(v)
    return vals


def cmd_show_fixed(args) -> int:
    if args.engine == "dominoes":
        m, k = _need(args, "m", "k")
        b = args.b or 0
        stream = dominoes.fixed_points(args.variant, m, k, b, args.orientation)
        lines = [dominoes.to_trace(c) for c in stream]
    elif args.engine == "ominoes":
        m, k, b, q = _need(args, "m", "k", "b", "q")
        lines = [ominoes.to_trace(c) for c in ominoes.fixed_points(m, k, b, q)]
    else:
        m, k = _need(args, "m", "k")
        lines = [
            f"{matrices.to_trace(c)}  {kind}  {matrices.weight(c)}"
            for c, kind in matrices.survivors(m, k)
        ]
    for line in lines:
        print(line)
    print(f"{len(lines)} fixed points")
    return 0


def cmd_trace(args) -> int:
    if args.engine == "matrices":
        if args.top is None or args.bottom is None:
            raise UsageError("--top and --bottom are required for matrices")
        c = matrices.parse_trace(args.top, args.bottom, args.k)
        print(f"config:  {matrices.to_trace(c)}  weight {matrices.weight(c)}")
        out = matrices.classify(c)
        if isinstance(out, matrices.Survivor):
            print(f"survivor ({out.kind})")
        else:
            d = out.partner
            print(f"step {out.step} partner: {matrices.to_trace(d)}  weight {matrices.weight(d)}")
        return 0
    if args.config is None:
        raise UsageError("--config is required")
    if args.engine == "dominoes":
        m, k = _need(args, "m", "k")
        c = dominoes.parse_trace(args.config, args.variant, m, k, args.b or 0)
        out = dominoes.involute(c, args.orientation)
        render, weigh = dominoes.to_trace, dominoes.weight
    else:
        m, k, b, q = _need(args, "m", "k", "b", "q")
        c = ominoes.parse_trace(args.config, m, k, b, q)
        out = ominoes.involute(c)
        render, weigh = ominoes.to_trace, ominoes.weight
    print(f"config:  {render(c)}  weight {weigh(c):+d}")
    if out.fixed:
        print("fixed point")
    else:
        print(f"partner: {render(out.partner)}  weight {weigh(out.partner):+d}  "
              f"({out.kind} at {out.site})")
    return 0


def cmd_selftest(args) -> int:
    results = acceptance.run_all()
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "verify": cmd_verify,
    "master": cmd_master,
    "show-fixed": cmd_show_fixed,
    "trace": cmd_trace,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"binomverify: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
