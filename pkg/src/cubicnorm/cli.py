"""Command-line driver.

Exit codes: 0 success, 1 verification failure or surviving candidate,
2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import logbounds, oracle, sieve, units
from .errors import CubicNormError
from .intervals import DEFAULT_PREC

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PREC, help="interval precision in bits")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, help="worker processes for the sieve")

    bounds_opts = argparse.ArgumentParser(add_help=False)
    bounds_opts.add_argument("--t-min", type=int, default=2)
    bounds_opts.add_argument("--t-max", type=int)
    bounds_opts.add_argument("--m-max", type=int)
    bounds_opts.add_argument(
        "--assume-paper-bounds", action="store_true", help="use m_max = 225676 without re-deriving it"
    )

    prime_opts = argparse.ArgumentParser(add_help=False)
    prime_opts.add_argument("--primes", type=_int_list, help="comma-separated elimination primes")
    prime_opts.add_argument("--strict", action="store_true", help="also rule out coefficient -1")

    parser = argparse.ArgumentParser(prog="cubicnorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common, bounds_opts, prime_opts], help="full pipeline")
    sub.add_parser("bounds", parents=[common], help="derive m_max and the t bounds")
    sub.add_parser("sieve", parents=[common, bounds_opts], help="enumerate admissible (t, m)")
    p = sub.add_parser("check-pair", parents=[common, prime_opts], help="test a single (t, m)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = sub.add_parser("oracle", parents=[common], help="brute-force search")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--naive", action="store_true")
    p = sub.add_parser("ziegler", parents=[common], help="check Ziegler's functional identity")
    p.add_argument("--points", type=_int_list, help="comma-separated sample points (default -14..13)")
    return parser


def _emit(args, payload: dict, text: str, csv: str | None = None) -> None:
    if args.format == "csv":
        if csv is None:
            raise UsageError(f"--format csv is not supported by '{args.command}'")
        out = csv
    elif args.format == "text":
        out = text + "\n"
    else:
        out = json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n"
    if args.output:
        args.output.write_text(out)
    else:
        sys.stdout.write(out)


def _resolve_m_max(args) -> int:
    if args.assume_paper_bounds and args.m_max is not None:
        raise UsageError("--assume-paper-bounds and --m-max are mutually exclusive")
    if args.m_max is not None:
        return args.m_max
    if args.assume_paper_bounds:
        return sieve.PAPER_M_MAX
    return logbounds.derive_m_max(args.precision)


def cmd_verify(args) -> int:
    m_max = _resolve_m_max(args)
    config = sieve.VerifyConfig(
        m_max=m_max,
        t_max=args.t_max,
        t_min=args.t_min,
        primes=args.primes,
        strict=args.strict,
        precision=args.precision,
        workers=args.threads,
    )
    report = sieve.verify_theorem(config)
    data = report.as_dict()
    data.pop("schema_version")
    text = (
        f"m_max={report.m_max} t_max_coarse={report.t_max_coarse} t_max={report.t_max}\n"
        f"candidates={len(report.table)} survivors={len(report.survivors)}\n"
        f"verdict: {report.verdict}"
    )
    _emit(args, data, text, report.table.to_csv())
    return 0 if report.verdict == "verified" else 1


def cmd_bounds(args) -> int:
    bounds = logbounds.derive_t_bounds(logbounds.derive_m_max(args.precision))
    d = bounds.as_dict()
    _emit(args, d, " ".join(f"{k}={v}" for k, v in d.items()))
    return 0


def cmd_sieve(args) -> int:
    m_max = _resolve_m_max(args)
    t_max = args.t_max if args.t_max is not None else logbounds.derive_t_bounds(m_max).t_max
    if t_max < args.t_min:
        raise UsageError("--t-max must not be below --t-min")
    table = sieve.enumerate_candidates(args.t_min, t_max, m_max, workers=args.threads)
    data = {
        "m_max": m_max,
        "t_min": args.t_min,
        "t_max": t_max,
        "table": [{"t": t, "count": n} for t, n in table.rows],
        "pairs": [{"t": t, "m": m} for t, m in table.pairs],
    }
    text = "\n".join(f"t={t}: {n}" for t, n in table.rows) + f"\ntotal={len(table)}"
    _emit(args, data, text, table.to_csv())
    return 0


def cmd_check_pair(args) -> int:
    report = sieve.admissible(args.t, args.m)
    primes = sieve.DEFAULT_PRIMES if args.primes is None else args.primes
    result = sieve.final_coefficient_check(args.t, args.m, primes, strict=args.strict)
    data = {
        "admissibility": report.as_dict(),
        "elimination": {"status": result.status, "witness_prime": result.witness_prime},
    }
    text = f"admissible={report.admissible} elimination={result.status}"
    _emit(args, data, text)
    return 0 if result.eliminated else 1


def cmd_oracle(args) -> int:
    window = oracle.SearchWindow(args.t, args.bound) if args.bound else oracle.SearchWindow.default(args.t)
    found = oracle.brute_force(args.t, window, naive=args.naive)
    expected = [r.key() for r in oracle.functional_solutions(args.t)]
    ok = sorted(r.key() for r in found) == sorted(expected)
    data = {
        "t": args.t,
        "bound": window.bound,
        "solutions": [{"x": r.x, "y": r.y, "value": (-1) ** r.delta} for r in found],
        "only_functional": ok,
    }
    text = "\n".join(f"(x, y) = ({r.x}, {r.y}) value {(-1) ** r.delta:+d}" for r in found)
    _emit(args, data, text)
    return 0 if ok else 1


def cmd_ziegler(args) -> int:
    points = args.points if args.points is not None else list(range(-14, 14))
    ok = units.verify_ziegler_identity(points)
    _emit(args, {"points": sorted(set(points)), "identity_holds": ok}, f"identity_holds={ok}")
    return 0 if ok else 1


COMMANDS = {
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "sieve": cmd_sieve,
    "check-pair": cmd_check_pair,
    "oracle": cmd_oracle,
    "ziegler": cmd_ziegler,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, CubicNormError) as exc:
        print(f"cubicnorm {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
