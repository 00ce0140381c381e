"""``bhverify``: run verification suites and write reports."""

from __future__ import annotations

import argparse
import os
import sys

from .report import ALL_SUITES, FORMATS, SuiteConfig, write_atomic

OUTDIR_ENV = "BH_VERIFY_OUTDIR"
_EXT = {"text": "txt", "json": "json", "csv": "csv"}


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bhverify", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    d = SuiteConfig()
    v = sub.add_parser("verify", help="run the checks of a suite")
    v.add_argument("suite", choices=ALL_SUITES)
    v.add_argument("--max-n", type=int, default=d.max_n, help="arithmetic table bound")
    v.add_argument("--primes", type=int, default=d.prime_count, help="primes in truncated products")
    v.add_argument("--degree", type=int, default=d.max_degree, help="max degree of random polynomials")
    v.add_argument("--quad-order", type=int, default=d.quad_order, help="fixed quadrature order")
    v.add_argument("--tol", type=float, default=d.tolerance, help="verdict tolerance")
    v.add_argument("--seed", type=_seed, default=d.seed)
    v.add_argument("--samples", type=int, default=d.samples, help="random functions per check")
    v.add_argument("--format", choices=FORMATS, default=d.format)
    v.add_argument("--out", help=f"report path; defaults to ${OUTDIR_ENV}/<suite>.<ext> when set, else stdout")
    v.add_argument("--timing", action="store_true", help="include wall times (makes output nondeterministic)")

    ls = sub.add_parser("list", help="list the checks of a suite")
    ls.add_argument("suite", choices=ALL_SUITES)
    return parser


def _output_path(args) -> str | None:
    if args.out:
        return args.out
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir:
        return os.path.join(outdir, f"{args.suite}.{_EXT[args.format]}")
    return None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # imported late so `bhverify --help` stays fast
    from .checks import list_checks, run_suite

    if args.command == "list":
        for c in list_checks(args.suite):
            tag = " [exploratory]" if c.exploratory else ""
            print(f"{c.id}\t{c.anchor}\t{c.description}{tag}")
        return 0

    try:
        config = SuiteConfig(
            suite=args.suite,
            max_n=args.max_n,
            prime_count=args.primes,
            max_degree=args.degree,
            quad_order=args.quad_order,
            tolerance=args.tol,
            seed=args.seed,
            samples=args.samples,
            format=args.format,
            out=_output_path(args),
        )
    except ValueError as exc:
        parser.error(str(exc))

    report = run_suite(config)
    text = report.render(timing=args.timing)
    if config.out:
        write_atomic(config.out, text)
        print(report.to_text(timing=args.timing).splitlines()[-1], file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 1 if report.failed else 0
