"""cartier-kit command line.

Exit codes: 0 pass, 1 usage/parse error, 2 invariant violation, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback

from . import harness
from .cartier import InvariantViolation, analyze, check_bounds
from .curve import FieldTooSmall, instance_from_text

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _mults(text):
    if text is None:
        return None
    try:
        return tuple(int(m) for m in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multiplicity list {text!r}") from None


def _seed(text):
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--k", type=int, help="extension degree (default: smallest that fits)")
    common.add_argument("--n", type=int, help="cover order")
    common.add_argument("--mults", type=_mults, help="branch multiplicities, comma separated")
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--verify", action="store_true", help="run the independent oracles")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    ap = argparse.ArgumentParser(prog="cartier-kit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    a = sub.add_parser("analyze", parents=[common], help="analyze one curve")
    a.add_argument("instance", help='"p^k:modulus|n|n_1,...,n_r|alpha_1;...;alpha_r"')

    sub.add_parser("scan", parents=[common], help="random branch points for one type")
    sub.add_parser("oracle-check", parents=[common], help="scan with every oracle enabled")
    sub.add_parser("char2-verify", parents=[common], help="a-number constancy for p = 2")

    s = sub.add_parser("superspecial-search", parents=[common], help="hunt superspecial covers")
    s.add_argument("--n-max", type=int, default=5)
    s.add_argument("--r-max", type=int, default=5)

    lr = sub.add_parser("lemma-rank", parents=[common], help="test the span-dimension lemma")
    lr.add_argument("--r", type=int, default=2, help="number of polynomials")
    lr.add_argument("--deg-max", type=int, default=3)
    lr.add_argument("--m-max", type=int, default=3)
    lr.add_argument("--trials", type=int, default=100)
    lr.add_argument("--exhaustive", action="store_true")
    return ap


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m for m in missing))


def _emit(text: str, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> tuple[str, bool]:
    """Return (rendered output, passed)."""
    if args.verb == "analyze":
        try:
            c = instance_from_text(args.instance)
        except FieldTooSmall:
            raise
        except (ValueError, ArithmeticError) as exc:
            raise UsageError(str(exc)) from None
        blocks = {}
        rep = analyze(c, blocks)
        if args.verify:
            rep.verification = harness.verify_instance(c, rep, blocks)
        chk = check_bounds(rep)
        doc = rep.to_dict()
        doc["bound_failures"] = chk.failures()
        ok = not chk.failures() and (rep.verification is None or rep.verification["ok"])
        return json.dumps(doc, indent=2) + "\n", ok

    if args.verb in ("scan", "oracle-check"):
        _need(args, "p", "n", "mults")
        cfg = harness.ScanConfig(p=args.p, n=args.n, mults=args.mults, samples=args.samples,
                                 seed=args.seed, k=args.k, verify=args.verify,
                                 out_format=args.format, out_path=args.out)
        summary = harness.oracle_check(cfg) if args.verb == "oracle-check" else harness.cmd_scan(cfg)
        return harness.render(summary, args.format), not summary["violations"]

    if args.verb == "char2-verify":
        _need(args, "n", "mults")
        if args.p not in (None, 2):
            raise UsageError("char2-verify runs in characteristic 2 only")
        res = harness.char2_verify(args.n, args.mults, args.samples, args.seed)
        return json.dumps(res, indent=2) + "\n", res["pass"]

    if args.verb == "superspecial-search":
        _need(args, "p")
        res = harness.superspecial_search(args.p, args.n_max, args.r_max, args.samples, args.seed)
        return json.dumps(res, indent=2) + "\n", res["pass"]

    if args.verb == "lemma-rank":
        _need(args, "p")
        res = harness.lemma_rank(args.p, args.k or 1, args.r, args.deg_max, args.m_max,
                                 args.trials, args.seed, args.exhaustive)
        return json.dumps(res, indent=2) + "\n", res["pass"]

    raise UsageError(f"unknown verb {args.verb}")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        text, ok = _run(args)
    except UsageError as exc:
        print(f"cartier-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FieldTooSmall as exc:
        print(f"cartier-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, AssertionError) as exc:
        record = {"violation": type(exc).__name__, "message": str(exc),
                  "where": traceback.extract_tb(exc.__traceback__)[-1].name}
        print(json.dumps(record), file=sys.stdout)
        return EXIT_VIOLATION
    except ValueError as exc:
        print(f"cartier-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"cartier-kit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
