import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from holopw.api import commands
from holopw.api.suites import SUITES
from holopw.exceptions import HolopwError, SpaceMismatchError
from holopw.hilbert.hilbert import Transform
from holopw.schemas.schemas import RunConfig

logger = logging.getLogger("holopw")


def _run_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--group", default="A1", help="A1, A2 or T<n>")
    parent.add_argument("--t", type=float, default=1.0)
    parent.add_argument("--max-level", type=int, default=4)
    parent.add_argument("--quad-order", type=int, default=None)
    parent.add_argument("--mc-samples", type=int, default=100_000)
    parent.add_argument("--seed", type=int, default=42)
    parent.add_argument("--tolerance", type=float, default=1e-8)
    parent.add_argument("--sigma-band", type=float, default=3.0)
    parent.add_argument("--format", choices=["json", "csv"], default="json")
    parent.add_argument("--workers", type=int, default=1)
    parent.add_argument("--out", default=None)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="holopw", description="Numerical checks of the holomorphic Peter-Weyl identities")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)
    run = _run_options()
    verify = sub.add_parser("verify", parents=[run], help="run a verification suite")
    verify.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    sub.add_parser("constants", parents=[run], help="emit the table of C, D and naive constants")
    transform = sub.add_parser("transform", help="apply a diagonal operator to a series file")
    transform.add_argument("--which", required=True, choices=[t.value for t in Transform])
    transform.add_argument("--in", dest="source", required=True)
    transform.add_argument("--out", default=None)
    transform.add_argument("--quad-order", type=int, default=None)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        group=args.group,
        t=args.t,
        max_level=args.max_level,
        quad_order=args.quad_order,
        mc_samples=args.mc_samples,
        seed=args.seed,
        tolerance=args.tolerance,
        sigma_band=args.sigma_band,
        format=args.format,
        workers=args.workers,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=args.log_level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            return commands.verify(_config(args), args.suite, args.out)
        if args.command == "constants":
            text = commands.emit_constants_table(_config(args), args.out)
            if not args.out:
                print(text, end="")
            return 0
        text = commands.transform(args.which, args.source, args.out, args.quad_order)
        if not args.out:
            print(text, end="")
        return 0
    except ValidationError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    except SpaceMismatchError as exc:
        print(exc.detail, file=sys.stderr)
        return 2
    except HolopwError as exc:
        print(exc.detail, file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
