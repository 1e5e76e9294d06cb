"""The ``cqg`` command: run verification suites and dump generated data."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .frt import GroupAlgebra
from .report import (
    SUITES,
    Context,
    ParseError,
    SuiteConfig,
    ValidationError,
    config_from_mapping,
    emit_report,
    parse_config,
    render_tables,
    run_limits,
    run_suite,
)


def _colour_arg(text: str) -> tuple[str, str]:
    name, sep, value = text.partition("=")
    if not sep or not name or not value:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name.strip(), value.strip()


def _q_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML suite configuration")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--q", type=_q_arg, action="append", default=[], metavar="Q",
                        help="q specialization for the oracle (a rational fourth power); repeatable")
    common.add_argument("--colour", type=_colour_arg, action="append", default=[], metavar="NAME=VALUE",
                        help="set a palette colour to an affine value, e.g. lambda=0; repeatable")

    parser = argparse.ArgumentParser(prog="cqg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    d = sub.add_parser("dump", parents=[common], help="print relations or calculus tables")
    d.add_argument("what", choices=("relations", "tables"))
    sub.add_parser("limits", parents=[common], help="colourless and monochromatic limits")
    return parser


def load_config(args: argparse.Namespace) -> SuiteConfig:
    cfg = parse_config(args.config) if args.config else config_from_mapping({})
    if args.q or args.colour:
        data = cfg.to_dict()
        if args.q:
            data["q_specializations"] = [str(x) for x in args.q]
        if args.colour:
            data["colours"] = {**data["colours"], **dict(args.colour)}
        cfg = config_from_mapping(data)
    return cfg


def _dump(what: str, cfg: SuiteConfig) -> str:
    ctx = Context(cfg)
    if what == "tables":
        return render_tables(ctx.calculus) + "\n"
    alg: GroupAlgebra = ctx.algebra
    lines = [f"# {len(alg.relations)} RTT relations over {', '.join(cfg.palette)}"]
    lines += [str(r) for r in alg.relations]
    lines.append(f"# {len(alg.rewrite_system.rules)} rewrite rules, {alg.order.describe()}")
    lines += alg.rewrite_system.dump()
    lines.append("# quantum determinants")
    lines += [str(alg.quantum_det(lab)) for lab in cfg.palette]
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except (ParseError, ValidationError) as exc:
        print(f"cqg: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cqg: {exc}", file=sys.stderr)
        return 2
    if args.command == "dump":
        sys.stdout.write(_dump(args.what, cfg))
        return 0
    report = run_limits(cfg) if args.command == "limits" else run_suite(args.suite, cfg)
    emit_report(report, args.format, sys.stdout)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
