"""
Main CLI application for the KBSM calculator.

Subcommands: bracket, reduce, pn, pnk, verify, random.
Exit codes: 0 success, 1 input error, 2 verification failure.
主CLI应用程序：参数解析、命令分发与退出码。
"""

import argparse
import logging
import sys
from typing import List, Optional

from ..core.config import Config
from ..core.enums import Stage
from ..core.events import RewriteTrace
from ..core.generator import random_diagram
from ..core.oracle import check_invariance
from ..core.reduction import kbsm_bracket, normal_form, reduce_qf, reduce_rr, reduce_srr
from ..core.ring import p_n, p_nk
from ..core.state_sum import bracket_raw
from .input_schemas import (
    InputParseError,
    load_diagram_file,
    parse_moves,
    parse_non_negative,
    parse_positive,
    parse_stage,
    parse_surface,
    parse_word_input,
)
from .render import (
    render_bracket_table,
    render_diagram,
    render_diagram_summary,
    render_element,
    render_report,
    render_trace,
    render_xpoly,
)

LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFY_FAILED = 2

_STAGE_REDUCERS = {Stage.SRR: reduce_srr, Stage.RR: reduce_rr, Stage.QF: reduce_qf}


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _emit_trace(trace: Optional[RewriteTrace]) -> None:
    if trace is not None and len(trace):
        print(render_trace(trace), file=sys.stderr)


def cmd_bracket(args: argparse.Namespace, config: Config) -> int:
    """Print the normal form of a diagram file's bracket."""
    surface = parse_surface(args.surface) if args.surface else None
    diagram = load_diagram_file(args.file, config, surface)
    LOG.info("%s", render_diagram_summary(diagram))
    if args.raw:
        print(render_bracket_table(bracket_raw(diagram)))
    trace = RewriteTrace() if args.trace else None
    result = kbsm_bracket(diagram, config, trace)
    _emit_trace(trace)
    print(render_element(result))
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace, config: Config) -> int:
    """Print the normal form of a word or element."""
    surface = parse_surface(args.surface)
    stage = parse_stage(args.stage)
    element = parse_word_input(args.word, surface)
    trace = RewriteTrace() if args.trace else None
    if stage is Stage.F:
        result = normal_form(element, surface, config, trace)
    else:
        for word in element.words():
            word.check_alphabet(surface)
        result = _STAGE_REDUCERS[stage](element, config, trace)
    _emit_trace(trace)
    print(render_element(result))
    return EXIT_OK


def cmd_pn(args: argparse.Namespace, config: Config) -> int:
    print(render_xpoly(p_n(args.n)))
    return EXIT_OK


def cmd_pnk(args: argparse.Namespace, config: Config) -> int:
    k = parse_non_negative(args.k, "k")
    print(render_xpoly(p_nk(args.n, k)))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    """Run the move-invariance harness."""
    surface = parse_surface(args.surface)
    moves = parse_moves(args.moves)
    trials = parse_positive(args.trials if args.trials is not None else config.default_trials,
                            "trials")
    seed = args.seed if args.seed is not None else config.random_seed
    report = check_invariance(surface, moves, trials, seed, config)
    print(render_report(report))
    return EXIT_OK if report.all_ok else EXIT_VERIFY_FAILED


def cmd_random(args: argparse.Namespace, config: Config) -> int:
    """Write a random diagram in the file format."""
    surface = parse_surface(args.surface)
    crossings = parse_non_negative(args.crossings, "crossings")
    dots = parse_non_negative(args.dots, "dots")
    diagram = random_diagram(surface, crossings, dots, args.seed, config)
    print(render_diagram(diagram.diagram))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbsm_calc",
        description="Exact Kauffman bracket skein module calculator for F x S^1.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="more log output on stderr (-vv for debug)")
    sub = parser.add_subparsers(dest="command", required=True)

    bracket = sub.add_parser("bracket", parents=[common], help="bracket of a diagram file")
    bracket.add_argument("file")
    bracket.add_argument("--surface", help="override the file's surface")
    bracket.add_argument("--trace", action="store_true", help="rewrite trace on stderr")
    bracket.add_argument("--raw", action="store_true", help="print the state-sum table first")
    bracket.set_defaults(handler=cmd_bracket)

    reduce = sub.add_parser("reduce", parents=[common], help="normal form of a word")
    reduce.add_argument("word")
    reduce.add_argument("--surface", required=True)
    reduce.add_argument("--stage", default="f", help="stop after srr, rr, qf or f")
    reduce.add_argument("--trace", action="store_true", help="rewrite trace on stderr")
    reduce.set_defaults(handler=cmd_reduce)

    pn = sub.add_parser("pn", parents=[common], help="the polynomial P_n")
    pn.add_argument("n", type=int)
    pn.set_defaults(handler=cmd_pn)

    pnk = sub.add_parser("pnk", parents=[common], help="the polynomial P_{n,k}")
    pnk.add_argument("n", type=int)
    pnk.add_argument("k", type=int)
    pnk.set_defaults(handler=cmd_pnk)

    verify = sub.add_parser("verify", parents=[common], help="move invariance harness")
    verify.add_argument("--surface", default="pants")
    verify.add_argument("--moves", default="regular",
                        help="comma-separated: omega1, omega1+, omega1-, omega2..omega5, "
                             "regular, all")
    verify.add_argument("--trials", type=int)
    verify.add_argument("--seed", type=int)
    verify.set_defaults(handler=cmd_verify)

    rand = sub.add_parser("random", parents=[common], help="write a random diagram")
    rand.add_argument("--surface", default="pants")
    rand.add_argument("--crossings", type=int, default=2)
    rand.add_argument("--dots", type=int, default=2)
    rand.add_argument("--seed", type=int, default=0)
    rand.set_defaults(handler=cmd_random)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI application."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    config = Config.default()
    try:
        return args.handler(args, config)
    except (InputParseError, ValueError) as error:
        # DiagramError and WordError are ValueErrors
        print(f"error: {error}", file=sys.stderr)
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
