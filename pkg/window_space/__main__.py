"""Entry point for running window-space as a module.

Usage:
    python -m window_space classify lang.txt
    window-space measure lang.txt --max-n 8 --out csv
"""

import argparse
import logging
import os
import sys

from .classify import PROBLEMS
from .commands import ALGORITHMS, DECOMPOSITION_KINDS, EXIT_ERROR
from .constants import ENV_BUDGET_STATES, ENV_LOG_LEVEL, ENV_SEED
from .families import FAMILY_KINDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="window-space",
        description="Sliding-window space complexity of regular languages",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  window-space classify even_a.txt
  window-space measure ends_a.txt --max-n 8 --out csv
  window-space simulate ends_a.txt --algo optimal-variable --stream s.txt --verify
  window-space decide dfalog even_a.txt --out witness.json
  window-space decompose ends_a.txt --kind constant --out cert.json
  window-space generate lk --k 2
  window-space verify cert.json

Exit codes:
  0 ok / yes, 1 no (decide, verify, simulate --verify), 2 error

Environment variables:
  WINDOW_SPACE_BUDGET_STATES     Cap for subset constructions and explorations
  WINDOW_SPACE_BUDGET_WORDS      Cap for word enumerations
  WINDOW_SPACE_BUDGET_MONOID     Cap for transition-monoid closures
  WINDOW_SPACE_BUDGET_PATHS      Cap for path descriptions
  WINDOW_SPACE_BUDGET_VARIANTS   Cap for cycle-normalization variants
  WINDOW_SPACE_SEED              Seed for randomized checks (default: 0)
  WINDOW_SPACE_LOG_LEVEL         Log level (default: WARNING)
  WINDOW_SPACE_TRACING_ENABLED   Set to 'true' to export OpenTelemetry traces
""",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="Report format on stdout (default: text)",
    )
    parser.add_argument("--budget-states", type=int, metavar="N", help="Override WINDOW_SPACE_BUDGET_STATES")
    parser.add_argument("--seed", type=int, metavar="N", help="Override WINDOW_SPACE_SEED")
    parser.add_argument("--log-level", metavar="LEVEL", help="Override WINDOW_SPACE_LOG_LEVEL")
    parser.add_argument("--timing", action="store_true", help="Include wall-clock time in the report")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Space class in both window models, with witnesses")
    p.add_argument("input", metavar="AUTOMATON")

    p = sub.add_parser("measure", help="Exact space table F(n), V(n) for n <= N")
    p.add_argument("input", metavar="AUTOMATON")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p.add_argument("--out", choices=("csv", "json"), help="Table format (default: --format)")
    p.add_argument("--pad", metavar="SYMBOL", help="Padding symbol for fixed-size windows")

    p = sub.add_parser("simulate", help="Run a streaming algorithm over a stream file")
    p.add_argument("input", metavar="AUTOMATON")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--stream", metavar="PATH", help="Whitespace-separated tokens, '!' expires")
    p.add_argument("--window", type=int, metavar="N", help="Window length for fixed-size algorithms")
    p.add_argument("--pad", metavar="SYMBOL")
    p.add_argument("--verify", action="store_true", help="Compare against the reference algorithm")

    p = sub.add_parser("decide", help="Decide a space-class membership problem")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("input", metavar="AUTOMATON")
    p.add_argument("--out", metavar="PATH", help="Write the witness document here")

    p = sub.add_parser("decompose", help="Build and self-check a decomposition certificate")
    p.add_argument("input", metavar="AUTOMATON")
    p.add_argument("--kind", choices=DECOMPOSITION_KINDS, required=True)
    p.add_argument("--out", metavar="PATH", help="Write the certificate here")

    p = sub.add_parser("generate", help="Emit an automaton from a language family or gadget")
    p.add_argument("family", choices=FAMILY_KINDS)
    p.add_argument("--k", type=int)
    p.add_argument("--payload", metavar="AUTOMATON", help="Payload over {a,b} for gadgets")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("verify", help="Re-check a certificate or witness file")
    p.add_argument("input", metavar="DOCUMENT")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the window-space CLI."""
    args = build_parser().parse_args(argv)

    # CLI args override env vars
    if args.budget_states is not None:
        os.environ[ENV_BUDGET_STATES] = str(args.budget_states)
    if args.seed is not None:
        os.environ[ENV_SEED] = str(args.seed)
    if args.log_level:
        os.environ[ENV_LOG_LEVEL] = args.log_level

    # Import and initialize AFTER setting env vars
    from . import commands, state
    from .errors import WindowSpaceError
    from .telemetry import initialize_tracing, shutdown_tracing

    try:
        state.configure()
    except ValueError as e:
        print(f"window-space: {e}", file=sys.stderr)
        return EXIT_ERROR
    logging.basicConfig(
        stream=sys.stderr,
        level=state.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    initialize_tracing()

    fmt = args.format
    try:
        if args.command == "classify":
            report = commands.cmd_classify(args.input)
        elif args.command == "measure":
            report = commands.cmd_measure(args.input, args.max_n, pad=args.pad)
            fmt = args.out or fmt
        elif args.command == "simulate":
            report = commands.cmd_simulate(
                args.input, args.algo, stream=args.stream, window=args.window, pad=args.pad, verify=args.verify
            )
        elif args.command == "decide":
            report = commands.cmd_decide(args.problem, args.input, out=args.out)
        elif args.command == "decompose":
            report = commands.cmd_decompose(args.input, args.kind, out=args.out)
        elif args.command == "generate":
            report = commands.cmd_generate(
                args.family, k=args.k, payload=args.payload, out=args.out, fmt=args.format
            )
        else:
            report = commands.cmd_verify(args.input)
        sys.stdout.write(report.render(fmt, timing=args.timing))
    except (WindowSpaceError, ValueError, OSError) as e:
        print(f"window-space {args.command}: {e}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        shutdown_tracing()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
