"""Command-line front end.

    python -m seqlibs solve "1, 0, 5, 8, 17"
    python -m seqlibs compose "(1)" "(1)" "(1)" "(2)" "(-1)"
    python -m seqlibs bench --solver all --format structured

Exit status: 0 on success, 1 when no solution was found, 2 on usage or input
errors. Results go to standard output, diagnostics to standard error.
Sequences starting with a minus sign must follow ``--``.
"""
import argparse
import logging
import sys
from contextlib import redirect_stderr, redirect_stdout
from typing import Sequence, TextIO

from . import __version__
from .bench import SOLVERS, render_structured, render_table, run_bench
from .corpus import default_corpus, load_corpus
from .dymvec import NoSolution, solve
from .errors import SequenceError
from .logs import setup_logging
from .matrix import (
    base_matrix,
    derive_model_vector,
    invert_exact,
    load_bases,
    render_matrix,
    solve_by_inversion,
)
from .modelvector import compose_all, extend, parse_vector, render_vector
from .numeric import render_rational
from .sequences import parse_segment, render_segment
from .stable import Stable, default_stable, load_stable

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_USAGE = 2


def _parents() -> tuple[argparse.ArgumentParser, ...]:
    """Option groups shared between subcommands."""
    logs = argparse.ArgumentParser(add_help=False)
    logs.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    stable = argparse.ArgumentParser(add_help=False)
    stable.add_argument("--stable", metavar="PATH", help="stable file (default: the shipped stable)")
    stable.add_argument("--no-primes", action="store_true", help="disable the consecutive-primes recognizer")
    stable.add_argument("--fallback", metavar="VECTOR", help="vector to apply when the search finds nothing")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--max-length", type=int, metavar="K", help="longest model vector to search")
    return logs, stable, search


def build_parser() -> argparse.ArgumentParser:
    logs, stable, search = _parents()

    parser = argparse.ArgumentParser(prog="seqlibs", description="Solve number sequence problems with model vectors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    p = commands.add_parser("solve", parents=[logs, stable, search], help="predict the next term")
    p.add_argument("terms")

    p = commands.add_parser("explain", parents=[logs, stable, search], help="prediction with description and weights")
    p.add_argument("terms")

    p = commands.add_parser("compose", parents=[logs], help="compose model vectors")
    p.add_argument("vectors", nargs="+")

    p = commands.add_parser("invert", parents=[logs], help="matrix pathway for a bases file")
    p.add_argument("bases")
    p.add_argument("--problem", metavar="TERMS", help="also solve this problem by inversion")

    p = commands.add_parser("extend", parents=[logs], help="extend a segment with a model vector")
    p.add_argument("vector")
    p.add_argument("terms")
    p.add_argument("k", type=int)
    p.add_argument("direction", choices=("forward", "backward"))

    p = commands.add_parser("bench", parents=[logs, stable, search], help="run solvers over the problem corpus")
    p.add_argument("--format", choices=("table", "structured"), default="table")
    p.add_argument("--solver", choices=SOLVERS + ("all",), default="dymvec")
    p.add_argument("--corpus", metavar="PATH", help="corpus file (default: the shipped corpus)")
    p.add_argument("--workers", type=int, default=1)

    p = commands.add_parser("stable", parents=[logs, stable], help="inspect the stable")
    p.add_argument("action", choices=("list",))
    return parser


def _stable(args) -> Stable:
    stable = load_stable(args.stable) if args.stable else default_stable()
    changes = {}
    if args.no_primes:
        changes["primes_recognizer"] = False
    if args.fallback:
        changes["fallback_vector"] = parse_vector(args.fallback)
    return stable.with_options(**changes) if changes else stable


def _solve(args, out: TextIO, explain: bool) -> int:
    p = parse_segment(args.terms)
    solution = solve(p, _stable(args), args.max_length)
    if isinstance(solution, NoSolution):
        print(solution.reason, file=out)
        return EXIT_NO_SOLUTION
    print(render_rational(solution.prediction), file=out)
    if explain:
        print("description: {" + ", ".join(solution.description) + "}", file=out)
        print(f"method: {solution.method.value}", file=out)
        print(f"size: {solution.size}", file=out)
        if solution.vector is not None:
            print(f"vector: {render_vector(solution.vector)}", file=out)
        if solution.weights is not None:
            print(f"weights: {solution.weights}", file=out)
    return EXIT_OK


def _compose(args, out: TextIO) -> int:
    print(render_vector(compose_all(parse_vector(v) for v in args.vectors)), file=out)
    return EXIT_OK


def _invert(args, out: TextIO) -> int:
    bases = load_bases(args.bases)
    m = base_matrix(bases)
    print("M:", file=out)
    print(render_matrix(m), file=out)
    print("M^-1:", file=out)
    print(render_matrix(invert_exact(m)), file=out)
    print("z: (" + ", ".join(render_rational(b.next_term) for b in bases) + ")", file=out)
    print(f"v: {render_vector(derive_model_vector(bases))}", file=out)
    if args.problem:
        answer, weights = solve_by_inversion(parse_segment(args.problem), bases)
        print(f"w: {weights}", file=out)
        print(f"next: {render_rational(answer)}", file=out)
    return EXIT_OK


def _extend(args, out: TextIO) -> int:
    extended = extend(parse_vector(args.vector), parse_segment(args.terms), args.k, args.direction)
    print(render_segment(extended), file=out)
    return EXIT_OK


def _bench(args, out: TextIO) -> int:
    corpus = load_corpus(args.corpus) if args.corpus else default_corpus()
    report = run_bench(_stable(args), corpus, args.solver, args.workers, args.max_length)
    render = render_structured if args.format == "structured" else render_table
    out.write(render(report))
    return EXIT_OK


def _stable_list(args, out: TextIO) -> int:
    stable = _stable(args)
    for base in stable.ordered:
        print(f"{base.key:<14} x{base.max_multiplicity}  {', '.join(base.labels)}", file=out)
    print(f"primes recognizer: {'on' if stable.primes_recognizer else 'off'}", file=out)
    fallback = render_vector(stable.fallback_vector) if stable.fallback_vector else "none"
    print(f"fallback: {fallback}", file=out)
    return EXIT_OK


_COMMANDS = {
    "solve": lambda args, out: _solve(args, out, explain=False),
    "explain": lambda args, out: _solve(args, out, explain=True),
    "compose": _compose,
    "invert": _invert,
    "extend": _extend,
    "bench": _bench,
    "stable": _stable_list,
}


def dispatch(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    setup_logging(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return _COMMANDS[args.command](args, out)
    except (SequenceError, ValueError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
