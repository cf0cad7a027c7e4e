"""
Main entry point for the monomial testing engine.

Parses the command line into a validated RunConfig, configures logging and
dispatches to the subcommand handlers in monomial.commands. Exit codes:
0 = yes, 1 = no, 2 = error.
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from .commands.bench import cmd_bench
from .commands.circuit import cmd_oracle, cmd_test_circuit
from .commands.common import emit
from .commands.graph import cmd_kclique_gen, cmd_kpath
from .commands.structured import cmd_test_structured
from .schemas import ENGINES, PIT_METHODS, TAG_SITES, RunConfig, TestReport
from .utils.config import settings
from .utils.errors import MonomialError
from .utils.logger import cli_logger as logger
from .utils.logger import configure_loggers, set_level
from .utils.storage import StorageService

EXIT_ERROR = 2

Handler = Callable[[RunConfig, StorageService], Optional[TestReport]]

HANDLERS: Dict[str, Handler] = {
    "test-circuit": cmd_test_circuit,
    "test-structured": cmd_test_structured,
    "kpath": cmd_kpath,
    "kclique-gen": cmd_kclique_gen,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
}

HELP = {
    "test-circuit": "decide whether a circuit has a degree-k p-monomial",
    "test-structured": "decide whether a structured polynomial has a multilinear monomial",
    "kpath": "decide whether a graph has a simple path on k vertices",
    "kclique-gen": "write the k-clique circuit of a graph",
    "oracle": "decide by explicit expansion (small inputs)",
    "bench": "generate a corpus or time the testers over one",
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime modulus (default 2)")
    common.add_argument("--k", type=int, help="target degree, or path/clique size")
    common.add_argument("--mode", help="rand | det | oracle, or a structured mode")
    common.add_argument("--trials", type=int, default=settings.DEFAULT_TRIALS, help="randomized trials")
    common.add_argument("--reps", help="narrow_test repetitions, an integer or 'auto'")
    common.add_argument("--seed", type=int, help="run seed (overrides MONOMIAL_SEED)")
    common.add_argument("--format", choices=["text", "json"], default="text", help="report format")
    common.add_argument("--threads", type=int, default=settings.DEFAULT_THREADS, help="worker threads")
    common.add_argument("--mem-mb", type=int, dest="mem_mb", help="memory budget for group-algebra tables")
    common.add_argument("-o", "--output", help="write the report (or generated circuit) to this path")
    common.add_argument("--c", type=int, default=1, help="exponent bound c (kpath, pisigma)")
    common.add_argument("--hamiltonian", action="store_true", help="kpath with k = vertex count")
    common.add_argument("--pad", action="store_true", help="pad the circuit degree up to k")
    common.add_argument("--pit", choices=PIT_METHODS, default="eval", help="identity test of the randomized tester")
    common.add_argument("--engine", choices=ENGINES, default="auto", help="group-algebra convolution engine")
    common.add_argument("--tags", choices=TAG_SITES, default="input", help="where tag variables are placed")
    common.add_argument("--generate", type=int, help="bench: write N instances of each kind")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monomial", description=settings.PROJECT_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    common = _common_flags()
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in HANDLERS:
        command = sub.add_parser(name, parents=[common], help=HELP[name])
        command.add_argument("inputs", nargs="+", help="input file(s) or corpus directory")
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    fields = {name: value for name, value in vars(args).items()
              if name not in ("verbose", "quiet") and value is not None}
    return RunConfig(**fields)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_loggers()
    if args.verbose:
        set_level("DEBUG")
    elif args.quiet:
        set_level("WARNING")
    else:
        set_level(settings.LOG_LEVEL.upper())

    try:
        cfg = run_config(args)
        storage = StorageService()
        logger.info(f"{cfg.subcommand} {' '.join(cfg.inputs)} (p={cfg.p}, k={cfg.k}, mode={cfg.mode})")
        report = HANDLERS[cfg.subcommand](cfg, storage)
        if report is None:
            return 0
        return emit(report, cfg, storage)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        sys.stderr.write(f"error: {messages}\n")
        logger.error(f"invalid run configuration: {messages}")
        return EXIT_ERROR
    except MonomialError as e:
        sys.stderr.write(f"error: {str(e)}\n")
        logger.error(f"{args.subcommand} failed: {type(e).__name__}: {str(e)}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
