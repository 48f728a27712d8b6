#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command-line entry point for kbip.

Commands:
    factorize   build a cyclic or p_squared family and check it is a perfect 1-factorization
    color       emit a K_{p,p} or K_{p^2,p^2} coloring certificate
    verify      check a certificate for properness and acyclicity
    analyze     cycle-structure reports for the K_{p^2,p^2} factors
    lowerbound  exhaustive search for small acyclic colorings

Exit codes: 0 success, 1 mathematical failure, 2 invalid input.
"""

import os
import sys
import logging
import argparse
from dataclasses import dataclass, field
from typing import List, Optional

from colorama import Fore, Style, init as colorama_init

from .config import (
    Config,
    setup_logging,
    kbipError,
    AnalysisError,
    ConfigError,
)
from .core import (
    analysis,
    check_p1f,
    color_kp2,
    color_kpp,
    cyclic_factorization,
    derive_subcoloring,
    exhaustive_lower_bound,
    make_context,
    p_squared_factorization,
    read_certificate,
    verify_coloring,
    write_certificate,
)
from .utils import format_label, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

COMMANDS = ("factorize", "color", "verify", "analyze", "lowerbound")


@dataclass
class RunConfig:
    """Validated parameters of a single command invocation."""

    command: str
    p: Optional[int] = None
    n: Optional[int] = None
    family: Optional[str] = None
    target: Optional[str] = None
    generator_override: Optional[int] = None
    allow_p3: bool = False
    variant: Optional[str] = None
    drop_top: List[int] = field(default_factory=list)
    drop_bottom: List[int] = field(default_factory=list)
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    threads: Optional[int] = None
    fast: bool = False
    all_cases: bool = False
    a: Optional[int] = None
    b: Optional[int] = None
    colors: Optional[int] = None
    show_progress: bool = False

    def validate(self):
        """
        Check that the parameters fit the command.

        Raises:
            ConfigError: If a required parameter is missing or out of place
        """
        def require(condition, message, key):
            if not condition:
                raise ConfigError(message, config_key=key)

        require(self.command in COMMANDS, f"Unknown command {self.command!r}", "command")
        if self.command == "factorize":
            require(self.family in ("cyclic", "p_squared"), "factorize needs --family cyclic|p_squared", "family")
            if self.family == "cyclic":
                require(self.n is not None, "cyclic family needs --n", "n")
            else:
                require(self.p is not None, "p_squared family needs --p", "p")
        elif self.command == "color":
            require(self.target in ("kpp", "kp2"), "color needs --target kpp|kp2", "target")
            require(self.p is not None, "color needs --p", "p")
            require(self.output_path is not None, "color needs --out", "output_path")
        elif self.command == "verify":
            require(self.input_path is not None, "verify needs --cert", "input_path")
        elif self.command == "analyze":
            require(self.p is not None, "analyze needs --p", "p")
            require(self.all_cases or (self.a is not None and self.b is not None),
                    "analyze needs --all or both --a and --b", "a")
        elif self.command == "lowerbound":
            require(self.n is not None and self.colors is not None, "lowerbound needs --n and --colors", "n")
        if self.threads is not None:
            Config.get_thread_count(self.threads)


def _ok(message):
    print(f"{Fore.GREEN}OK{Style.RESET_ALL}   {message}")


def _fail(message):
    print(f"{Fore.RED}FAIL{Style.RESET_ALL} {message}")


def _note(message):
    print(f"{Fore.YELLOW}{message}{Style.RESET_ALL}")


def _run_factorize(config: RunConfig) -> int:
    if config.family == "cyclic":
        family = cyclic_factorization(config.n)
    else:
        family = p_squared_factorization(make_context(config.p, config.generator_override))

    report = check_p1f(family, fast=config.fast, threads=config.threads, show_progress=config.show_progress)
    if config.output_path:
        write_json(config.output_path, {"factorization": family.to_dict(), "p1f": report.to_dict()})

    scope = "all" if report.exhaustive else "sampled"
    if report.ok:
        _ok(f"{family.kind.value} family n={family.n}: perfect over {report.pairs_checked} {scope} pairs")
        return EXIT_OK
    first = report.failing_pairs[0]
    _fail(f"{family.kind.value} family n={family.n}: {len(report.failing_pairs)} failing pair(s), "
          f"first ({first[0]},{first[1]}) with cycle type {list(first[2])}")
    return EXIT_FAILURE


def _run_color(config: RunConfig) -> int:
    ctx = make_context(config.p, config.generator_override)
    if config.target == "kpp":
        coloring = color_kpp(ctx, variant=config.variant)
    else:
        coloring = color_kp2(ctx, allow_p3=config.allow_p3)
    if config.drop_top or config.drop_bottom:
        coloring = derive_subcoloring(coloring, config.drop_top, config.drop_bottom)

    write_certificate(coloring, config.output_path)
    _ok(f"{coloring.construction}: K_{{{coloring.n},{coloring.n}}} with {coloring.num_colors} colors "
        f"-> {config.output_path}")
    return EXIT_OK


def _run_verify(config: RunConfig) -> int:
    coloring = read_certificate(config.input_path)
    report = verify_coloring(coloring, threads=config.threads, show_progress=config.show_progress)
    if config.output_path:
        write_json(config.output_path, report.to_dict())

    if not report.proper:
        side, vertex, color = report.proper_violations[0]
        _fail(f"improper: color {color} repeats at {side} vertex {vertex} "
              f"({len(report.proper_violations)} clash(es))")
        return EXIT_FAILURE
    if not report.acyclic:
        witness = report.bichromatic_witness
        _fail(f"bichromatic cycle of length {len(witness.edges)} on colors {list(witness.colors)} "
              f"after {report.pairs_checked} pairs")
        return EXIT_FAILURE
    _ok(f"proper and acyclic: n={report.n}, {report.num_colors} colors, {report.pairs_checked} pairs checked")
    return EXIT_OK


def _run_analyze(config: RunConfig) -> int:
    ctx = make_context(config.p, config.generator_override)
    min_p, _ = Config.get_p_squared_range()
    if ctx.p < min_p and not config.allow_p3:
        raise ConfigError(f"analyze needs p >= {min_p} unless --allow-p3 is given", config_key="p",
                          config_value=ctx.p)

    if config.all_cases:
        reports = analysis.survey(ctx, threads=config.threads, show_progress=config.show_progress)
    else:
        reports = [analysis.case_report(ctx, config.a, config.b)]
        print(analysis.render_case(reports[0]))

    if config.output_path:
        write_json(config.output_path, [r.to_dict() for r in reports])

    mixed = sum(1 for r in reports if r.partition_ok)
    if mixed == len(reports):
        _ok(f"p={ctx.p}, x={ctx.x}: {len(reports)} case report(s) pass")
    else:
        _note(f"p={ctx.p}: {len(reports) - mixed} factor(s) have a single-class cycle, e.g. "
              f"{format_label(next(r.label for r in reports if not r.partition_ok), ctx.p)}")
    return EXIT_OK


def _run_lowerbound(config: RunConfig) -> int:
    result = exhaustive_lower_bound(config.n, config.colors)
    if config.output_path:
        write_json(config.output_path, result.to_dict())
    if result.exists:
        _ok(f"an acyclic proper coloring of K_{{{result.n},{result.n}}} with {result.colors} colors exists "
            f"({result.nodes_explored} nodes)")
    else:
        _note(f"no acyclic proper coloring of K_{{{result.n},{result.n}}} with {result.colors} colors exists "
              f"({result.nodes_explored} nodes)")
    return EXIT_OK


HANDLERS = {
    "factorize": _run_factorize,
    "color": _run_color,
    "verify": _run_verify,
    "analyze": _run_analyze,
    "lowerbound": _run_lowerbound,
}


def run(config: RunConfig) -> int:
    """
    Execute one command.

    Returns:
        Exit code: 0 success, 1 mathematical failure, 2 invalid input
    """
    try:
        config.validate()
        return HANDLERS[config.command](config)
    except AnalysisError as e:
        _fail(str(e))
        return EXIT_FAILURE
    except kbipError as e:
        logger.debug(f"Rejected input: {e}")
        _fail(str(e))
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbip",
        description="Acyclic (n+2)-edge-colorings of complete bipartite graphs",
    )
    parser.add_argument("--debug", action="store_true", help="Detailed console logging")
    parser.add_argument("--config", help="JSON file with Config overrides")
    parser.add_argument("--threads", type=int, help="Worker threads (falls back to KBIP_THREADS)")
    parser.add_argument("--no-progress", action="store_true", help="Hide progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    fac = sub.add_parser("factorize", help="Build a family and check it is a perfect 1-factorization")
    fac.add_argument("--family", choices=["cyclic", "p_squared"], required=True)
    fac.add_argument("--n", type=int)
    fac.add_argument("--p", type=int)
    fac.add_argument("--x", type=int, dest="generator")
    fac.add_argument("--fast", action="store_true", help="Stop at the first failing pair")
    fac.add_argument("--out")

    col = sub.add_parser("color", help="Emit a coloring certificate")
    col.add_argument("--target", choices=["kpp", "kp2"], required=True)
    col.add_argument("--p", type=int, required=True)
    col.add_argument("--x", type=int, dest="generator")
    col.add_argument("--allow-p3", action="store_true", help="Build the p=3 K_{9,9} coloring anyway")
    col.add_argument("--variant", choices=["uniform", "original"],
                     help="Defaults to original at p=3, uniform otherwise")
    col.add_argument("--drop-top", type=int, nargs="*", default=[])
    col.add_argument("--drop-bottom", type=int, nargs="*", default=[])
    col.add_argument("--out", required=True)

    ver = sub.add_parser("verify", help="Check a certificate")
    ver.add_argument("--cert", required=True)
    ver.add_argument("--out")

    ana = sub.add_parser("analyze", help="Cycle-structure reports for K_{p^2,p^2}")
    ana.add_argument("--p", type=int, required=True)
    ana.add_argument("--x", type=int, dest="generator")
    ana.add_argument("--all", action="store_true", dest="all_cases")
    ana.add_argument("--a", type=int)
    ana.add_argument("--b", type=int)
    ana.add_argument("--allow-p3", action="store_true")
    ana.add_argument("--out")

    low = sub.add_parser("lowerbound", help="Exhaustive search on K_{n,n}")
    low.add_argument("--n", type=int, required=True)
    low.add_argument("--colors", type=int, required=True)
    low.add_argument("--out")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    def get(name, default=None):
        return getattr(args, name, default)

    return RunConfig(
        command=args.command,
        p=get("p"),
        n=get("n"),
        family=get("family"),
        target=get("target"),
        generator_override=get("generator"),
        allow_p3=get("allow_p3", False),
        variant=get("variant"),
        drop_top=list(get("drop_top", []) or []),
        drop_bottom=list(get("drop_bottom", []) or []),
        input_path=get("cert"),
        output_path=get("out"),
        threads=args.threads,
        fast=get("fast", False),
        all_cases=get("all_cases", False),
        a=get("a"),
        b=get("b"),
        colors=get("colors"),
        show_progress=Config.SHOW_PROGRESS and not args.no_progress,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, configure logging and run the command."""
    parser = build_parser()
    args = parser.parse_args(argv)

    colorama_init()
    config = Config.get_instance()
    try:
        if args.config:
            config.load_from_file(args.config)
        log_dir = os.path.join(os.path.expanduser("~"), config.LOG_DIR_NAME, "logs")
        setup_logging(debug=args.debug or config.DEBUG_MODE, log_dir=log_dir, max_files=config.MAX_LOG_FILES)
    except (ConfigError, RuntimeError) as e:
        _fail(str(e))
        return EXIT_USAGE

    logger.debug(f"Command line: {argv if argv is not None else sys.argv[1:]}")
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
