"""mzvlab command line: `mzvlab eval ...` and `mzvlab verify <suite> ...`.

Exit codes: 0 success / all checks pass, 1 some check failed, 2 usage or domain error.
Reports go to stdout (one JSON object per line, closed by a summary line); logs go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from app.render import render_sweep
from core.client.interfaces import IMZVBackend
from core.client.local import LocalBackend
from core.config import apply_settings, load_settings, settings
from core.errors import MZVLabError
from core.models import EvalRequest, VerifyRequest
from core.parity.bounds import LEMMAS
from core.suites.registry import SUITES

logger = logging.getLogger(__name__)

EVAL_KINDS = ("finite", "mzv", "star", "colored", "alt", "reg", "decompose", "truncated")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mzvlab", description="Finite multiple Hurwitz zeta values and parity checks")
    parser.add_argument("--config", type=Path, help="key=value settings file")
    parser.add_argument("--precision", type=int, help="working precision in decimal digits")
    parser.add_argument("--eps", type=float, help="absolute error bound for convergent values")
    parser.add_argument("--trunc", type=int, help="truncation N of infinite sums")
    parser.add_argument("--seed", type=int, help="seed for sampled instances")
    parser.add_argument("--format", choices=("json", "table"), help="output format")
    parser.add_argument("--workers", type=int, help="worker processes for sweeps (1 runs inline)")
    parser.add_argument("--backend", choices=("local", "mcp"), default="local", help="where to run requests")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate = commands.add_parser("eval", help="evaluate one value")
    evaluate.add_argument("kind", choices=EVAL_KINDS)
    evaluate.add_argument("--index", default="", help="multi-index, e.g. 2,1")
    evaluate.add_argument("--interval", help="window (m1,m2) or (m1,m2]")
    evaluate.add_argument("--shift", default="0", help="rational shift p/q")
    evaluate.add_argument("--colors", help="colors a1,a2@N")
    evaluate.add_argument("--star", action="store_true", help="weak inequalities")
    evaluate.add_argument("--kind", dest="regularization", choices=("stuffle", "shuffle"), default="stuffle")
    evaluate.add_argument("--word", help="word literal for decompose, e.g. y:2,1,1 or x:1,0,1")
    evaluate.add_argument("--m", type=int, help="truncation point M for 'truncated'")

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=sorted(SUITES))
    verify.add_argument("--max-weight", type=int)
    verify.add_argument("--max-depth", type=int)
    verify.add_argument("--window", dest="window_radius", type=int)
    verify.add_argument("--index", help="restrict to one multi-index")
    verify.add_argument("--q", type=int, help="restrict to one q")
    verify.add_argument("--kind", choices=("stuffle", "shuffle"), help="restrict to one regularization")
    verify.add_argument("--lemma", choices=LEMMAS, help="bounds: one lemma")
    verify.add_argument("--n-max", type=int, help="bounds: largest n")
    verify.add_argument("--m-list", type=_int_list, help="comma-separated M values")
    verify.add_argument("--instances", type=int, help="number of sampled instances")
    return parser


def _configure(args: argparse.Namespace) -> None:
    new = load_settings(
        args.config,
        precision_digits=args.precision,
        default_eps=args.eps,
        trunc_n=args.trunc,
        seed=args.seed,
        output_format=args.format,
        workers=args.workers,
    )
    apply_settings(new)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )
    if settings.log_file is not None:
        handler = logging.FileHandler(settings.log_file)
        handler.setFormatter(logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s"))
        logging.getLogger().addHandler(handler)


def _backend(name: str) -> IMZVBackend:
    if name == "mcp":
        from core.client.mcp_client import MCPBackend

        return MCPBackend()
    return LocalBackend()


def cmd_eval(args: argparse.Namespace, backend: IMZVBackend) -> int:
    request = EvalRequest(
        kind=args.kind,
        index=args.index,
        interval=args.interval,
        shift=args.shift,
        colors=args.colors,
        star=args.star,
        regularization=args.regularization,
        word=args.word,
        eps=args.eps,
        m=args.m,
        precision=settings.precision_digits,
    )
    result = backend.evaluate(request)
    if not result.success:
        print(f"mzvlab: {result.error}", file=sys.stderr)
        return EXIT_ERROR
    print(result.value)
    return EXIT_OK


def _verify_options(args: argparse.Namespace) -> dict:
    names = ("max_weight", "max_depth", "window_radius", "index", "q", "kind", "lemma", "n_max", "m_list", "instances")
    return {name: getattr(args, name) for name in names if getattr(args, name) is not None}


def cmd_verify(args: argparse.Namespace, backend: IMZVBackend) -> int:
    request = VerifyRequest(suite=args.suite, options=_verify_options(args), precision=settings.precision_digits)
    summary = backend.verify(request)
    for line in render_sweep(summary, settings.output_format):
        print(line)
    return EXIT_OK if summary.passed == summary.total else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        _configure(args)
        backend = _backend(args.backend)
        if args.command == "eval":
            return cmd_eval(args, backend)
        return cmd_verify(args, backend)
    except (MZVLabError, ValidationError, FileNotFoundError) as exc:
        print(f"mzvlab: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
