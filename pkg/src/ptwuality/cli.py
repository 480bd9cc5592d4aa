"""Command-line front end.

Exit codes: 0 success, 1 property or comparison failure, 2 bad input
(parse error, unknown operator, malformed set), 3 size cap exceeded,
4 singular matrix or principal minor. Results go to stdout and everything
else to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from .bouquet import intersection_graft, topological_polynomials
from .checks import DEFAULT_SEED, SUITE_NAMES, run_suite
from .errors import ContractViolation, ParseError, SingularMatrix, SizeCapExceeded
from .exactla import Matrix, inverse, pivot
from .formats import format_matrix, parse_bouquet, parse_graft, parse_matrix, parse_subset
from .graft import KN_OPERATORS, adjacency_matrix, kn_compare
from .intpoly import IntPolynomial
from .twuality import ALL_OPERATORS, DEFAULT_MAX_N, Twuality, all_polynomials, exponent, parse_operators

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_SIZE_CAP = 3
EXIT_SINGULAR = 4


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    format: str = "matrix"
    field_tag: str | None = None  # filled in once the input is parsed
    operators: list[Twuality] = field(default_factory=lambda: list(ALL_OPERATORS))
    output: str = "text"
    max_n: int = DEFAULT_MAX_N
    threads: int = 1
    seed: int = DEFAULT_SEED
    subset: str | None = None
    pivot: str | None = None
    invert: bool = False
    suite: str = "all"
    kn_n: int | None = None

    def __post_init__(self):
        if not self.operators:
            raise ContractViolation("operator list is empty")


def _read_input(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(cfg: RunConfig):
    """Parse the input; returns (matrix, bouquet or None)."""
    text = _read_input(cfg.input_path)
    if cfg.format == "matrix":
        M, b = parse_matrix(text), None
    elif cfg.format == "graft":
        M, b = adjacency_matrix(parse_graft(text)), None
    else:
        b = parse_bouquet(text)
        M = adjacency_matrix(intersection_graft(b))
    cfg.field_tag = M.field.tag
    return M, b


def _emit_polys(cfg: RunConfig, polys: dict[Twuality, IntPolynomial], n: int, out: TextIO) -> None:
    for op in cfg.operators:
        p = polys[op]
        if cfg.output == "json":
            print(p.to_json(op.value, cfg.field_tag, n), file=out)
        elif len(cfg.operators) == 1:
            print(p.to_text(), file=out)
        else:
            print(f"{op.value}: {p.to_text()}", file=out)


def cmd_compute(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    M, b = _load(cfg)
    if M.n > cfg.max_n:
        raise SizeCapExceeded(M.n, cfg.max_n)
    if cfg.subset is not None:
        A = parse_subset(cfg.subset, M)
        for op in cfg.operators:
            e = exponent(op, M, A)
            if cfg.output == "json":
                obj = {"operator": op.value, "field": cfg.field_tag, "n": M.n, "set": A.positions(), "exponent": e}
                print(json.dumps(obj), file=out)
            elif len(cfg.operators) == 1:
                print(e, file=out)
            else:
                print(f"{op.value}: {e}", file=out)
        return EXIT_OK
    if b is not None:
        # bouquets are evaluated on the surface side; equality with the
        # matrix side is what the equivalence suite checks
        polys = topological_polynomials(b, cfg.operators, max_n=cfg.max_n)
    else:
        polys = all_polynomials(M, cfg.operators, max_n=cfg.max_n, threads=cfg.threads)
    _emit_polys(cfg, polys, M.n, out)
    return EXIT_OK


def cmd_transform(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    if (cfg.pivot is None) == (not cfg.invert):
        raise ContractViolation("transform needs exactly one of --pivot SET or --invert")
    M, _ = _load(cfg)
    result: Matrix = inverse(M) if cfg.invert else pivot(M, parse_subset(cfg.pivot, M))
    out.write(format_matrix(result))
    return EXIT_OK


def cmd_check(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    if cfg.suite not in SUITE_NAMES:
        raise ContractViolation(f"unknown suite {cfg.suite!r}; expected one of {', '.join(SUITE_NAMES)}")
    results = run_suite(cfg.suite, cfg.seed)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name} ({r.cases} cases)", file=out)
        if not r.passed:
            print("counterexample:", file=out)
            out.write(r.counterexample)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def _coeff_text(cs: Sequence[int]) -> str:
    # a mistranscribed closed form can produce negative coefficients
    if any(c < 0 for c in cs):
        return "[" + ", ".join(map(str, cs)) + "]"
    return IntPolynomial(cs).to_text()


def cmd_kn(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    if cfg.kn_n is None or cfg.kn_n < 1:
        raise ContractViolation("kn needs --n N with N >= 1")
    if cfg.kn_n > cfg.max_n:
        raise SizeCapExceeded(cfg.kn_n, cfg.max_n)
    ok_all = True
    for op in cfg.operators:
        closed, brute, ok = kn_compare(op, cfg.kn_n)
        ok_all &= ok
        if cfg.output == "json":
            obj = {"operator": op.value, "n": cfg.kn_n, "closed_form": closed, "brute_force": list(brute.coefficients), "agree": ok}
            print(json.dumps(obj), file=out)
        else:
            print(f"K_{cfg.kn_n} {op.value}", file=out)
            print(f"  closed form: {_coeff_text(closed)}", file=out)
            print(f"  brute force: {brute.to_text()}", file=out)
            print(f"  agree: {'yes' if ok else 'no'}", file=out)
    return EXIT_OK if ok_all else EXIT_CHECK_FAILED


COMMANDS = {"compute": cmd_compute, "transform": cmd_transform, "check": cmd_check, "kn": cmd_kn}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptwuality", description="Partial-twuality polynomials of matrices, grafts and bouquets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_flags(p, with_ops=True):
        p.add_argument("input", nargs="?", default="-", help="input file, or - for stdin (default)")
        p.add_argument("--format", choices=("matrix", "graft", "bouquet"), default="matrix")
        if with_ops:
            p.add_argument("--ops", default=",".join(op.value for op in ALL_OPERATORS), help="comma-separated operators")
            p.add_argument("--out", choices=("text", "json"), default="text")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="size cap (default %(default)s)")

    p = sub.add_parser("compute", help="print partial-twuality polynomials")
    io_flags(p)
    p.add_argument("--set", dest="subset", help="print exponents at this subset (comma-separated indices, - for empty)")
    p.add_argument("--threads", type=int, default=1, help="worker processes for the subset sweep")

    p = sub.add_parser("transform", help="pivot or invert a matrix")
    io_flags(p, with_ops=False)
    p.add_argument("--pivot", help="pivot set as comma-separated indices")
    p.add_argument("--invert", action="store_true")

    p = sub.add_parser("check", help="run a seeded property suite")
    p.add_argument("--suite", default="all", choices=SUITE_NAMES)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED, help="default 0x5EED")

    p = sub.add_parser("kn", help="closed form versus brute force for the complete graph K_n")
    p.add_argument("--n", dest="kn_n", type=int, required=True)
    p.add_argument("--ops", default=",".join(op.value for op in KN_OPERATORS))
    p.add_argument("--out", choices=("text", "json"), default="text")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    ops = parse_operators(args.ops) if hasattr(args, "ops") else list(ALL_OPERATORS)
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        format=getattr(args, "format", "matrix"),
        operators=ops,
        output=getattr(args, "out", "text"),
        max_n=getattr(args, "max_n", DEFAULT_MAX_N),
        threads=getattr(args, "threads", 1),
        seed=getattr(args, "seed", DEFAULT_SEED),
        subset=getattr(args, "subset", None),
        pivot=getattr(args, "pivot", None),
        invert=getattr(args, "invert", False),
        suite=getattr(args, "suite", "all"),
        kn_n=getattr(args, "kn_n", None),
    )


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except SingularMatrix as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ContractViolation, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
