"""Command-line interface.

Every invocation writes exactly one JSON report document to stdout;
human-readable diagnostics go to stderr. Exit codes are a stable
contract: 0 success or valid, 1 semantic negative (invalid system),
2 input error, 3 budget or size error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import __version__
from .bound import DEFAULT_ENUMERATION_BUDGET, compute_N, enumerate_monomials, growth_sequence
from .errors import BudgetExceededError, NonPrimeError, UnsupportedSizeError
from .field import PrimeModulus
from .poly import DEFAULT_TERM_BUDGET
from .slicerank import (
    FpTensor,
    check_triangular,
    decompose,
    gaussian_rank,
    matrix_rank,
    slice_rank_oracle,
    tensor_from_matrix_rows,
)
from .sumfree import DEFAULT_NODE_BUDGET, TripleSystem, search_exhaustive, search_greedy, verify

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class _CliInputError(ValueError):
    """Input problem with a ready-to-print diagnostic."""


def _env_budget(flag_value: Optional[int], fallback: int) -> int:
    """Flag wins; otherwise SLICERANK_BUDGET; otherwise the module default."""
    if flag_value is not None:
        return flag_value
    env = os.environ.get("SLICERANK_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _CliInputError(f"SLICERANK_BUDGET must be an integer, got {env!r}")
    return fallback


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _CliInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _CliInputError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno} "
            f"(char {exc.pos}): {exc.msg}"
        ) from exc


class _Report:
    """One JSON document per invocation, success or failure."""

    def __init__(self, command: str, parameters: dict):
        self.command = command
        self.parameters = parameters
        self.started = time.monotonic()

    def _document(self, payload_key: str, payload) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            payload_key: payload,
            "elapsedMillis": int((time.monotonic() - self.started) * 1000),
            "version": __version__,
        }

    def emit(self, result: dict, code: int = EXIT_OK) -> int:
        json.dump(self._document("result", result), sys.stdout)
        sys.stdout.write("\n")
        return code

    def fail(self, message: str, code: int) -> int:
        print(f"error: {message}", file=sys.stderr)
        json.dump(self._document("error", {"message": message, "exitCode": code}), sys.stdout)
        sys.stdout.write("\n")
        return code


def _prime(p: int) -> PrimeModulus:
    try:
        return PrimeModulus(p)
    except NonPrimeError as exc:
        raise _CliInputError(str(exc)) from exc


def _positive(value: int, name: str) -> int:
    if value < 1:
        raise _CliInputError(f"{name} must be >= 1, got {value}")
    return value


def cmd_bound(args) -> int:
    params = {
        "p": args.p,
        "n": args.n,
        "oracle": args.oracle,
        "growthMax": args.growth_max,
        "budget": args.budget,
        "threads": args.threads,
    }
    report = _Report("bound", params)
    try:
        modulus = _prime(args.p)
        n = _positive(args.n, "n")
        result = compute_N(modulus, n).to_json_dict()
        if args.oracle:
            budget = _env_budget(args.budget, DEFAULT_ENUMERATION_BUDGET)
            count = enumerate_monomials(modulus, n, budget=budget)
            result["oracleCount"] = str(count)
            result["oracleAgrees"] = count == int(result["N"])
        if args.growth_max is not None:
            result["growth"] = [
                pt.to_json_dict() for pt in growth_sequence(modulus, _positive(args.growth_max, "growth-max"))
            ]
        return report.emit(result)
    except _CliInputError as exc:
        return report.fail(str(exc), EXIT_INPUT)
    except BudgetExceededError as exc:
        return report.fail(str(exc), EXIT_BUDGET)


def cmd_verify(args) -> int:
    params = {"input": args.input, "threads": args.threads}
    report = _Report("verify", params)
    try:
        data = _load_json(args.input)
        try:
            system = TripleSystem.from_json_dict(data)
        except ValueError as exc:
            raise _CliInputError(str(exc)) from exc
        verdict = verify(system)
        return report.emit(verdict.to_json_dict(), EXIT_OK if verdict.valid else EXIT_INVALID)
    except _CliInputError as exc:
        return report.fail(str(exc), EXIT_INPUT)


def cmd_search(args) -> int:
    params = {
        "p": args.p,
        "n": args.n,
        "mode": args.mode,
        "mCap": args.m_cap,
        "seed": args.seed,
        "budget": args.budget,
        "threads": args.threads,
    }
    report = _Report("search", params)
    try:
        modulus = _prime(args.p)
        n = _positive(args.n, "n")
        three_n = compute_N(modulus, n).three_N
        if args.mode == "exhaustive":
            m_cap = args.m_cap if args.m_cap is not None else three_n
            budget = _env_budget(args.budget, DEFAULT_NODE_BUDGET)
            found = search_exhaustive(modulus, n, m_cap, node_budget=budget)
            result = {
                "m": found.m,
                "witness": found.witness.to_json_dict(),
                "bound3N": str(three_n),
                "complete": found.complete,
                "nodes": found.nodes,
            }
        else:
            system = search_greedy(modulus, n, args.seed)
            result = {
                "m": system.m,
                "witness": system.to_json_dict(),
                "bound3N": str(three_n),
                "complete": True,
                "seed": args.seed,
            }
        return report.emit(result)
    except _CliInputError as exc:
        return report.fail(str(exc), EXIT_INPUT)


def cmd_decompose(args) -> int:
    params = {
        "input": args.input,
        "emitSlices": args.emit_slices,
        "budget": args.budget,
        "threads": args.threads,
    }
    report = _Report("decompose", params)
    try:
        data = _load_json(args.input)
        try:
            system = TripleSystem.from_json_dict(data)
        except ValueError as exc:
            raise _CliInputError(str(exc)) from exc
        term_budget = _env_budget(args.budget, DEFAULT_TERM_BUDGET)
        dec = decompose(system, term_budget=term_budget)
        three_n = compute_N(system.modulus, system.n).three_N
        result = {
            "m": system.m,
            "sliceCount": dec.slice_count,
            "threeN": str(three_n),
            "pointwiseVerified": dec.pointwise_equal(),
        }
        if args.emit_slices:
            result["decomposition"] = dec.to_json_dict()
        return report.emit(result)
    except _CliInputError as exc:
        return report.fail(str(exc), EXIT_INPUT)
    except BudgetExceededError as exc:
        return report.fail(str(exc), EXIT_BUDGET)


def cmd_slicerank(args) -> int:
    params = {
        "tensor": args.tensor,
        "maxRank": args.max_rank,
        "allowBigTable": args.allow_big_table,
        "threads": args.threads,
    }
    report = _Report("slicerank", params)
    try:
        data = _load_json(args.tensor)
        try:
            tensor = FpTensor.from_json_dict(data)
        except ValueError as exc:
            raise _CliInputError(str(exc)) from exc
        cert = check_triangular(tensor)
        rank = slice_rank_oracle(tensor, args.max_rank, allow_big_table=args.allow_big_table)
        result = {
            "rank": rank if rank is not None else f"> {args.max_rank}",
            "maxRank": args.max_rank,
            "triangular": cert.to_json_dict(),
        }
        return report.emit(result)
    except _CliInputError as exc:
        return report.fail(str(exc), EXIT_INPUT)
    except UnsupportedSizeError as exc:
        return report.fail(str(exc), EXIT_BUDGET)


def cmd_rank(args) -> int:
    params = {"matrix": args.matrix, "threads": args.threads}
    report = _Report("rank", params)
    try:
        data = _load_json(args.matrix)
        try:
            p = data["p"]
            rows = data["rows"]
        except (KeyError, TypeError) as exc:
            raise _CliInputError(f"matrix JSON is missing field {exc}") from exc
        modulus = _prime(p)
        if (
            not isinstance(rows, list)
            or not rows
            or any(not isinstance(r, list) or not r for r in rows)
            or any(not isinstance(x, int) for r in rows for x in r)
            or len({len(r) for r in rows}) != 1
        ):
            raise _CliInputError("matrix rows must be non-empty equal-length lists of integers")
        rank = gaussian_rank(rows, modulus.p)
        result = {"rank": rank, "rows": len(rows), "cols": len(rows[0])}
        if len(rows) == len(rows[0]):
            tensor = tensor_from_matrix_rows(modulus, rows)
            assert matrix_rank(tensor) == rank
            result["triangular"] = check_triangular(tensor).to_json_dict()
        return report.emit(result)
    except _CliInputError as exc:
        return report.fail(str(exc), EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicebound",
        description="Exact slice decompositions and sum-free set bounds over prime fields.",
    )
    parser.add_argument("--version", action="version", version=f"slicebound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument(
            "--threads",
            type=int,
            default=os.cpu_count() or 1,
            help="cap on worker count (computation is deterministic regardless)",
        )

    b = sub.add_parser("bound", help="compute N and 3N, optionally with the enumeration oracle")
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--oracle", action="store_true", help="cross-check N by direct enumeration")
    b.add_argument("--growth-max", type=int, default=None, help="also emit N and N^(1/n) for n=1..max")
    b.add_argument("--budget", type=int, default=None, help="oracle enumeration budget")
    common(b)
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", help="verify a triple-system JSON file")
    v.add_argument("--input", required=True)
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="search for large valid systems")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=("exhaustive", "greedy"), required=True)
    s.add_argument("--m-cap", type=int, default=None, help="depth cap (default: 3N)")
    s.add_argument("--seed", type=int, default=0, help="greedy candidate order seed")
    s.add_argument("--budget", type=int, default=None, help="exhaustive node budget")
    common(s)
    s.set_defaults(func=cmd_search)

    d = sub.add_parser("decompose", help="slice-decompose the indicator tensor of a system")
    d.add_argument("--input", required=True)
    d.add_argument("--emit-slices", action="store_true")
    d.add_argument("--budget", type=int, default=None, help="expansion term budget")
    common(d)
    d.set_defaults(func=cmd_decompose)

    r = sub.add_parser("slicerank", help="brute-force slice rank of a small tensor")
    r.add_argument("--tensor", required=True)
    r.add_argument("--max-rank", type=int, required=True)
    r.add_argument("--allow-big-table", action="store_true")
    common(r)
    r.set_defaults(func=cmd_slicerank)

    m = sub.add_parser("rank", help="Gaussian-elimination rank of a matrix over F_p")
    m.add_argument("--matrix", required=True)
    common(m)
    m.set_defaults(func=cmd_rank)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
