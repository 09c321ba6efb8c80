"""Command line interface.

Results go to standard output as JSON; a short human-readable summary goes
to standard error.  Exit status is 0 on success, 1 when a verification
fails, and 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Optional, Sequence

from . import io
from .connectivity import connectivity, find_fans, is_3_connected
from .core import Matroid, has_minor
from .decomposition import branch_width_by_decomposition, decomposition_width
from .errors import LemmaViolation, MatroidError
from .removal import (
    RemovalContext,
    brute_force_oracle,
    find_removal_set,
    splitter_check,
    verify_removal,
)
from .tangle import branch_width, enumerate_tangles, max_tangle
from .verify import SUITES, report_json, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_set(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--set expects comma-separated integers, got {text!r}") from None


def _digest(M: Matroid) -> str:
    return hashlib.sha256(io.dumps(M).encode()).hexdigest()[:16]


def _check_labels(M: Matroid, X: Sequence[int]) -> None:
    missing = sorted(set(X) - set(M.ground))
    if missing:
        raise MatroidError(f"elements {missing} are not in the ground set")


def cmd_rank(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    X = _parse_set(args.set)
    _check_labels(M, X)
    r = M.rank(X)
    return {"set": sorted(X), "rank": r}, f"r({sorted(X)}) = {r}", 0


def cmd_lambda(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    X = _parse_set(args.set)
    _check_labels(M, X)
    lam = connectivity(M, X)
    return {"set": sorted(X), "lambda": lam}, f"lambda({sorted(X)}) = {lam}", 0


def cmd_bw(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    bw = branch_width(M)
    width, tree = branch_width_by_decomposition(M)
    out = {"branch_width": bw, "decomposition_width": width, "tree": io.tree_to_dict(tree)}
    if bw > 0:
        out["tangle"] = io.tangle_to_dict(max_tangle(M))
    ok = bw == width and decomposition_width(M, tree) == width
    return out, f"branch width {bw}, decomposition width {width}", 0 if ok else 1


def cmd_tangles(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    found = enumerate_tangles(M, args.order, limit=args.limit)
    out = {"order": args.order, "count": len(found), "tangles": [io.tangle_to_dict(T) for T in found]}
    return out, f"{len(found)} tangle(s) of order {args.order}", 0


def cmd_fans(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    fans = find_fans(M)
    out = {
        "count": len(fans),
        "fans": [{"elements": list(F.elements), "starts_with": F.starts_with} for F in fans],
    }
    return out, f"{len(fans)} maximal fan(s)", 0


def _load_minor(M: Matroid, path: str) -> Matroid:
    N = io.load(path)
    _check_labels(M, N.ground)
    return N


def cmd_minor(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    N = _load_minor(M, args.minor)
    spec = has_minor(M, N)
    out = {"is_minor": spec is not None, "witness": spec.to_dict() if spec else None}
    return out, "N is a minor of M" if spec else "N is not a minor of M", 0


def cmd_splitter(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    N = _load_minor(M, args.minor)
    w = splitter_check(M, N)
    bw = branch_width(M)
    if w is None:
        return {"found": False, "branch_width": bw}, "no splitter element found", 1
    out = {
        "found": True,
        "element": w.element,
        "operation": w.operation,
        "variant": w.variant,
        "branch_width": bw,
    }
    return out, f"{w.operation} {w.element} ({w.variant} minor)", 0


def cmd_remove(args) -> tuple[dict, str, int]:
    M = io.load(args.file)
    N = _load_minor(M, args.minor)
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    spec = has_minor(M, N)
    if spec is None:
        raise MatroidError("N is not a minor of M")
    if not is_3_connected(M):
        raise MatroidError("M must be 3-connected")
    T = max_tangle(M)
    result = find_removal_set(RemovalContext(M, T, spec, args.k))
    out = {"tangle": io.tangle_to_dict(T), "minor": spec.to_dict(), "result": result.to_dict()}
    status = 0
    if result.found:
        ok = verify_removal(M, T, N, result.removed, result.operation, args.k)
        out["verified"] = ok
        status = 0 if ok else 1
        summary = f"{result.operation} {sorted(result.removed)} via {result.stage}"
    else:
        summary = f"no removal set found ({result.stage})"
    if args.oracle:
        found = brute_force_oracle(M, N, args.k)
        out["oracle"] = None if found is None else {"removed": sorted(found[0]), "operation": found[1]}
        if result.found and found is None:
            status = 1
        summary += "; oracle " + ("finds " + str(sorted(found[0])) if found else "finds nothing")
    return out, summary, status


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="matroidlab", description="Exact small-matroid computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, helptext in (("rank", "rank of a set"), ("lambda", "connectivity of a set")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("file")
        q.add_argument("--set", required=True, help="comma-separated element labels")

    q = sub.add_parser("bw", help="branch width by tangles and by decomposition")
    q.add_argument("file")

    q = sub.add_parser("tangles", help="enumerate tangles of one order")
    q.add_argument("file")
    q.add_argument("--order", type=int, required=True)
    q.add_argument("--limit", type=int, default=None)

    q = sub.add_parser("fans", help="maximal fans")
    q.add_argument("file")

    for name in ("minor", "splitter"):
        q = sub.add_parser(name)
        q.add_argument("file")
        q.add_argument("--minor", required=True, help="matroid file of N")

    q = sub.add_parser("remove", help="k-element removal keeping 3-connectivity and N")
    q.add_argument("file")
    q.add_argument("--minor", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")

    q = sub.add_parser("verify", help="run the lemma verification suite")
    q.add_argument("--suite", choices=SUITES + ("all",), default="all")
    q.add_argument("--max-n", type=int, default=8)
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--quiet", action="store_true", help="no per-check progress on stderr")
    return p


COMMANDS = {
    "rank": cmd_rank,
    "lambda": cmd_lambda,
    "bw": cmd_bw,
    "tangles": cmd_tangles,
    "fans": cmd_fans,
    "minor": cmd_minor,
    "splitter": cmd_splitter,
    "remove": cmd_remove,
}


def _emit(data: dict) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"matroidlab: error: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        if args.command == "verify":
            if not 1 <= args.max_n <= 12:
                raise UsageError("--max-n must be between 1 and 12")
            progress = None if args.quiet else (lambda line: print(line, file=sys.stderr))
            report = run_suite(args.suite, args.seed, args.max_n, progress=progress)
            sys.stdout.write(report_json(report))
            failed = sorted(k for k, c in report["checks"].items() if not c["passed"])
            summary = "all checks passed" if not failed else "failed: " + ", ".join(failed)
            status = 0 if report["passed"] else 1
        else:
            data, summary, status = COMMANDS[args.command](args)
            data = {"command": args.command, "input": _input_echo(args), **data}
            _emit(data)
    except UsageError as exc:
        print(f"matroidlab: error: {exc}", file=sys.stderr)
        return 2
    except MatroidError as exc:
        print(f"matroidlab: {exc}", file=sys.stderr)
        return 2
    except LemmaViolation as exc:
        print(f"matroidlab: verification failure: {exc}", file=sys.stderr)
        return 1
    print(f"{summary} [{time.perf_counter() - start:.2f}s]", file=sys.stderr)
    return status


def _input_echo(args) -> dict:
    out = {}
    for key in ("file", "minor"):
        path = getattr(args, key, None)
        if isinstance(path, str):
            out[key] = {"path": path, "digest": _digest(io.load(path))}
    for key in ("set", "order", "k"):
        if getattr(args, key, None) is not None:
            out[key] = getattr(args, key)
    return out


if __name__ == "__main__":
    sys.exit(main())
