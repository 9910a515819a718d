"""Command-line interface.

Exit codes: 0 success/found, 1 semantic negative (non-member, exhausted),
2 usage or parse error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .bounds import check_bgen, general_upper_bound, k6_bounds, matrix_excess, upper_bound_terms
from .constructions import build_odd_q_matrix
from .diagnostics import claim_suite
from .fileio import ParseError, digest, dumps, parse_matrix, render_latex, render_matrix, write_matrix
from .matrix import MatrixError, bad_pairs, is_complete, proper_violation
from .search import EXACT_LIMIT, Outcome, SearchConfig, achromatic_number, exists_colouring, heuristic_search

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BAD_PAIR_CAP = 50

log = logging.getLogger("achrolab")


class UsageError(Exception):
    pass


def _emit(doc: dict) -> None:
    sys.stdout.write(dumps(doc))


def cmd_construct(args) -> int:
    if args.q < 7 or args.q % 2 == 0:
        raise UsageError(f"construct needs odd q >= 7, got q = {args.q}")
    m = build_odd_q_matrix(args.q)
    text = render_matrix(m)
    if args.output:
        write_matrix(m, args.output)
    if args.latex:
        sys.stdout.write(render_latex(m))
    elif args.output:
        _emit({
            "command": "construct",
            "q": args.q,
            "p": m.p,
            "colours": m.k,
            "output": str(args.output),
            "output_digest": digest(text),
        })
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        raw = Path(args.path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {args.path}: {e.strerror}") from e
    try:
        m = parse_matrix(raw.decode("utf-8"))
    except (ParseError, UnicodeDecodeError) as e:
        raise UsageError(f"{args.path}: {e}") from e

    violation = proper_violation(m)
    proper = violation is None
    complete = is_complete(m)
    missing = bad_pairs(m)
    member = proper and complete
    exc = matrix_excess(m)
    doc = {
        "command": "verify",
        "input": str(args.path),
        "input_digest": digest(raw),
        "p": m.p,
        "q": m.q,
        "colours": m.k,
        "verdicts": {
            "proper": proper,
            "complete": complete,
            "member": member,
            "violation": None if proper else {
                "line": violation.line,
                "index": violation.index + 1,
                "colour": violation.token,
                "message": str(violation),
            },
            "bad_pair_count": len(missing),
            "bad_pairs": [[m.token(a), m.token(b)] for a, b in missing[:BAD_PAIR_CAP]],
        },
        "bounds": {
            "frequencies": {m.token(c): m.stats.freq.frq(c) for c in range(m.k)},
            "min_frequency": exc.min_frequency,
            "matrix_excess": exc.matrix_excess,
            "frequency_violations": check_bgen(m),
            "general_upper_bound": general_upper_bound(min(m.p, m.q), max(m.p, m.q)),
        },
    }
    if args.diagnose:
        if m.p == 6:
            try:
                doc["diagnostics"] = claim_suite(m).to_dict()
            except MatrixError as e:
                doc["diagnostics"] = {"applicable": False, "reason": str(e)}
        else:
            doc["diagnostics"] = {"applicable": False, "reason": f"claim suite needs p = 6, got p = {m.p}"}
    _emit(doc)
    if not proper:
        print(f"not proper: {violation}", file=sys.stderr)
    elif not complete:
        print(f"not complete: {len(missing)} bad pair(s)", file=sys.stderr)
    return EXIT_OK if member else EXIT_NEGATIVE


def cmd_bounds(args) -> int:
    if not 1 <= args.p <= args.q:
        raise UsageError(f"bounds needs 1 <= p <= q, got p = {args.p}, q = {args.q}")
    doc = {
        "command": "bounds",
        "p": args.p,
        "q": args.q,
        "upper": general_upper_bound(args.p, args.q),
        "terms": upper_bound_terms(args.p, args.q),
    }
    if args.p == 6 and args.q >= 7:
        kb = k6_bounds(args.q)
        doc.update({"lower": kb.lower, "exact": kb.exact})
    _emit(doc)
    return EXIT_OK


def _exit_for(outcome: Outcome) -> int:
    return {Outcome.FOUND: EXIT_OK, Outcome.EXHAUSTED: EXIT_NEGATIVE, Outcome.BUDGET: EXIT_BUDGET}[outcome]


def cmd_search(args) -> int:
    p, q = args.p, args.q
    if not 1 <= p <= q:
        raise UsageError(f"search needs 1 <= p <= q, got p = {p}, q = {q}")
    doc = {"command": "search", "p": p, "q": q, "mode": "heuristic" if args.heuristic else "exact"}
    if args.heuristic:
        if args.k is None:
            raise UsageError("heuristic search needs --k")
        if args.budget <= 0:
            raise UsageError("heuristic search needs --budget > 0")
        cfg = SearchConfig(p, q, args.k, node_budget=args.budget, seed=args.seed)
        doc.update({"seed": args.seed, "budget": args.budget})
        res = heuristic_search(cfg)
        witness, code = res.witness, _exit_for(res.outcome)
        doc["result"] = res.to_dict(args.timings)
    elif args.k is None:
        if p * q > EXACT_LIMIT:
            raise UsageError(f"exact achromatic number is limited to p*q <= {EXACT_LIMIT}; pass --k or --heuristic")
        ach = achromatic_number(p, q)
        witness, code = ach.witness, EXIT_OK
        doc["result"] = ach.to_dict(args.timings)
    else:
        if args.k < 1:
            raise UsageError("--k must be at least 1")
        if p * q > EXACT_LIMIT:
            log.warning("exact search beyond p*q = %d may not finish", EXACT_LIMIT)
        cfg = SearchConfig(p, q, args.k, node_budget=args.budget)
        doc["budget"] = args.budget
        res = exists_colouring(cfg)
        witness, code = res.witness, _exit_for(res.outcome)
        doc["result"] = res.to_dict(args.timings)
    if witness is not None and args.output:
        write_matrix(witness, args.output)
        doc["output"] = str(args.output)
        doc["output_digest"] = digest(render_matrix(witness))
    _emit(doc)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="achrolab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write the 6 x q matrix with 2q + 3 colours (odd q >= 7)")
    c.add_argument("--q", "-q", type=int, required=True)
    c.add_argument("-o", "--output", type=Path)
    c.add_argument("--latex", action="store_true", help="print the matrix as a LaTeX pmatrix")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check that a matrix file is a proper complete colouring")
    v.add_argument("path")
    v.add_argument("--diagnose", action="store_true", help="add the row-structure claim report (p = 6)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="closed-form upper bound (and the K_6 window)")
    b.add_argument("-p", type=int, required=True)
    b.add_argument("-q", type=int, required=True)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="exact or heuristic search for colourings")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-q", type=int, required=True)
    s.add_argument("--k", "-k", type=int)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch and bound (default)")
    mode.add_argument("--heuristic", action="store_true", help="restarted hill climbing")
    s.add_argument("--budget", type=int, default=0, help="node budget (0 = unlimited, exact only)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", type=Path, help="write the witness matrix here when found")
    s.add_argument("--timings", action="store_true", help="include wall-clock times (non-deterministic)")
    s.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"achrolab {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
