"""Command-line front end: ``setwise-ekr <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 a checked property fails,
3 the request is unsupported or the search is undecided.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import brute
from .certify import (
    CERTIFIED,
    FAILED,
    SUPPORTED_K,
    TABLE_ROWS,
    Unsupported,
    certify,
    character_grid,
    choose_scheme,
    route,
)
from .partitions import EVEN, ODD, format_partition
from .schemes import SCHEMA_VERSION, full_spectrum
from .weights import feasibility_search

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, payload: dict, human: str) -> None:
    """Write JSON to the --json target and the human text to stdout."""
    if args.json is None:
        print(human)
        return
    text = json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True)
    if args.json == "-":
        print(text)
    else:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
        print(human)


def _check_nk(n: int, k: int) -> None:
    route(n, k)  # raises Unsupported


# ---------------------------------------------------------------------------

def cmd_certify(args) -> int:
    _check_nk(args.n, args.k)
    cert = certify(args.n, args.k, workers=args.threads)
    _emit(args, cert.to_json(), cert.summary())
    return _status_code(cert.status)


def _status_code(status: str) -> int:
    return {CERTIFIED: EXIT_OK, FAILED: EXIT_VIOLATION}.get(status, EXIT_UNSUPPORTED)


def _scheme(args):
    if args.search:
        result = feasibility_search(args.n, args.k, even_only=args.search == "even")
        return result.scheme, "lp_search", result.to_json()
    scheme, provenance, _, search = choose_scheme(args.n, args.k)
    return scheme, provenance, search


def cmd_spectrum(args) -> int:
    _check_nk(args.n, args.k)
    scheme, provenance, search = _scheme(args)
    if scheme is None:
        _emit(args, {"status": "undecided", "search": search}, f"no scheme: search {search['status']}")
        return EXIT_UNSUPPORTED
    spec = full_spectrum(scheme, workers=args.threads)
    ordered = sorted(spec.values.items(), key=lambda item: item[1])
    lines = [f"spectrum of the {provenance} scheme for n={args.n} k={args.k} ({len(ordered)} shapes)"]
    show = ordered if len(ordered) <= 2 * args.limit else ordered[: args.limit] + [None] + ordered[-args.limit:]
    for item in show:
        lines.append("  ..." if item is None else f"  [{format_partition(item[0])}]  {item[1]}")
    payload = spec.to_json()
    payload["scheme_provenance"] = provenance
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_chartab(args) -> int:
    try:
        rows, cols, values = character_grid(args.case, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    width = max(len(format_partition(c)) for c in cols) + 2
    head = " " * 16 + "".join(f"{format_partition(c):>{width}}" for c in cols)
    body = [f"{format_partition(r):<16}" + "".join(f"{v:>{width}}" for v in vals) for r, vals in zip(rows, values)]
    payload = {
        "case": args.case,
        "n": args.n,
        "classes": [list(c) for c in cols],
        "rows": [{"shape": list(r), "values": vals} for r, vals in zip(rows, values)],
    }
    _emit(args, payload, "\n".join([head] + body))
    return EXIT_OK


def cmd_weights(args) -> int:
    _check_nk(args.n, args.k)
    scheme, provenance, search = _scheme(args)
    payload = {"n": args.n, "k": args.k, "scheme_provenance": provenance, "search": search,
               "weights": scheme.to_json() if scheme else None}
    if scheme is None:
        _emit(args, payload, f"no scheme: search {search['status']} ({search['message']})")
        return EXIT_UNSUPPORTED
    lines = [f"weights for n={args.n} k={args.k} via {provenance}"]
    lines += [f"  ({format_partition(c)})  {w}" for c, w in scheme.entries]
    lines.append(f"  row sum {scheme.row_sum()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_brute(args) -> int:
    try:
        graph = brute.build_graph(args.group, args.n, args.k, cap=args.cap, override=args.override)
    except brute.CapExceeded as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    witness = brute.max_coclique(graph)
    stab = brute.stabilizer_order(args.group, args.n, args.k)
    density = Fraction(witness.size, stab)
    payload = {
        "group": args.group, "n": args.n, "k": args.k, "order": graph.order, "degree": graph.degree(),
        "alpha": witness.size, "stabilizer_order": stab, "density": str(density),
        "is_canonical": witness.is_canonical,
    }
    if args.witness:
        payload["witness"] = witness.to_json()["members"]
    lines = [
        f"{args.group.capitalize()}({args.n}) on {args.k}-subsets: {graph.order} vertices, degree {graph.degree()}",
        f"  alpha = {witness.size}, stabilizer order {stab}, density {density}",
        f"  witness is {'canonical' if witness.is_canonical else 'not canonical'}",
    ]
    if args.witness:
        lines += ["  " + " ".join(str(i + 1) for i in p) for p in witness.members]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _sweep_one(job):
    n, k = job
    start = time.perf_counter()
    cert = certify(n, k)
    return cert, time.perf_counter() - start


def _case(n: int, k: int, provenance: str) -> str:
    if provenance == "lp_search":
        return "small"
    return EVEN if n % 2 == 0 else ODD


def cmd_sweep(args) -> int:
    if args.k not in SUPPORTED_K:
        raise UsageError(f"k must be one of {SUPPORTED_K}")
    if args.n_from > args.n_to:
        raise UsageError("--n-from exceeds --n-to")
    if args.n_from < 2 * args.k + 1:
        print(f"unsupported: n={args.n_from} is below 2k+1", file=sys.stderr)
        return EXIT_UNSUPPORTED
    jobs = [(n, args.k) for n in range(args.n_from, args.n_to + 1)]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    lines = [f"{'n':>4} {'case':<6} {'route':<10} {'status':<10} {'max':>12} {'min':>5} {'sym_bound':>22} {'alt_bound':>22} {'sec':>6}"]
    rows = []
    for cert, secs in results:
        case = _case(cert.n, cert.k, cert.provenance)
        rows.append({"n": cert.n, "k": cert.k, "case": case, "route": cert.provenance, "status": cert.status,
                     "max_eig": _s(cert.max_eig), "multiplicity": cert.multiplicity, "min_eig": _s(cert.min_eig),
                     "min_attained_at": [list(lam) for lam in cert.min_attained_at],
                     "sym_bound": cert.sym_bound, "alt_bound": cert.alt_bound, "failures": cert.failures})
        lines.append(f"{cert.n:>4} {case:<6} {cert.provenance:<10} {cert.status:<10} {_s(cert.max_eig) or '-':>12} "
                     f"{_s(cert.min_eig) or '-':>5} {cert.sym_bound or '-':>22} {cert.alt_bound or '-':>22} {secs:>6.1f}")
    codes = [_status_code(cert.status) for cert, _ in results]
    worst = EXIT_VIOLATION if EXIT_VIOLATION in codes else max(codes)
    lines.append(f"{sum(c == EXIT_OK for c in codes)}/{len(codes)} certified")
    _emit(args, {"k": args.k, "n_from": args.n_from, "n_to": args.n_to, "results": rows}, "\n".join(lines))
    return worst


def _s(x):
    return None if x is None else str(x)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="setwise-ekr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="emit JSON (to stdout, or to PATH)")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1,
                        help="worker processes (results do not depend on it)")

    nk = _Parser(add_help=False)
    nk.add_argument("--n", type=int, required=True)
    nk.add_argument("--k", type=int, required=True)

    search = _Parser(add_help=False)
    search.add_argument("--search", nargs="?", const="even", choices=("even", "all"), default=None,
                        help="use the LP search instead of the routed scheme (classes: even only, or all)")

    p = sub.add_parser("certify", parents=[common, nk], help="certify (n, k)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("spectrum", parents=[common, nk, search], help="eigenvalue for every shape")
    p.add_argument("--limit", type=_positive, default=10, help="shapes shown at each end in text mode")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("chartab", parents=[common], help="character grid of a closed-form case")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--case", required=True, choices=sorted(TABLE_ROWS))
    p.set_defaults(func=cmd_chartab)

    p = sub.add_parser("weights", parents=[common, nk, search], help="weights for (n, k)")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("brute", parents=[common], help="exact maximum coclique on a small group")
    p.add_argument("--group", required=True, choices=(brute.SYM, brute.ALT))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=_positive, default=brute.DEFAULT_CAP, help="largest group order accepted")
    p.add_argument("--override", action="store_true", help="allow groups above order 2520 (Sym(7))")
    p.add_argument("--witness", action="store_true", help="list the coclique members")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("sweep", parents=[common], help="certify a range of n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
