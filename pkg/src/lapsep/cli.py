"""Command line interface.

Vertices are 1-based on the command line and 0-based inside the library.
Every command prints one JSON record (or CSV for ``census --format csv``)::

    {"command": ..., "inputs": {...}, "results": {...}, "elapsed_ms": ...}

Exit codes: 0 success / Separable, 1 Entangled or failed verification,
2 Undetermined, 64 usage or input error, 70 internal error (a self-check
failed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import counting
from .criteria import EmptyGraphError, Kind, classify
from .graph_core import (
    LabeledGraph,
    graph_from_edges,
    laplacian,
    normalize_edge,
    parse_graph_text,
    parse_hex_mask,
)
from .matrix_core import row_sums
from .tensor_ops import FactorShape, block_pattern, partial_transpose

EXIT_OK = 0
EXIT_ENTANGLED = 1
EXIT_FAILED = 1
EXIT_UNDETERMINED = 2
EX_USAGE = 64
EX_SOFTWARE = 70

VERDICT_EXIT = {
    Kind.SEPARABLE: EXIT_OK,
    Kind.ENTANGLED: EXIT_ENTANGLED,
    Kind.UNDETERMINED: EXIT_UNDETERMINED,
}

CENSUS_CSV_COLUMNS = (
    "p",
    "q",
    "total",
    "thm3_count",
    "ptzero_count",
    "ppt_count",
    "pattern_deg1_count",
    "separable_count",
    "entangled_count",
    "undetermined_count",
    "separable_exact",
    "entangled_exact",
    "ls_lower",
    "le_lower",
    "ls_upper",
    "le_upper",
    "mask_lo",
    "mask_hi",
    "complete",
    "elapsed_ms",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which collides with Undetermined
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _s(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render_json(record: dict) -> str:
    return json.dumps(record, indent=2, ensure_ascii=False) + "\n"


def _record(command: str, inputs: dict, results: dict, started: float, timing: bool) -> dict:
    return {
        "command": command,
        "inputs": {k: _s(v) for k, v in inputs.items() if v is not None},
        "results": {k: _s(v) for k, v in results.items() if v is not None},
        "elapsed_ms": round((time.perf_counter() - started) * 1000) if timing else 0,
    }


# -- input parsing ---------------------------------------------------------------


def parse_edges_arg(n: int, text: str) -> LabeledGraph:
    """Parse ``"u v,u v,..."`` with 1-based vertices."""
    edges = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split()
        if len(parts) != 2:
            raise UsageError(f"malformed edge {item!r}; expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise UsageError(f"malformed edge {item!r}; vertices must be integers") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise UsageError(f"edge {item!r} has a vertex outside 1..{n}")
        edges.append(normalize_edge(u - 1, v - 1))
    try:
        return graph_from_edges(n, edges)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_graph(args, n: int) -> LabeledGraph:
    try:
        if args.edges is not None:
            return parse_edges_arg(n, args.edges)
        if args.mask is not None:
            return LabeledGraph(n, parse_hex_mask(args.mask))
        g = parse_graph_text(Path(args.graph_file).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read graph file: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if g.n != n:
        raise UsageError(f"graph has {g.n} vertices but p*q = {n}")
    return g


def _shape(p: int, q: int) -> FactorShape:
    try:
        return FactorShape(p, q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_range(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    try:
        lo, hi = text.split(":")
        return int(lo, 0), int(hi, 0)
    except ValueError:
        raise UsageError(f"bad --range {text!r}; expected LO:HI") from None


# -- commands --------------------------------------------------------------------


def cmd_classify(args) -> tuple[dict, int]:
    started = time.perf_counter()
    shape = _shape(args.p, args.q)
    g = _read_graph(args, shape.n)
    try:
        verdict = classify(g, shape)
    except EmptyGraphError as exc:
        raise UsageError(str(exc)) from None
    a = laplacian(g)
    pattern = block_pattern(a, shape)
    results = {
        "verdict": verdict.kind.value,
        "certificate": verdict.certificate.value,
        "mask": f"{g.edges:x}",
        "edges": g.edge_count,
        "pt_row_sums": " ".join(map(str, row_sums(partial_transpose(a, shape)))),
    }
    for i in range(shape.p):
        for j in range(i + 1, shape.p):
            results[f"lss_{i + 1}_{j + 1}"] = not pattern.bits[i][j]
    inputs = {"p": args.p, "q": args.q, "edges": args.edges, "mask": args.mask, "graph_file": args.graph_file}
    return _record("classify", inputs, results, started, args.timing), VERDICT_EXIT[verdict.kind]


def _census_results(report: counting.CensusReport) -> dict:
    results = report.as_dict()
    try:
        b = counting.bounds(report.p, report.q)
    except counting.CapExceeded:
        b = None
    if b is not None:
        results.update(ls_lower=b.ls_lower, le_lower=b.le_lower, ls_upper=b.ls_upper, le_upper=b.le_upper)
    results["check_thm3_le_ptzero"] = report.thm3_count <= report.ptzero_count
    if report.ppt_count is not None:
        results["check_thm3_le_ppt"] = report.thm3_count <= report.ppt_count
    results["check_pattern_deg1_entangled"] = report.pattern_deg1_ptzero == 0
    if report.complete and b is not None:
        results["check_lower_bounds_sum"] = b.ls_lower + b.le_lower <= b.total
        results["check_thm3_eq_ls_lower"] = report.thm3_count == b.ls_lower
        results["check_pattern_deg1_eq_le_lower"] = report.pattern_deg1_count == b.le_lower
    if report.separable_exact is not None and report.complete:
        results["check_identity"] = report.separable_exact + report.entangled_exact == counting.count_L(report.p * report.q)
    return results


def cmd_census(args) -> tuple[dict, int]:
    started = time.perf_counter()
    _shape(args.p, args.q)
    workers = counting.resolve_workers(args.workers)
    try:
        report = counting.census(
            args.p, args.q, workers=workers, skip_ppt=args.skip_ppt, mask_range=_parse_range(args.range)
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inputs = {"p": args.p, "q": args.q, "workers": workers, "skip_ppt": args.skip_ppt, "range": args.range}
    record = _record("census", inputs, _census_results(report), started, args.timing)
    failed = any(v == "false" for k, v in record["results"].items() if k.startswith("check_"))
    return record, EX_SOFTWARE if failed else EXIT_OK


def cmd_count(args) -> tuple[dict, int]:
    started = time.perf_counter()
    code = EXIT_OK
    try:
        if args.what == "ns":
            ns, ne = counting.count_ns(args.n)
            inputs, results = {"n": args.n}, {"N_s": ns, "N_e": ne}
        elif args.what == "mni":
            brute = counting.count_mni(args.n, args.i)
            closed = counting.mni_closed_forms(args.n, args.i)
            inputs = {"n": args.n, "i": args.i}
            results = {"M": brute, "closed_form": closed}
            if closed is not None:
                results["closed_form_agrees"] = closed == brute
                if closed != brute:
                    code = EX_SOFTWARE
        else:
            ls, le = counting.exact_ls_2q(args.q)
            inputs, results = {"q": args.q}, {"L_s": ls, "L_e": le, "L": counting.count_L(2 * args.q)}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _record(f"count {args.what}", inputs, results, started, args.timing), code


def cmd_bounds(args) -> tuple[dict, int]:
    started = time.perf_counter()
    try:
        b = counting.bounds(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _record("bounds", {"p": args.p, "q": args.q}, b.as_dict(), started, args.timing), EXIT_OK


def _parse_inject(items: Sequence[str]) -> dict[tuple[int, int], int]:
    out = {}
    for item in items:
        try:
            cell, value = item.split("=")
            n, i = cell.split(",")
            out[int(n), int(i)] = int(value)
        except ValueError:
            raise UsageError(f"bad --inject {item!r}; expected N,I=VALUE") from None
    return out


def verify_table1(max_n: int = 8, expected: Optional[dict[tuple[int, int], int]] = None) -> dict[tuple[int, int], tuple[int, int]]:
    """Recompute each tabulated M_n(i) with n <= max_n; returns {(n, i): (expected, computed)}."""
    expected = counting.TABLE1 if expected is None else expected
    return {
        (n, i): (want, counting.count_mni(n, i))
        for (n, i), want in sorted(expected.items())
        if 2 <= n <= max_n
    }


def cmd_verify_table1(args) -> tuple[dict, int]:
    started = time.perf_counter()
    expected = dict(counting.TABLE1)
    expected.update(_parse_inject(args.inject))
    cells = verify_table1(args.max_n, expected)
    results = {}
    failed = 0
    for (n, i), (want, got) in cells.items():
        ok = want == got
        failed += not ok
        status = "PASS" if ok else f"FAIL expected={want} got={got}"
        results[f"M_{n}({i})"] = status
        print(f"{'PASS' if ok else 'FAIL'} n={n} i={i} expected={want} got={got}", file=sys.stderr)
    results["cells"] = len(cells)
    results["passed"] = len(cells) - failed
    results["failed"] = failed
    inputs = {"max_n": args.max_n, "inject": ",".join(args.inject) or None}
    return _record("verify-table1", inputs, results, started, args.timing), EXIT_FAILED if failed else EXIT_OK


# -- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lapsep", description="Separability of graph Laplacians as density matrices.")
    parser.add_argument("--no-timing", dest="timing", action="store_false", help="report elapsed_ms as 0")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify one graph under C^p (x) C^q")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--edges", help='1-based edge list, e.g. "1 2,2 3"')
    src.add_argument("--mask", help="edge bitmask in hex")
    src.add_argument("--graph-file", help="graph text file ('n <count>' then 'u v' lines or 'mask <hex>')")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser(
        "census",
        help="classify every nonempty graph on pq vertices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="CSV columns (one header row, one data row):\n  " + ",".join(CENSUS_CSV_COLUMNS),
    )
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--workers", type=int, help="worker processes (default: CPU count, capped by LAPSEP_MAX_WORKERS)")
    c.add_argument("--skip-ppt", action="store_true", help="omit the PSD column")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--range", help="restrict to masks LO:HI (half-open; decimal or 0x-hex)")
    c.set_defaults(func=cmd_census)

    c = sub.add_parser("count", help="exact counts")
    csub = c.add_subparsers(dest="what", required=True, parser_class=_Parser)
    x = csub.add_parser("ns", help="N_s(n), N_e(n)")
    x.add_argument("--n", type=int, required=True)
    x = csub.add_parser("mni", help="M_n(i), brute force and closed form")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--i", type=int, required=True)
    x = csub.add_parser("ls2q", help="L_s(2,q), L_e(2,q)")
    x.add_argument("--q", type=int, required=True)
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("bounds", help="lower and upper bounds on L_s, L_e")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("verify-table1", help="recompute the published M_n(i) table")
    c.add_argument("--max-n", type=int, default=8)
    c.add_argument("--inject", action="append", default=[], metavar="N,I=VALUE", help="override an expected cell (test mode)")
    c.set_defaults(func=cmd_verify_table1)
    return parser


def _render_csv(record: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CENSUS_CSV_COLUMNS)
    row = dict(record["results"], elapsed_ms=str(record["elapsed_ms"]))
    w.writerow([row.get(col, "") for col in CENSUS_CSV_COLUMNS])
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, code = args.func(args)
    except UsageError as exc:
        print(f"lapsep: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except counting.CapExceeded as exc:
        print(f"lapsep: error: {exc}", file=sys.stderr)
        return EX_USAGE
    if getattr(args, "format", "json") == "csv":
        sys.stdout.write(_render_csv(record))
    else:
        sys.stdout.write(render_json(record))
    return code


if __name__ == "__main__":
    sys.exit(main())
