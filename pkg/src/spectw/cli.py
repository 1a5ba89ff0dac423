"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 graph too large for the exact oracle.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .bounds import BOUND_NAMES, bounds_report
from .certificates import (
    balanced_separator,
    three_partition,
    verify_theorem1_chain,
    verify_theorem2_chain,
)
from .exact import DEFAULT_LIMIT, HARD_LIMIT, SizeLimitError, exact_tw, to_td, validate_td
from .graph import Family, Graph, GraphFormatError, generate, parse_family, read_graph, stats, to_pace_gr
from .spectrum import eigenvalues

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_TOO_LARGE = 0, 1, 2, 3

ROW_COLUMNS = (
    "name", "n", "m", "max_degree", "lambda2", "lambda_max",
    *BOUND_NAMES, "best_integer", "exact_tw",
    *(f"gap_{b}" for b in BOUND_NAMES), "sound", "error",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- output -------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def render(rows: list[dict], fmt: str, columns=None) -> str:
    """Serialize flat dict rows as json, csv or an aligned text table."""
    columns = list(columns or (rows[0].keys() if rows else []))
    if fmt == "json":
        return json.dumps(rows if len(rows) != 1 else rows[0], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow(["" if r.get(c) is None else repr(r[c]) if isinstance(r[c], float) else r[c]
                             for c in columns])
        return buf.getvalue()
    cells = [[_fmt(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- inputs -------------------------------------------------------------------


def _load(args) -> tuple[str, Graph]:
    if args.family and args.graph:
        raise UsageError("give either a graph file or --family, not both")
    if args.family:
        return args.family, generate(parse_family(args.family))
    if not args.graph:
        raise UsageError("no input graph; pass a file or --family")
    if args.graph == "-":
        from .graph import parse_pace_gr

        return "<stdin>", parse_pace_gr(sys.stdin.read())
    return args.graph, read_graph(args.graph)


def _check_limit(limit: int):
    if not 1 <= limit <= HARD_LIMIT:
        raise UsageError(f"--limit must lie in 1..{HARD_LIMIT}")


def _expand(desc: str, seed: int, count: int) -> list[Family]:
    """Expand ``a..b`` integer ranges in a family descriptor.

    A ``gnp:n,p`` descriptor without a seed takes seeds ``seed .. seed+count-1``.
    """
    name, _, rest = desc.partition(":")
    parts = [p.strip() for p in rest.split(",")] if rest else []
    choices = []
    for p in parts:
        if ".." in p:
            lo, hi = p.split("..")
            choices.append([str(i) for i in range(int(lo), int(hi) + 1)])
        else:
            choices.append([p])
    if name == "gnp" and len(parts) == 2:
        choices.append([str(s) for s in range(seed, seed + count)])
    return [parse_family(f"{name}:" + ",".join(combo)) for combo in itertools.product(*choices)]


# -- rows ---------------------------------------------------------------------


def graph_row(job) -> dict:
    """One comparison row; failures are recorded in the ``error`` column."""
    name, g, limit = job
    row = dict.fromkeys(ROW_COLUMNS)
    row["name"] = name
    try:
        rep = bounds_report(g)
        row.update(n=rep.n, m=rep.m, max_degree=rep.max_degree, lambda2=rep.lambda2,
                   lambda_max=rep.lambda_max, best_integer=rep.best_integer, **rep.bounds)
        if g.n <= limit:
            tw = exact_tw(g, limit=limit).width
            row["exact_tw"] = tw
            for b in BOUND_NAMES:
                if rep.bounds[b] is not None:
                    row[f"gap_{b}"] = tw - rep.bounds[b]
            row["sound"] = rep.best_integer <= tw
    except Exception as exc:  # reported per row, batch continues
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _rows(jobs, n_jobs: int) -> list[dict]:
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            return list(pool.map(graph_row, jobs))
    return [graph_row(j) for j in jobs]


# -- commands -----------------------------------------------------------------


def cmd_bounds(args) -> int:
    name, g = _load(args)
    rep = bounds_report(g)
    if args.format == "json":
        _emit(json.dumps(rep.to_dict(), indent=2) + "\n", args.out)
        return EXIT_OK
    row = {"name": name, "n": rep.n, "m": rep.m, "max_degree": rep.max_degree,
           "lambda2": rep.lambda2, "lambda_max": rep.lambda_max, **rep.bounds,
           "best_integer": rep.best_integer}
    _emit(render([row], args.format), args.out)
    return EXIT_OK


def cmd_exact(args) -> int:
    _check_limit(args.limit)
    name, g = _load(args)
    res = exact_tw(g, limit=args.limit)
    td_text = to_td(res.decomposition, g.n)
    if not validate_td(g, res.decomposition):
        print("internal error: decomposition failed validation", file=sys.stderr)
        return EXIT_FAILED
    if args.out:
        Path(args.out).write_text(td_text)
    if args.format == "json":
        payload = {"name": name, "width": res.width, "elimination_order": list(res.elimination_order)}
        if not args.out:
            payload["td"] = td_text
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write(render([{"name": name, "width": res.width}], "csv"))
    else:
        sys.stdout.write(f"{res.width}\n")
        if not args.out:
            sys.stdout.write(td_text)
    return EXIT_OK


def certify(g: Graph, limit: int = DEFAULT_LIMIT) -> dict:
    """Full certificate: exact decomposition, separator, partition, both chains."""
    spec = eigenvalues(g)
    res = exact_tw(g, limit=limit)
    S = balanced_separator(g, res.decomposition)
    part = three_partition(g, S)
    thm1 = verify_theorem1_chain(g, part, spec)
    thm2 = verify_theorem2_chain(g, part, spec)
    failed = [f"theorem1.{k}" for k in thm1.failed()] + [f"theorem2.{k}" for k in thm2.failed()]
    rep = bounds_report(g, spec)
    return {
        "graph": {"n": g.n, "m": g.m, "max_degree": g.max_degree},
        "spectrum": {"lambda2": spec.lambda2 if g.n >= 2 else None, "lambda_max": spec.lambda_max,
                     "tolerance": spec.tolerance},
        "exact_tw": res.width,
        "decomposition": [sorted(b) for b in res.decomposition.bags],
        "separator": sorted(S),
        "theorem1": thm1.to_dict(),
        "theorem2": thm2.to_dict(),
        "bounds": rep.bounds,
        "failed": failed,
        "passed": not failed,
    }


def cmd_verify(args) -> int:
    _check_limit(args.limit)
    _, g = _load(args)
    cert = certify(g, args.limit)
    _emit(json.dumps(cert, indent=2) + "\n", args.out)
    if not cert["passed"]:
        print("verification failed: " + ", ".join(cert["failed"]), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_family(args) -> int:
    g = generate(parse_family(args.descriptor))
    if args.format == "json":
        st = stats(g)
        text = json.dumps({"family": args.descriptor, "n": st.n, "m": st.m, "max_degree": st.max_degree,
                           "component_count": st.component_count, "edges": [list(e) for e in g.edges]},
                          indent=2) + "\n"
    else:
        text = to_pace_gr(g)
    _emit(text, args.out)
    return EXIT_OK


def _table(args, jobs) -> int:
    rows = _rows(jobs, args.jobs)
    _emit(render(rows, args.format, ROW_COLUMNS), args.out)
    return EXIT_FAILED if any(r["sound"] is False for r in rows) else EXIT_OK


def cmd_compare(args) -> int:
    _check_limit(args.limit)
    fams = [f for d in args.descriptors for f in _expand(d, args.seed, args.count)]
    return _table(args, [(str(f), generate(f), args.limit) for f in fams])


def cmd_batch(args) -> int:
    _check_limit(args.limit)
    files = []
    for p in map(Path, args.paths):
        if p.is_dir():
            files += sorted(q for q in p.iterdir() if q.suffix in (".gr", ".txt", ".edges"))
        else:
            files.append(p)
    jobs, failed_rows = [], []
    for f in files:
        try:
            jobs.append((str(f), read_graph(f), args.limit))
        except (OSError, GraphFormatError) as exc:
            row = dict.fromkeys(ROW_COLUMNS)
            row.update(name=str(f), error=f"{type(exc).__name__}: {exc}")
            failed_rows.append((len(jobs) + len(failed_rows), row))
    for d in args.family or []:
        jobs += [(str(fam), generate(fam), args.limit) for fam in _expand(d, args.seed, args.count)]
    rows = _rows(jobs, args.jobs)
    for idx, row in failed_rows:
        rows.insert(idx, row)
    _emit(render(rows, args.format, ROW_COLUMNS), args.out)
    return EXIT_FAILED if any(r["sound"] is False for r in rows) else EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectw", description="Spectral treewidth lower bounds and certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=("json", "csv", "table"), default="table"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write the report to this path")

    def graph_input(p):
        p.add_argument("graph", nargs="?", help=".gr file, edge list, or '-' for .gr on stdin")
        p.add_argument("--family", help="generated graph, e.g. complete_bipartite:3,5")

    def oracle(p):
        p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="max vertices for the exact oracle")

    def corpus(p):
        p.add_argument("--seed", type=int, default=0, help="first seed for gnp descriptors without one")
        p.add_argument("--count", type=int, default=1, help="number of seeds per seedless gnp descriptor")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("bounds", help="spectral lower bounds")
    graph_input(p)
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exact", help="exact treewidth and a PACE .td decomposition")
    graph_input(p)
    oracle(p)
    common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="certificate for the separator inequalities")
    graph_input(p)
    oracle(p)
    common(p, formats=("json",), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="print a generated graph in .gr format")
    p.add_argument("descriptor")
    common(p, formats=("gr", "json"), default="gr")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("compare", help="bounds vs exact treewidth over family grids (a..b ranges)")
    p.add_argument("descriptors", nargs="+")
    oracle(p)
    corpus(p)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("batch", help="bounds vs exact treewidth over graph files")
    p.add_argument("paths", nargs="*")
    p.add_argument("--family", action="append", help="extra family descriptor (repeatable)")
    oracle(p)
    corpus(p)
    common(p)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, parse errors exit EXIT_USAGE
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (UsageError, GraphFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
