"""Command-line interface: ``oddgirth gen|analyze|scan|table|certify``.

Exit codes: 0 success, 1 some inputs failed, 2 usage, 3 I/O, 4 precondition.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from oddgirth import __version__
from oddgirth.errors import Graph6Error, InvalidParameter, NotApplicable
from oddgirth.graph import Graph, connected_components
from oddgirth.graph6 import parse_graph6, write_graph6
from oddgirth.harness import (
    DEFAULT_MAX_N,
    Task,
    UsageError,
    atomic_write,
    default_cache_path,
    leaderboard_csv,
    leaderboard_json,
    parse_generator_spec,
    records_to_csv,
    render_table_csv,
    render_table_text,
    run_tasks,
    scan_directory,
    table_rows,
    tasks_from_file,
)
from oddgirth.interlacing import (
    build_quotient,
    check_interlacing,
    girth7_certificate,
    lemma35_check,
)
from oddgirth.spectral import spectral_ratio

EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, EXIT_IO, EXIT_PRECONDITION = 0, 1, 2, 3, 4

log = logging.getLogger("oddgirth")


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _odd_k(s: str) -> int:
    v = int(s)
    if v < 3 or v % 2 == 0:
        raise argparse.ArgumentTypeError(f"expected an odd integer >= 3, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddgirth", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated graph as one graph6 line")
    g.add_argument("spec", help="cycle:<k> | complete:<n> | hypercube:<d> | foldedcube:<d> | cayleyf2:<m>:<hex,...>")
    g.add_argument("-o", "--output", type=Path, help="output file (default: stdout)")

    a = sub.add_parser("analyze", help="spectral ratio, odd girth and bound per graph")
    a.add_argument("input", help="graph6 file or generator spec")
    a.add_argument("--format", choices=("json", "csv"), default="json")
    a.add_argument("-o", "--output", type=Path)
    a.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    a.add_argument("--jobs", type=_positive_int, default=None)

    s = sub.add_parser("scan", help="rank a directory of graph6 files by ratio per odd girth")
    s.add_argument("directory", type=Path)
    s.add_argument("--min-girth", type=int, default=3)
    s.add_argument("--top", type=_positive_int, default=None)
    s.add_argument("--format", choices=("json", "csv"), default="json", help="stdout format when no --output")
    s.add_argument("-o", "--output", type=Path, help="write <output>.json and <output>.csv")
    s.add_argument("--cache", type=Path, default=None, help="record cache (default: $ODDGIRTH_CACHE_DIR/scan-cache.jsonl)")
    s.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    s.add_argument("--jobs", type=_positive_int, default=None)

    t = sub.add_parser("table", help="bounds on the ratio for each odd girth up to k_max")
    t.add_argument("k_max", type=_odd_k, nargs="?", default=15)
    t.add_argument("--format", choices=("text", "csv", "json"), default="text")
    t.add_argument("-o", "--output", type=Path)

    c = sub.add_parser("certify", help="emit a JSON certificate for a graph")
    c.add_argument("input", help="graph6 file or generator spec")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--partition", help="interlacing certificate for classes like '0,1,2|3,4'")
    mode.add_argument("--set", dest="vertex_set", help="independent-set certificate for vertices like '0,2'")
    c.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    c.add_argument("-o", "--output", type=Path)
    return p


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        atomic_write(output, text)


def _input_tasks(source: str) -> list[Task]:
    path = Path(source)
    if path.exists():
        return tasks_from_file(path)
    if ":" in source:
        return [Task(source, graph=parse_generator_spec(source))]
    raise UsageError(f"{source!r} is neither a readable file nor a generator spec")


def cmd_gen(args) -> int:
    g = parse_generator_spec(args.spec)
    line = write_graph6(g) + "\n"
    if args.output is None:
        sys.stdout.write(line)
        print(f"n={g.n} edges={g.edge_count}", file=sys.stderr)
    else:
        atomic_write(args.output, line)
        print(f"n={g.n} edges={g.edge_count}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    outcomes = run_tasks(_input_tasks(args.input), max_n=args.max_n, jobs=args.jobs)
    records = [o.record for o in outcomes if o.record is not None]
    for o in outcomes:
        if o.error:
            print(f"{o.graph_id}: {o.error}", file=sys.stderr)
    if args.format == "json":
        text = "".join(r.to_json() + "\n" for r in records)
    else:
        text = records_to_csv(records)
    _emit(text, args.output)
    return EXIT_PARTIAL if len(records) < len(outcomes) else EXIT_OK


def cmd_scan(args) -> int:
    if not args.directory.is_dir():
        print(f"cannot read directory {args.directory}", file=sys.stderr)
        return EXIT_IO
    cache = args.cache or default_cache_path()
    res = scan_directory(args.directory, args.min_girth, args.top, cache, args.max_n, args.jobs)
    for f in res.failures:
        print(f"{f.graph_id}: {f.error}", file=sys.stderr)
    js = leaderboard_json(res, args.min_girth, args.top)
    cs = leaderboard_csv(res)
    if args.output is not None:
        atomic_write(args.output.with_name(args.output.name + ".json"), js)
        atomic_write(args.output.with_name(args.output.name + ".csv"), cs)
    else:
        sys.stdout.write(js if args.format == "json" else cs)
    return EXIT_PARTIAL if res.failures else EXIT_OK


def cmd_table(args) -> int:
    if args.format == "text":
        text = render_table_text(args.k_max)
    elif args.format == "csv":
        text = render_table_csv(args.k_max)
    else:
        text = json.dumps(table_rows(args.k_max), indent=2) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def _parse_vertex_list(s: str) -> list[int]:
    try:
        return [int(tok) for tok in s.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"bad vertex list {s!r}") from exc


def _max_ratio_component(g: Graph) -> tuple[Graph, Optional[list[int]]]:
    comps = connected_components(g)
    if len(comps) <= 1:
        return g, None
    best = max(comps, key=lambda c: spectral_ratio(g.subgraph(c)))
    return g.subgraph(best), best


def _certify_one(task: Task, args) -> tuple[dict, int]:
    try:
        g = task.graph if task.graph is not None else parse_graph6(task.text)
        if g.n > args.max_n:
            raise InvalidParameter(f"n={g.n} exceeds --max-n {args.max_n}")
        if args.partition is not None:
            classes = [_parse_vertex_list(c) for c in args.partition.split("|")]
            cert = check_interlacing(g, build_quotient(g, classes))
            component = None
        elif args.vertex_set is not None:
            cert = lemma35_check(g, _parse_vertex_list(args.vertex_set))
            component = None
        else:
            h, component = _max_ratio_component(g)
            cert = girth7_certificate(h)
    except (InvalidParameter, NotApplicable, Graph6Error, UsageError) as exc:
        return {"graph_id": task.graph_id, "error": type(exc).__name__, "reason": str(exc)}, EXIT_PRECONDITION
    out = {"graph_id": task.graph_id, **cert.to_dict()}
    if component is not None:
        out["component"] = component
    code = EXIT_OK if cert.valid else EXIT_PRECONDITION
    return out, code


def cmd_certify(args) -> int:
    tasks = _input_tasks(args.input)
    code = EXIT_OK
    lines = []
    for t in tasks:
        doc, c = _certify_one(t, args)
        lines.append(json.dumps(doc) + "\n")
        code = max(code, c)
    _emit("".join(lines), args.output)
    return code


COMMANDS = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "scan": cmd_scan,
    "table": cmd_table,
    "certify": cmd_certify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
