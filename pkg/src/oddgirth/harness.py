"""Per-graph analysis records, corpus scanning and the bounds table.

Everything here sits on top of the math modules; the command-line front end
in :mod:`oddgirth.cli` only parses arguments and formats output.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from oddgirth import __version__
from oddgirth.bounds import best_upper_bound, gamma_table
from oddgirth.errors import CapacityExceeded, InvalidParameter
from oddgirth.graph import (
    Graph,
    OddGirth,
    connected_components,
    generate_cayley_f2,
    generate_complete,
    generate_cycle,
    generate_folded_cube,
    generate_hypercube,
    odd_girth,
)
from oddgirth.graph6 import parse_graph6, read_graph6_lines
from oddgirth.spectral import adjacency_spectrum, signless_laplacian_spectrum

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 4096
SOUNDNESS_TOL = 1e-9
CACHE_ENV = "ODDGIRTH_CACHE_DIR"
CACHE_FILENAME = "scan-cache.jsonl"


class UsageError(ValueError):
    """Bad command-line level input such as an unknown generator spec."""


def parse_generator_spec(spec: str) -> Graph:
    """Build a graph from ``cycle:k``, ``complete:n``, ``hypercube:d``,
    ``foldedcube:d`` or ``cayleyf2:m:g1,g2,...`` (generators in hex)."""
    parts = spec.strip().split(":")
    name = parts[0].lower()
    try:
        if name in ("cycle", "complete", "hypercube", "foldedcube") and len(parts) == 2:
            arg = int(parts[1])
            ctor = {
                "cycle": generate_cycle,
                "complete": generate_complete,
                "hypercube": generate_hypercube,
                "foldedcube": generate_folded_cube,
            }[name]
            return ctor(arg)
        if name == "cayleyf2" and len(parts) == 3:
            m = int(parts[1])
            gens = [int(tok, 16) for tok in parts[2].split(",") if tok.strip()]
            return generate_cayley_f2(m, gens)
    except (ValueError, InvalidParameter) as exc:
        raise UsageError(f"bad generator spec {spec!r}: {exc}") from exc
    raise UsageError(
        f"unknown generator spec {spec!r}; expected cycle:<k>, complete:<n>, "
        "hypercube:<d>, foldedcube:<d> or cayleyf2:<m>:<hex,...>"
    )


@dataclass
class AnalysisRecord:
    """Spectral summary of one graph.

    For a disconnected graph the numbers describe the component with the
    largest ratio, which dominates the ratio of the whole graph.
    """

    graph_id: str
    n: int
    edge_count: int
    odd_girth: OddGirth
    lambda1: float
    lambdan: float
    ratio: float
    qn: float
    bound_for_girth: float
    sound: bool
    disconnected: bool = False
    components: int = 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["odd_girth"] = self.odd_girth.to_json()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisRecord":
        d = dict(d)
        d["odd_girth"] = OddGirth.from_json(d["odd_girth"])
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


RECORD_FIELDS = [f.name for f in fields(AnalysisRecord)]


def _component_stats(h: Graph):
    sp = adjacency_spectrum(h)
    l1, ln = sp.largest, sp.smallest
    return l1, ln, (l1 + ln) / h.n


def analyze_graph(g: Graph, graph_id: str, max_n: int = DEFAULT_MAX_N) -> AnalysisRecord:
    if g.n == 0:
        raise InvalidParameter("graph has no vertices")
    if g.n > max_n:
        raise CapacityExceeded(f"n={g.n} exceeds the dense eigensolver cap {max_n}")
    comps = connected_components(g)
    if len(comps) == 1:
        h = g
        l1, ln, ratio = _component_stats(h)
    else:
        best = None
        for comp in comps:
            sub = g.subgraph(comp)
            stats = _component_stats(sub)
            if best is None or stats[2] > best[1][2]:
                best = (sub, stats)
        h, (l1, ln, ratio) = best
    og = odd_girth(h)
    qn = signless_laplacian_spectrum(h).smallest
    bound = best_upper_bound(og).value
    return AnalysisRecord(
        graph_id=graph_id,
        n=h.n,
        edge_count=h.edge_count,
        odd_girth=og,
        lambda1=l1,
        lambdan=ln,
        ratio=ratio,
        qn=qn,
        bound_for_girth=bound,
        sound=bool(ratio <= bound + SOUNDNESS_TOL),
        disconnected=len(comps) > 1,
        components=len(comps),
    )


@dataclass
class Task:
    graph_id: str
    text: Optional[str] = None  # graph6 line
    graph: Optional[Graph] = None


@dataclass
class Outcome:
    graph_id: str
    record: Optional[AnalysisRecord] = None
    error: Optional[str] = None


def _run_task(task: Task, max_n: int) -> Outcome:
    try:
        g = task.graph if task.graph is not None else parse_graph6(task.text)
        return Outcome(task.graph_id, analyze_graph(g, task.graph_id, max_n))
    except (ValueError, ArithmeticError) as exc:
        return Outcome(task.graph_id, error=f"{type(exc).__name__}: {exc}")


def run_tasks(
    tasks: Sequence[Task],
    max_n: int = DEFAULT_MAX_N,
    jobs: Optional[int] = None,
    worker: Callable[[Task, int], Outcome] = _run_task,
) -> list[Outcome]:
    """Analyse tasks in a bounded thread pool; results come back in input order."""
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t, max_n) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: worker(t, max_n), tasks))


def tasks_from_file(path: Path) -> list[Task]:
    with open(path, encoding="utf-8") as fh:
        return [Task(f"{path.name}:{lineno}", text) for lineno, text in read_graph6_lines(fh)]


# --- output helpers ---------------------------------------------------------


def records_to_csv(records: Iterable[AnalysisRecord], extra: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(extra) + RECORD_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = rec.to_dict() if isinstance(rec, AnalysisRecord) else rec
        writer.writerow({k: row.get(k) for k in writer.fieldnames})
    return buf.getvalue()


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- scan -------------------------------------------------------------------


def cache_key(graph6_line: str) -> str:
    return hashlib.sha256(f"{__version__}\n{graph6_line}".encode()).hexdigest()


class RecordCache:
    """graph6 content hash -> record (without graph_id), stored as JSON lines."""

    def __init__(self, path: Optional[Path]):
        self.path = Path(path) if path else None
        self.entries: dict[str, dict] = {}
        self.dirty = False
        if self.path and self.path.exists():
            self._load()

    def _load(self):
        try:
            with open(self.path, encoding="utf-8") as fh:
                header = json.loads(fh.readline() or "{}")
                if header.get("version") != __version__:
                    log.info("cache %s is for version %s; ignoring", self.path, header.get("version"))
                    return
                for line in fh:
                    entry = json.loads(line)
                    self.entries[entry["key"]] = entry["record"]
        except (OSError, ValueError, KeyError) as exc:
            log.warning("ignoring unreadable cache %s: %s", self.path, exc)
            self.entries = {}

    def get(self, line: str, graph_id: str) -> Optional[AnalysisRecord]:
        rec = self.entries.get(cache_key(line))
        if rec is None:
            return None
        return AnalysisRecord.from_dict({**rec, "graph_id": graph_id})

    def put(self, line: str, record: AnalysisRecord) -> None:
        d = record.to_dict()
        d.pop("graph_id")
        self.entries[cache_key(line)] = d
        self.dirty = True

    def save(self) -> None:
        if not self.path or not self.dirty:
            return
        lines = [json.dumps({"version": __version__})]
        lines += [json.dumps({"key": k, "record": v}) for k, v in sorted(self.entries.items())]
        atomic_write(self.path, "\n".join(lines) + "\n")


def default_cache_path() -> Optional[Path]:
    d = os.environ.get(CACHE_ENV)
    return Path(d) / CACHE_FILENAME if d else None


@dataclass
class ScanResult:
    records: list[AnalysisRecord]
    failures: list[Outcome]
    skipped_files: list[str]
    leaderboard: list[tuple[OddGirth, list[AnalysisRecord]]]


def _rank_key(rec: AnalysisRecord):
    return (-rec.ratio, rec.graph_id)


def build_leaderboard(records: Iterable[AnalysisRecord], min_girth: int = 3, top: Optional[int] = None):
    classes: dict[OddGirth, list[AnalysisRecord]] = {}
    for rec in records:
        if rec.odd_girth.at_least(min_girth):
            classes.setdefault(rec.odd_girth, []).append(rec)
    board = []
    for og in sorted(classes):
        ranked = sorted(classes[og], key=_rank_key)
        board.append((og, ranked[:top] if top else ranked))
    return board


def scan_directory(
    directory: Path,
    min_girth: int = 3,
    top: Optional[int] = None,
    cache_path: Optional[Path] = None,
    max_n: int = DEFAULT_MAX_N,
    jobs: Optional[int] = None,
) -> ScanResult:
    directory = Path(directory)
    tasks: list[Task] = []
    skipped: list[str] = []
    for path in sorted(p for p in directory.iterdir() if p.is_file() and not p.name.startswith(".")):
        try:
            tasks.extend(tasks_from_file(path))
        except (OSError, UnicodeDecodeError) as exc:
            log.warning("skipping unreadable file %s: %s", path, exc)
            skipped.append(path.name)

    cache = RecordCache(cache_path)
    pending = []
    results: dict[int, Outcome] = {}
    for i, t in enumerate(tasks):
        hit = cache.get(t.text, t.graph_id)
        if hit is not None:
            results[i] = Outcome(t.graph_id, hit)
        else:
            pending.append(i)
    computed = run_tasks([tasks[i] for i in pending], max_n=max_n, jobs=jobs)
    for i, out in zip(pending, computed):
        results[i] = out
        if out.record is not None:
            cache.put(tasks[i].text, out.record)
    cache.save()

    outcomes = [results[i] for i in range(len(tasks))]
    records = [o.record for o in outcomes if o.record is not None]
    failures = [o for o in outcomes if o.record is None]
    return ScanResult(records, failures, skipped, build_leaderboard(records, min_girth, top))


def leaderboard_rows(board) -> list[dict]:
    rows = []
    for og, recs in board:
        for rank, rec in enumerate(recs, start=1):
            rows.append({"rank": rank, **rec.to_dict()})
    return rows


def leaderboard_json(result: ScanResult, min_girth: int, top: Optional[int]) -> str:
    doc = {
        "tool_version": __version__,
        "min_girth": min_girth,
        "top": top,
        "classes": [
            {"odd_girth": og.to_json(), "entries": [r.to_dict() for r in recs]}
            for og, recs in result.leaderboard
        ],
        "failures": [{"graph_id": f.graph_id, "error": f.error} for f in result.failures],
        "skipped_files": result.skipped_files,
    }
    return json.dumps(doc, indent=2) + "\n"


def leaderboard_csv(result: ScanResult) -> str:
    return records_to_csv(leaderboard_rows(result.leaderboard), extra=("rank",))


# --- table ------------------------------------------------------------------


def round_outward(value: float, is_upper: bool, places: int = 4) -> Decimal:
    """Round an upper bound up and a lower bound down to ``places`` decimals."""
    q = Decimal(1).scaleb(-places)
    return Decimal(repr(value)).quantize(q, rounding=ROUND_CEILING if is_upper else ROUND_FLOOR)


def format_bound(value: float, is_upper: bool, places: int = 4) -> str:
    exact = Decimal(repr(value))
    if exact == exact.quantize(Decimal(1).scaleb(-places)):
        # already representable: print without padding (1, 0.14)
        s = format(exact.normalize(), "f")
        return s
    return str(round_outward(value, is_upper, places))


def table_rows(k_max: int) -> list[dict]:
    out = []
    for row in gamma_table(k_max):
        out.append(
            {
                "k": row.k,
                "upper": format_bound(row.upper, True),
                "upper_source": row.upper_source,
                "lower": format_bound(row.lower, False),
                "lower_witness": row.lower_witness,
                "upper_exact": row.upper,
                "lower_exact": row.lower,
            }
        )
    return out


def render_table_text(k_max: int) -> str:
    rows = table_rows(k_max)
    head = ("k", "upper bound", "lower bound")
    body = [
        (str(r["k"]), f"{r['upper']} ({r['upper_source']})", f"{r['lower']} ({r['lower_witness']})")
        for r in rows
    ]
    widths = [max(len(x[i]) for x in [head, *body]) for i in range(3)]
    fmt = " | ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*head), "-+-".join("-" * w for w in widths)]
    lines += [fmt.format(*b).rstrip() for b in body]
    return "\n".join(lines) + "\n"


def render_table_csv(k_max: int) -> str:
    buf = io.StringIO()
    rows = table_rows(k_max)
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
