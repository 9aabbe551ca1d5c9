import itertools
from pathlib import Path

import numpy as np
import pytest

from oddgirth.graph import Graph, generate_folded_cube

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "oddgirth" / "data" / "corpus"

_acceptance_lines: list[str] = []


def report(criterion: str, description: str, ok: bool, detail: str = "") -> None:
    """Record one acceptance line; printed in the terminal summary."""
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] {criterion}: {description}"
    if detail:
        line += f" ({detail})"
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def folded7():
    return generate_folded_cube(7)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# --- independent oracles -----------------------------------------------------


def brute_force_odd_girth(g: Graph):
    """Shortest odd simple cycle by DFS over all simple cycles (small n only)."""
    best = None
    adj = [set(g.neighbors(u)) for u in range(g.n)]
    for start in range(g.n):
        # cycles whose smallest vertex is `start`
        stack = [(start, [start])]
        while stack:
            u, path = stack.pop()
            for v in adj[u]:
                if v == start and len(path) >= 3 and len(path) % 2 == 1:
                    if best is None or len(path) < best:
                        best = len(path)
                elif v > start and v not in path:
                    if best is None or len(path) + 1 < best:
                        stack.append((v, path + [v]))
    return best


def exhaustive_is_bipartite(g: Graph) -> bool:
    edges = g.edges()
    for colors in itertools.product((0, 1), repeat=g.n):
        if all(colors[u] != colors[v] for u, v in edges):
            return True
    return g.n == 0


def brute_force_max_cut(g: Graph) -> int:
    edges = g.edges()
    best = 0
    for colors in itertools.product((0, 1), repeat=g.n):
        best = max(best, sum(colors[u] != colors[v] for u, v in edges))
    return best


def corpus_lines():
    for path in sorted(CORPUS_DIR.glob("*.g6")):
        for lineno, line in enumerate(path.read_text().splitlines(), start=1):
            if line.strip():
                yield f"{path.name}:{lineno}", line.strip()
