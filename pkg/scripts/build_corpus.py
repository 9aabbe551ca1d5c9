"""Regenerate the bundled graph6 fixture corpus under src/oddgirth/data/corpus.

Named graphs come from networkx; everything else from oddgirth's generators.
"""

from pathlib import Path

import networkx as nx
import numpy as np

from oddgirth.graph import (
    Graph,
    disjoint_union,
    generate_cayley_f2,
    generate_complete,
    generate_cycle,
    generate_folded_cube,
    generate_hypercube,
    random_connected_graph,
    random_graph,
)
from oddgirth.graph6 import write_graph6

OUT = Path(__file__).resolve().parents[1] / "src" / "oddgirth" / "data" / "corpus"


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G)
    return Graph(nx.to_numpy_array(G, nodelist=range(G.number_of_nodes())) > 0)


def coxeter_graph():
    # a_i ~ a_{i+1}, b_i ~ b_{i+2}, c_i ~ c_{i+3}, d_i ~ a_i, b_i, c_i over Z_7
    G = nx.Graph()
    for i in range(7):
        G.add_edge(("a", i), ("a", (i + 1) % 7))
        G.add_edge(("b", i), ("b", (i + 2) % 7))
        G.add_edge(("c", i), ("c", (i + 3) % 7))
        for x in "abc":
            G.add_edge(("d", i), (x, i))
    return G


def write(name, graphs):
    text = "".join(write_graph6(g) + "\n" for g in graphs)
    (OUT / name).write_text(text, encoding="utf-8")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("cycles.g6", [generate_cycle(k) for k in range(3, 22)])
    write(
        "cubes.g6",
        [generate_folded_cube(d) for d in range(2, 9)] + [generate_hypercube(d) for d in range(1, 6)],
    )
    rng = np.random.default_rng(20240607)
    cayley = []
    for m in (3, 4, 5, 6):
        for _ in range(4):
            size = int(rng.integers(2, m + 3))
            gens = sorted(set(int(x) for x in rng.integers(1, 1 << m, size=size)))
            cayley.append(generate_cayley_f2(m, gens))
    write("cayley.g6", cayley)
    named = [
        nx.petersen_graph(),
        nx.dodecahedral_graph(),
        nx.heawood_graph(),
        coxeter_graph(),
        nx.tutte_graph(),
        nx.moebius_kantor_graph(),
        nx.desargues_graph(),
        nx.icosahedral_graph(),
        nx.star_graph(6),
        nx.path_graph(9),
    ]
    write("named.g6", [from_nx(G) for G in named] + [generate_complete(n) for n in (1, 2, 5, 9)])
    rnd = [random_connected_graph(int(rng.integers(4, 25)), 0.15, rng) for _ in range(30)]
    rnd += [random_graph(int(rng.integers(4, 20)), 0.2, rng) for _ in range(10)]
    rnd.append(disjoint_union(generate_cycle(5), generate_folded_cube(7), generate_cycle(9)))
    write("random.g6", rnd)


if __name__ == "__main__":
    main()
