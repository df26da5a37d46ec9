"""Regenerate src/domstruct/data/cubic_4_10.g6.

Samples seeded pairing-model cubic graphs and keeps one representative per
isomorphism class until the known class counts for connected cubic graphs
(1, 2, 5, 19 for n = 4, 6, 8, 10) are reached.
"""

from pathlib import Path

import networkx as nx

from domstruct.formats import write_graph6
from domstruct.harness.generate import random_cubic

EXPECTED = {4: 1, 6: 2, 8: 5, 10: 19}
OUT = Path(__file__).resolve().parents[1] / "src" / "domstruct" / "data" / "cubic_4_10.g6"


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def main() -> None:
    lines = []
    for n, want in EXPECTED.items():
        reps = []
        seed = 0
        while len(reps) < want:
            g = random_cubic(n, seed)
            seed += 1
            h = to_nx(g)
            if not any(nx.is_isomorphic(h, r) for _, r in reps):
                reps.append((g, h))
        print(f"n={n}: {want} classes after {seed} samples")
        lines += [write_graph6(g).decode() for g, _ in reps]
    OUT.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
