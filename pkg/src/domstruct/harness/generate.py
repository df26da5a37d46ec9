"""Seeded graph generators and the bundled cubic-graph catalog."""

from __future__ import annotations

import random
from importlib import resources

from ..formats import read_graph6_lines
from ..graph import Graph, GraphInputError, components

__all__ = [
    "GenerationError",
    "random_cubic",
    "random_connected_graph",
    "cubic_catalog",
]

MAX_ATTEMPTS = 10_000


class GenerationError(RuntimeError):
    pass


def random_cubic(n: int, seed: int, max_attempts: int = MAX_ATTEMPTS) -> Graph:
    """Connected 3-regular simple graph from the pairing model.

    Each attempt pairs the ``3n`` stubs uniformly and is rejected if it
    produces a loop, a parallel edge or a disconnected graph; attempt ``i``
    draws from its own substream so the result depends only on
    ``(n, seed)``.
    """
    if n < 4 or n % 2:
        raise GraphInputError(f"cubic graphs need an even n >= 4, got {n}")
    for attempt in range(max_attempts):
        rng = random.Random(f"cubic/{n}/{seed}/{attempt}")
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = set()
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                break
            edges.add(e)
        else:
            g = Graph.from_edges(n, sorted(edges))
            if len(components(g)) == 1:
                return g
    raise GenerationError(f"no simple connected cubic graph after {max_attempts} attempts")


def random_connected_graph(n: int, p: float, seed: int, max_attempts: int = MAX_ATTEMPTS) -> Graph:
    """Connected G(n, p) sample by rejection."""
    for attempt in range(max_attempts):
        rng = random.Random(f"gnp/{n}/{p}/{seed}/{attempt}")
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if len(components(g)) <= 1:
            return g
    raise GenerationError(f"no connected G({n}, {p}) sample after {max_attempts} attempts")


def cubic_catalog(n: int | None = None) -> list[Graph]:
    """All connected cubic graphs on 4 to 10 vertices up to isomorphism
    (1, 2, 5 and 19 of them), from the bundled graph6 file."""
    text = resources.files("domstruct.data").joinpath("cubic_4_10.g6").read_bytes()
    graphs = read_graph6_lines(text)
    return [g for g in graphs if n is None or g.n == n]
