"""Immutable simple undirected graphs on dense vertex ids ``0..n-1``.

Every derived graph (vertex deletion, edge addition) is a new value; vertex
deletion hands back the surviving old ids so results can always be mapped
back to the coordinates of the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Graph",
    "GraphInputError",
    "DegreeProfile",
    "closed_neighborhood",
    "is_dominating",
    "cut_vertices",
    "components",
    "delete_vertices",
    "induced_subgraph",
    "add_edges",
    "degree_profile",
    "normalize_edge",
]


class GraphInputError(ValueError):
    """Raised for malformed graphs or vertex ids outside ``0..n-1``."""


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise GraphInputError(f"loop edge ({u}, {v}) is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adjacency) != self.n:
            raise GraphInputError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphInputError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise GraphInputError(f"self-loop at {v}")
                if v not in self.adjacency[u]:
                    raise GraphInputError(f"asymmetric adjacency {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"loop edge ({u}, {v}) is not allowed")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges ``(u, v)`` with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def masks(self) -> list[int]:
        """Open-neighborhood bitmasks, one int per vertex."""
        out = []
        for nbrs in self.adjacency:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            out.append(mask)
        return out

    def closed_masks(self) -> list[int]:
        return [mask | (1 << v) for v, mask in enumerate(self.masks())]

    def check_vertices(self, vs: Iterable[int]) -> frozenset[int]:
        s = frozenset(vs)
        for v in s:
            if not isinstance(v, int) or not 0 <= v < self.n:
                raise GraphInputError(f"vertex id {v!r} out of range for n={self.n}")
        return s

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def closed_neighborhood(g: Graph, W: Iterable[int]) -> frozenset[int]:
    W = g.check_vertices(W)
    out = set(W)
    for v in W:
        out |= g.adjacency[v]
    return frozenset(out)


def is_dominating(g: Graph, X: Iterable[int]) -> bool:
    return len(closed_neighborhood(g, X)) == g.n


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by smallest member."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        out.append(frozenset(comp))
    return out


def cut_vertices(g: Graph) -> frozenset[int]:
    """Articulation points via iterative DFS low-link, per component."""
    disc = [-1] * g.n
    low = [0] * g.n
    cuts: set[int] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(g.adjacency[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, iter(sorted(g.adjacency[u]))))
                    advanced = True
                    break
                if u != parent:
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return frozenset(cuts)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``keep``; returns ``(graph, old_ids)`` with
    ``old_ids[new] == old``."""
    old_ids = tuple(sorted(g.check_vertices(keep)))
    new_id = {old: new for new, old in enumerate(old_ids)}
    adj = tuple(
        frozenset(new_id[u] for u in g.adjacency[old] if u in new_id) for old in old_ids
    )
    return Graph(len(old_ids), adj), old_ids


def delete_vertices(g: Graph, S: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    S = g.check_vertices(S)
    return induced_subgraph(g, (v for v in range(g.n) if v not in S))


def add_edges(g: Graph, E: Iterable[Sequence[int]]) -> tuple[Graph, int]:
    """Union of ``g`` with the edges ``E``; returns ``(graph, duplicates)``
    where ``duplicates`` counts requested edges that were already present
    (including repeats within ``E``)."""
    adj = [set(a) for a in g.adjacency]
    duplicates = 0
    for e in E:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphInputError(f"edge ({u}, {v}) out of range for n={g.n}")
        normalize_edge(u, v)
        if v in adj[u]:
            duplicates += 1
            continue
        adj[u].add(v)
        adj[v].add(u)
    return Graph(g.n, tuple(frozenset(a) for a in adj)), duplicates


class DegreeProfile(NamedTuple):
    min_degree: int
    max_degree: int
    is_cubic: bool


def degree_profile(g: Graph) -> DegreeProfile:
    if g.n == 0:
        return DegreeProfile(0, 0, False)
    degs = [len(a) for a in g.adjacency]
    lo, hi = min(degs), max(degs)
    return DegreeProfile(lo, hi, lo == hi == 3)
