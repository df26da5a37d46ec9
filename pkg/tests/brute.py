"""Definition-level brute force, deliberately independent of the search,
enumeration and low-link code under test."""

from __future__ import annotations

from itertools import combinations

from domstruct.graph import Graph


def dominates(g: Graph, X) -> bool:
    X = set(X)
    return all(v in X or any(u in X for u in g.adjacency[v]) for v in range(g.n))


def gamma(g: Graph) -> int:
    for k in range(g.n + 1):
        for X in combinations(range(g.n), k):
            if dominates(g, X):
                return k
    raise AssertionError("unreachable")


def all_dsets(g: Graph) -> set[frozenset[int]]:
    """Full subset sweep over all 2^n masks."""
    best, out = None, set()
    for mask in range(1 << g.n):
        X = [v for v in range(g.n) if mask >> v & 1]
        if not dominates(g, X):
            continue
        if best is None or len(X) < best:
            best, out = len(X), set()
        if len(X) == best:
            out.add(frozenset(X))
    return out


def gamma_sweep(g: Graph) -> int:
    return min(bin(m).count("1") for m in range(1 << g.n)
               if dominates(g, [v for v in range(g.n) if m >> v & 1]))


def count_components(n: int, edges, removed=()) -> int:
    removed = set(removed)
    parent = {v: v for v in range(n) if v not in removed}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u in parent and v in parent:
            parent[find(u)] = find(v)
    return len({find(v) for v in parent})


def cut_vertices(g: Graph) -> set[int]:
    edges = g.edges()
    base = count_components(g.n, edges)
    # removing an isolated vertex lowers the count; only increases matter
    return {v for v in range(g.n) if count_components(g.n, edges, [v]) > base - (g.degree(v) == 0)}


def induced_cycle_vertex_sets(g: Graph, max_len: int | None = None) -> set[frozenset[int]]:
    """Every vertex subset inducing a connected 2-regular subgraph."""
    out = set()
    top = g.n if max_len is None else max_len
    for k in range(3, top + 1):
        for S in combinations(range(g.n), k):
            s = set(S)
            if any(len(g.adjacency[v] & s) != 2 for v in S):
                continue
            sub_edges = [(u, v) for u in S for v in g.adjacency[u] if v in s and u < v]
            if count_components(g.n, sub_edges, set(range(g.n)) - s) == 1:
                out.add(frozenset(S))
    return out


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
