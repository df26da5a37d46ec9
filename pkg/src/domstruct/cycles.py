"""Induced (chordless) cycles, the seam relation between them, and
seam-connected families of cycles whose length is divisible by three."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphInputError
from .verdicts import BudgetExceeded

__all__ = [
    "InducedCycle",
    "Structure",
    "DEFAULT_CYCLE_CAP",
    "enumerate_induced_cycles",
    "is_induced_cycle",
    "connecting_without_seams",
    "seam_graph",
    "find_structures",
    "is_domination_structure",
    "all_induced_cycles_mod3",
]

DEFAULT_CYCLE_CAP = 10**6


@dataclass(frozen=True, order=True)
class InducedCycle:
    """A chordless cycle stored in canonical form: the smallest vertex
    first, followed by its smaller cycle neighbour."""

    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, vertices: Sequence[int]) -> "InducedCycle":
        vs = list(vertices)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise GraphInputError(f"not a cycle: {vs}")
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        if vs[-1] < vs[1]:
            vs = [vs[0]] + vs[:0:-1]
        return cls(tuple(vs))

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def residue(self) -> int:
        return len(self.vertices) % 3

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edges(self) -> frozenset[tuple[int, int]]:
        vs = self.vertices
        return frozenset(
            (min(a, b), max(a, b)) for a, b in zip(vs, vs[1:] + vs[:1])
        )

    def position(self, v: int) -> int:
        return self.vertices.index(v)

    def neighbors_on_cycle(self, v: int) -> tuple[int, int]:
        """``(previous, next)`` of ``v`` in the stored orientation."""
        i = self.position(v)
        k = self.length
        return self.vertices[(i - 1) % k], self.vertices[(i + 1) % k]


def is_induced_cycle(g: Graph, vertices: Sequence[int]) -> bool:
    vs = list(vertices)
    k = len(vs)
    if k < 3 or len(set(vs)) != k or any(not 0 <= v < g.n for v in vs):
        return False
    pos = {v: i for i, v in enumerate(vs)}
    for i, v in enumerate(vs):
        on_cycle = [u for u in g.adjacency[v] if u in pos]
        if sorted(on_cycle) != sorted({vs[(i - 1) % k], vs[(i + 1) % k]}):
            return False
    return True


def enumerate_induced_cycles(
    g: Graph, max_length: int | None = None, cap: int = DEFAULT_CYCLE_CAP
) -> list[InducedCycle]:
    """All induced cycles of ``g`` (each once, canonical form), sorted.

    Grows chordless paths from each start vertex ``s`` through vertices
    larger than ``s``; a path closes into a cycle when its new end is
    adjacent to ``s``. Requiring the second vertex to be smaller than the
    last one emits each cycle in one orientation only.
    """
    limit = g.n if max_length is None else min(max_length, g.n)
    masks = g.masks()
    found: list[InducedCycle] = []

    for s in range(g.n):
        sbit = 1 << s
        above = ~((sbit << 1) - 1)
        for p1 in sorted(g.adjacency[s]):
            if p1 < s:
                continue
            # stack of (path, interior mask = path minus s and minus last)
            stack: list[tuple[list[int], int]] = [([s, p1], 0)]
            while stack:
                path, interior = stack.pop()
                last = path[-1]
                cand = masks[last] & above
                for u in _bits(cand):
                    if u in path or masks[u] & interior:
                        continue
                    if masks[u] & sbit:
                        if path[1] < u and len(path) + 1 <= limit:
                            found.append(InducedCycle(tuple(path + [u])))
                            if len(found) > cap:
                                raise BudgetExceeded("induced cycle enumeration", cap)
                        continue
                    if len(path) + 1 < limit:
                        stack.append((path + [u], interior | (1 << last)))
    found.sort(key=lambda c: (c.length, c.vertices))
    return found


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def connecting_without_seams(
    c1: InducedCycle, c2: InducedCycle, g: Graph | None = None, allow_trivial: bool = True
) -> bool:
    """True when the common part of the two cycles (shared vertices plus
    edges lying on both) is a single path. With ``allow_trivial`` a single
    shared vertex counts as a path."""
    shared = c1.vertex_set & c2.vertex_set
    if not shared:
        return False
    common = c1.edges() & c2.edges()
    if not allow_trivial and not common:
        return False
    # a nonempty forest with |E| = |V| - 1 is a tree; trees of max degree 2 are paths
    if len(common) != len(shared) - 1:
        return False
    deg = dict.fromkeys(shared, 0)
    adj: dict[int, list[int]] = {v: [] for v in shared}
    for a, b in common:
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    if max(deg.values()) > 2:
        return False
    start = next(iter(shared))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(shared)


def seam_graph(
    cycles: Sequence[InducedCycle], allow_trivial: bool = True
) -> list[tuple[int, int]]:
    pairs = []
    for i in range(len(cycles)):
        vi = cycles[i].vertex_set
        for j in range(i + 1, len(cycles)):
            if vi & cycles[j].vertex_set and connecting_without_seams(
                cycles[i], cycles[j], allow_trivial=allow_trivial
            ):
                pairs.append((i, j))
    return pairs


@dataclass(frozen=True)
class Structure:
    """A seam-connected family of residue-0 induced cycles, maximal in the
    host graph it was found in."""

    cycles: tuple[InducedCycle, ...]
    seam_edges: tuple[tuple[int, int], ...]
    maximal: bool = True

    @property
    def vertex_set(self) -> frozenset[int]:
        out: set[int] = set()
        for c in self.cycles:
            out |= c.vertex_set
        return frozenset(out)

    def seam_neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in self.cycles]
        for i, j in self.seam_edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return [sorted(x) for x in nbrs]


def find_structures(
    g: Graph, cap: int = DEFAULT_CYCLE_CAP, allow_trivial: bool = True
) -> list[Structure]:
    """Every maximal seam-connected family of residue-0 induced cycles.

    Maximality means no further residue-0 cycle seam-connects to the family,
    so the families are the connected components of the seam graph; an
    isolated cycle forms a single-cycle structure.
    """
    zero = [c for c in enumerate_induced_cycles(g, cap=cap) if c.residue == 0]
    pairs = seam_graph(zero, allow_trivial)
    nbrs: list[list[int]] = [[] for _ in zero]
    for i, j in pairs:
        nbrs[i].append(j)
        nbrs[j].append(i)
    seen = [False] * len(zero)
    out = []
    for i in range(len(zero)):
        if seen[i]:
            continue
        seen[i] = True
        comp, stack = [i], [i]
        while stack:
            a = stack.pop()
            for b in nbrs[a]:
                if not seen[b]:
                    seen[b] = True
                    comp.append(b)
                    stack.append(b)
        comp.sort()
        local = {old: new for new, old in enumerate(comp)}
        edges = tuple(sorted((local[a], local[b]) for a, b in pairs if a in local and b in local))
        out.append(Structure(tuple(zero[k] for k in comp), edges))
    return out


def is_domination_structure(g: Graph, h: Structure) -> bool:
    return h.vertex_set == frozenset(range(g.n))


def all_induced_cycles_mod3(
    g: Graph, cap: int = DEFAULT_CYCLE_CAP
) -> tuple[bool, InducedCycle | None]:
    for c in enumerate_induced_cycles(g, cap=cap):
        if c.residue != 0:
            return False, c
    return True, None
