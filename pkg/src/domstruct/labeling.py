"""Labelings of a domination structure: mark every third vertex of each
cycle, propagating the phase from cycle to cycle across their shared
paths, and collect the resulting candidate dominating sets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .cycles import Structure, is_domination_structure
from .graph import Graph, GraphInputError, is_dominating
from .oracle import DEFAULT_ORACLE_BUDGET, min_dominating_set_exact
from .verdicts import Verdict

__all__ = [
    "Direction",
    "Labeling",
    "LabelingEnumeration",
    "CandidateY",
    "label_from",
    "enumerate_labelings",
    "dominating_labelings",
    "candidate_Y",
    "labeled_set_edges",
]


class Direction(str, Enum):
    FORWARD = "FORWARD"
    BACKWARD = "BACKWARD"

    @property
    def sign(self) -> int:
        return 1 if self is Direction.FORWARD else -1


@dataclass(frozen=True)
class Labeling:
    start_vertex: int
    direction: Direction
    labeled: frozenset[int]
    skipped_cycles: frozenset[int]
    consistent: bool
    tie_breaks: int = 0
    conflict_cycle: int | None = None


@dataclass(frozen=True)
class LabelingEnumeration:
    labelings: tuple[Labeling, ...]
    conflicts: int
    raw_attempts: int

    @property
    def consistent(self) -> list[Labeling]:
        return [lab for lab in self.labelings if lab.consistent]

    @property
    def tie_breaks(self) -> int:
        return sum(lab.tie_breaks for lab in self.labelings)


def _skippable(h: Structure) -> list[bool]:
    count: dict[int, int] = {}
    for c in h.cycles:
        for v in c.vertices:
            count[v] = count.get(v, 0) + 1
    return [all(count[v] >= 2 for v in c.vertices) for c in h.cycles]


def label_from(h: Structure, start: int, direction: Direction = Direction.FORWARD) -> Labeling:
    """Propagate a labeling from ``start`` through the seam graph of ``h``.

    The start cycle is the first cycle of ``h`` through ``start``; its
    phase puts a label on ``start``. Cycles are then visited breadth-first.
    A visited cycle whose already-fixed vertices carry a label inherits that
    phase. A cycle with no label on its fixed part is skipped when every one
    of its vertices lies on another cycle of ``h``; otherwise its phase is
    the one residue compatible with the fixed unlabeled vertices, and when
    two remain the count continues from the nearest label on the
    neighbouring cycle in ``direction`` (a tie break, counted).
    """
    cycles = h.cycles
    skippable = _skippable(h)
    nbrs = h.seam_neighbors()
    try:
        first = next(i for i, c in enumerate(cycles) if start in c.vertex_set)
    except StopIteration:
        raise GraphInputError(f"vertex {start} lies on no cycle of the structure") from None

    labels: set[int] = set()
    fixed: set[int] = set()
    labeled_cycles: set[int] = set()
    skipped: set[int] = set()
    ties = 0

    def apply(i: int, r: int) -> None:
        c = cycles[i]
        labels.update(c.vertices[j] for j in range(r, c.length, 3))
        fixed.update(c.vertices)
        labeled_cycles.add(i)

    apply(first, cycles[first].position(start) % 3)
    seen = {first}
    queue = deque([first])
    order = []
    while queue:
        i = queue.popleft()
        order.append(i)
        for j in nbrs[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)

    for i in order[1:]:
        c = cycles[i]
        known = [v for v in c.vertices if v in fixed]
        marked = [v for v in known if v in labels]
        if marked:
            r = c.position(marked[0]) % 3
        elif skippable[i]:
            skipped.add(i)
            continue
        else:
            blocked = {c.position(v) % 3 for v in known}
            feasible = [r for r in range(3) if r not in blocked]
            if not feasible:
                return Labeling(start, direction, frozenset(labels), frozenset(skipped), False, ties, i)
            if len(feasible) == 1:
                r = feasible[0]
            else:
                ties += 1
                r = _continue_phase(h, i, labeled_cycles, labels, direction)
                if r not in feasible:
                    r = feasible[0]
        if any((v in labels) != (c.position(v) % 3 == r) for v in known):
            return Labeling(start, direction, frozenset(labels), frozenset(skipped), False, ties, i)
        apply(i, r)
    return Labeling(start, direction, frozenset(labels), frozenset(skipped), True, ties)


def _continue_phase(
    h: Structure, i: int, labeled_cycles: set[int], labels: set[int], direction: Direction
) -> int:
    """Phase for cycle ``i`` that keeps every-third spacing when walking
    from the nearest label on a labeled neighbour cycle, across the shared
    path, into cycle ``i``."""
    c = h.cycles[i]
    parents = [j for j in h.seam_neighbors()[i] if j in labeled_cycles]
    if not parents:
        return 0
    p = h.cycles[parents[0]]
    shared = c.vertex_set & p.vertex_set
    sgn = direction.sign
    # exit endpoint of the shared path when walking cycle i in this direction
    exit_v = next(
        v for v in c.vertices if v in shared
        and c.vertices[(c.position(v) + sgn) % c.length] not in shared
    )
    pos = p.position(exit_v)
    for delta in range(1, p.length + 1):
        if p.vertices[(pos - sgn * delta) % p.length] in labels:
            break
    else:
        return 0
    return (c.position(exit_v) + sgn * (3 - delta % 3)) % 3


def enumerate_labelings(kg: Graph, h: Structure) -> LabelingEnumeration:
    """Try every start vertex in both directions; merge duplicates.

    Consistent labelings come first (in order of first discovery), then
    inconsistent ones. ``conflicts`` counts raw attempts that hit a phase
    conflict.
    """
    if not is_domination_structure(kg, h):
        raise GraphInputError("labelings need a domination structure covering every vertex")
    good: dict[frozenset[int], Labeling] = {}
    bad: dict[frozenset[int], Labeling] = {}
    conflicts = attempts = 0
    for s in range(kg.n):
        for d in Direction:
            attempts += 1
            lab = label_from(h, s, d)
            if lab.consistent:
                good.setdefault(lab.labeled, lab)
            else:
                conflicts += 1
                bad.setdefault(lab.labeled, lab)
    return LabelingEnumeration(tuple(good.values()) + tuple(bad.values()), conflicts, attempts)


def dominating_labelings(
    kg: Graph, labelings: Iterable[Labeling]
) -> tuple[list[frozenset[int]], Verdict]:
    """Labeled sets of the consistent labelings that dominate ``kg``, and
    whether that was all of them (SKIPPED if there was none to test)."""
    consistent = [lab for lab in labelings if lab.consistent]
    out: list[frozenset[int]] = []
    for lab in consistent:
        if is_dominating(kg, lab.labeled) and lab.labeled not in out:
            out.append(lab.labeled)
    if not consistent:
        return out, Verdict.SKIPPED
    all_dominate = all(is_dominating(kg, lab.labeled) for lab in consistent)
    return out, Verdict.HOLDS if all_dominate else Verdict.REFUTED


@dataclass(frozen=True)
class CandidateY:
    sets: tuple[frozenset[int], ...]
    verdict: Verdict
    gamma: int | None
    details: dict = field(default_factory=dict)


def candidate_Y(
    kg: Graph, labelings: Sequence[Labeling], oracle_budget: int = DEFAULT_ORACLE_BUDGET
) -> CandidateY:
    """Smallest dominating labeled sets, compared with the domination
    number of ``kg``."""
    dominating, _ = dominating_labelings(kg, labelings)
    best = min((len(s) for s in dominating), default=None)
    sets = tuple(sorted((s for s in dominating if len(s) == best), key=sorted))
    res = min_dominating_set_exact(kg, oracle_budget)
    if best is None:
        return CandidateY((), Verdict.REFUTED, None if res.budget_hit else res.gamma,
                          {"reason": "no dominating labeling"})
    if res.budget_hit:
        return CandidateY(sets, Verdict.SKIPPED, None,
                          {"reason": "oracle budget", "upper_bound": res.gamma, "best": best})
    verdict = Verdict.HOLDS if best == res.gamma else Verdict.REFUTED
    return CandidateY(sets, verdict, res.gamma, {"best": best, "gamma": res.gamma})


def labeled_set_edges(g: Graph, Y: Iterable[int]) -> list[tuple[int, int]]:
    """Edges of ``g`` with both ends in ``Y``."""
    ys = sorted(set(Y))
    return [(u, v) for i, u in enumerate(ys) for v in ys[i + 1:] if g.has_edge(u, v)]
