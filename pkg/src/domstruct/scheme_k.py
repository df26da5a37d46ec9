"""Construction scheme K: remove cut vertices and repair induced cycles of
length 1 or 2 (mod 3) by adding edges until the graph is 2-connected and
every induced cycle has length divisible by three."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

from .cycles import DEFAULT_CYCLE_CAP, InducedCycle, enumerate_induced_cycles, is_induced_cycle
from .formats import write_graph6
from .graph import Graph, GraphInputError, add_edges, components, cut_vertices, delete_vertices

__all__ = [
    "StepKind",
    "KStep",
    "KTrace",
    "ChoicePolicy",
    "CANONICAL",
    "parse_policy",
    "step_cut_vertex",
    "step_cycle_mod2",
    "step_cycle_mod1",
    "construct_K",
    "replay",
    "trace_to_dict",
]


class StepKind(str, Enum):
    CUT_VERTEX = "CUT_VERTEX"
    CYCLE_MOD2 = "CYCLE_MOD2"
    CYCLE_MOD1 = "CYCLE_MOD1"


@dataclass(frozen=True)
class KStep:
    kind: StepKind
    chosen: int
    added: tuple[tuple[int, int], ...]
    k_before: int
    k_after: int
    cycle: InducedCycle | None = None
    roles: dict[str, int] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class KTrace:
    input: Graph
    output: Graph
    steps: tuple[KStep, ...]
    terminated: bool

    @property
    def iterations(self) -> int:
        return len(self.steps)

    @property
    def added_edges(self) -> list[tuple[int, int]]:
        return [e for s in self.steps for e in s.added]


@dataclass(frozen=True)
class ChoicePolicy:
    """How scheme K resolves its free choices.

    Deterministic by default: smallest cut vertex; among offending cycles
    residue 2 before residue 1, shortest first, then lexicographic; the
    smallest vertex of the cycle as anchor. With ``seed`` set, every choice
    is drawn uniformly from the candidates instead.
    """

    name: str = "canonical"
    residue_order: tuple[int, int] = (2, 1)
    longest_first: bool = False
    seed: int | None = None

    def rng(self) -> random.Random | None:
        return None if self.seed is None else random.Random(self.seed)

    def pick_cut_vertex(self, cuts: Sequence[int], rng: random.Random | None) -> int:
        cuts = sorted(cuts)
        return rng.choice(cuts) if rng else cuts[0]

    def pick_cycle(
        self, cycles: Sequence[InducedCycle], rng: random.Random | None
    ) -> InducedCycle:
        if rng:
            return rng.choice(list(cycles))
        rank = {r: i for i, r in enumerate(self.residue_order)}
        sign = -1 if self.longest_first else 1
        return min(cycles, key=lambda c: (rank[c.residue], sign * c.length, c.vertices))

    def pick_anchor(self, cycle: InducedCycle, rng: random.Random | None) -> int:
        return rng.choice(cycle.vertices) if rng else min(cycle.vertices)


CANONICAL = ChoicePolicy()


def parse_policy(spec: str) -> ChoicePolicy:
    """``canonical``, ``mod1-first``, ``longest`` or ``random:<seed>``."""
    if spec in ("", "canonical"):
        return CANONICAL
    if spec == "mod1-first":
        return ChoicePolicy(name=spec, residue_order=(1, 2))
    if spec == "longest":
        return ChoicePolicy(name=spec, longest_first=True)
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad policy seed in {spec!r}") from None
        return ChoicePolicy(name=spec, seed=seed)
    raise ValueError(f"unknown policy {spec!r}")


def step_cut_vertex(g: Graph, v: int, k: int = 0) -> tuple[Graph, KStep]:
    """Join every neighbour of ``v`` to every neighbour of ``v`` lying in a
    different component of ``g - v``."""
    if not 0 <= v < g.n or v not in cut_vertices(g):
        raise GraphInputError(f"vertex {v} is not a cut vertex")
    rest, old_ids = delete_vertices(g, [v])
    comps = [frozenset(old_ids[x] for x in c) for c in components(rest)]
    nbr_groups = [sorted(c & g.adjacency[v]) for c in comps]
    nbr_groups = [grp for grp in nbr_groups if grp]
    added = []
    for i in range(len(nbr_groups)):
        for j in range(i + 1, len(nbr_groups)):
            for a in nbr_groups[i]:
                for b in nbr_groups[j]:
                    added.append((min(a, b), max(a, b)))
    added.sort()
    out, _ = add_edges(g, added)
    return out, KStep(StepKind.CUT_VERTEX, v, tuple(added), k, k + 1)


def _cycle_roles(g: Graph, cycle: InducedCycle, anchor: int, residue: int) -> tuple[int, int, int]:
    if not is_induced_cycle(g, cycle.vertices):
        raise GraphInputError(f"cycle {cycle.vertices} is not induced in the current graph")
    if cycle.residue != residue:
        raise GraphInputError(
            f"cycle of length {cycle.length} has residue {cycle.residue}, expected {residue}"
        )
    if anchor not in cycle.vertex_set:
        raise GraphInputError(f"vertex {anchor} is not on cycle {cycle.vertices}")
    i = cycle.position(anchor)
    vs, k = cycle.vertices, cycle.length
    # anchor's neighbours a1, a2 and the vertex after a2 going away from the anchor
    return vs[(i - 1) % k], vs[(i + 1) % k], vs[(i + 2) % k]


def step_cycle_mod2(g: Graph, d2: InducedCycle, w: int, k: int = 0) -> tuple[Graph, KStep]:
    """On a residue-2 induced cycle ``w1 w w2 alpha ...`` add ``w1w2``,
    ``w1 alpha`` and ``w alpha``."""
    w1, w2, alpha = _cycle_roles(g, d2, w, 2)
    added = [(w1, w2), (w1, alpha), (w, alpha)]
    out, _ = add_edges(g, added)
    edges = tuple(sorted((min(a, b), max(a, b)) for a, b in added))
    roles = {"w": w, "w1": w1, "w2": w2, "alpha": alpha}
    return out, KStep(StepKind.CYCLE_MOD2, w, edges, k, k + 1, d2, roles)


def step_cycle_mod1(g: Graph, d1: InducedCycle, x: int, k: int = 0) -> tuple[Graph, KStep]:
    """On a residue-1 induced cycle ``x1 x x2 alpha ...`` add ``x1x2`` and
    ``x alpha``."""
    x1, x2, alpha = _cycle_roles(g, d1, x, 1)
    added = [(x1, x2), (x, alpha)]
    out, _ = add_edges(g, added)
    edges = tuple(sorted((min(a, b), max(a, b)) for a, b in added))
    roles = {"x": x, "x1": x1, "x2": x2, "alpha": alpha}
    return out, KStep(StepKind.CYCLE_MOD1, x, edges, k, k + 1, d1, roles)


def construct_K(
    g: Graph,
    policy: ChoicePolicy = CANONICAL,
    max_iterations: int | None = None,
    cycle_cap: int = DEFAULT_CYCLE_CAP,
) -> KTrace:
    """Run scheme K on a connected graph.

    Cut-vertex steps are exhausted before any cycle step; the loop stops
    when no cut vertex and no induced cycle of residue 1 or 2 remains, or
    after ``max_iterations`` steps (default ``10 n^2``) with
    ``terminated=False``. Raises :class:`BudgetExceeded` if induced-cycle
    enumeration exceeds ``cycle_cap``.
    """
    if len(components(g)) > 1:
        raise GraphInputError("scheme K needs a connected graph; apply it per component")
    cap = 10 * g.n * g.n if max_iterations is None else max_iterations
    rng = policy.rng()
    cur = g
    steps: list[KStep] = []
    terminated = False
    while len(steps) < cap:
        k = len(steps)
        cuts = cut_vertices(cur)
        if cuts:
            cur, step = step_cut_vertex(cur, policy.pick_cut_vertex(cuts, rng), k)
            steps.append(step)
            continue
        offending = [c for c in enumerate_induced_cycles(cur, cap=cycle_cap) if c.residue]
        if not offending:
            terminated = True
            break
        cycle = policy.pick_cycle(offending, rng)
        anchor = policy.pick_anchor(cycle, rng)
        if cycle.residue == 2:
            cur, step = step_cycle_mod2(cur, cycle, anchor, k)
        else:
            cur, step = step_cycle_mod1(cur, cycle, anchor, k)
        steps.append(step)
    else:
        # the cap was reached; a graph with nothing left to fix still counts
        terminated = not cut_vertices(cur) and not any(
            c.residue for c in enumerate_induced_cycles(cur, cap=cycle_cap)
        )
    return KTrace(g, cur, tuple(steps), terminated)


def replay(trace: KTrace) -> Graph:
    out = trace.input
    for step in trace.steps:
        out, _ = add_edges(out, step.added)
    return out


def trace_to_dict(trace: KTrace) -> dict[str, Any]:
    return {
        "input": write_graph6(trace.input).decode(),
        "output": write_graph6(trace.output).decode(),
        "terminated": trace.terminated,
        "iterations": trace.iterations,
        "steps": [
            {
                "kind": s.kind.value,
                "chosen": s.chosen,
                "cycle": list(s.cycle.vertices) if s.cycle else None,
                "roles": dict(sorted(s.roles.items())),
                "added": [list(e) for e in s.added],
                "k_before": s.k_before,
                "k_after": s.k_after,
            }
            for s in trace.steps
        ],
    }
