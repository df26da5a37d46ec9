"""The cubic-graph cascade: pick a labeled set Y on K(G), split G into
G' (Y deleted, neighbours of Y made a clique) and G'' (G minus N[Y]),
solve G'' in closed form, recurse into G', and keep the smaller union.

Every level records what it built so that each step of the argument can
be checked against the exact oracle afterwards.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .cycles import DEFAULT_CYCLE_CAP, find_structures, is_domination_structure
from .graph import (
    Graph,
    GraphInputError,
    add_edges,
    closed_neighborhood,
    components,
    degree_profile,
    delete_vertices,
    induced_subgraph,
    is_dominating,
)
from .labeling import dominating_labelings, enumerate_labelings
from .oracle import (
    DEFAULT_ORACLE_BUDGET,
    cycle_witness,
    enumerate_all_dsets,
    min_dominating_set_exact,
    path_witness,
)
from .scheme_k import CANONICAL, ChoicePolicy, construct_K
from .verdicts import Verdict

__all__ = [
    "Branch",
    "StructuralCheck",
    "SolveVerdict",
    "LevelRecord",
    "SolveConfig",
    "SolveResult",
    "YSelection",
    "P2Check",
    "SplitCheck",
    "build_G_prime",
    "build_G_double_prime",
    "combine",
    "classify_components",
    "solve_special",
    "minimum_labeled_sets",
    "select_Y",
    "check_P2",
    "check_split_rule",
    "solve_cubic",
]


class Branch(str, Enum):
    PRIME = "PRIME"
    DOUBLE_PRIME = "DOUBLE_PRIME"


class StructuralCheck(str, Enum):
    PATHS_CYCLES = "PATHS_CYCLES"
    PATHS = "PATHS"
    INDEPENDENT = "INDEPENDENT"
    VIOLATED = "VIOLATED"


class SolveVerdict(str, Enum):
    MATCH = "MATCH"
    SUBOPTIMAL = "SUBOPTIMAL"
    NOT_DOMINATING = "NOT_DOMINATING"
    STRUCTURE_VIOLATION = "STRUCTURE_VIOLATION"
    ORACLE_SKIPPED = "ORACLE_SKIPPED"


# what the G'' graph must look like at each depth; depth 3 expects Y to dominate
_EXPECTED = {0: StructuralCheck.PATHS_CYCLES, 1: StructuralCheck.PATHS, 2: StructuralCheck.INDEPENDENT}
_RANK = {StructuralCheck.INDEPENDENT: 0, StructuralCheck.PATHS: 1, StructuralCheck.PATHS_CYCLES: 2,
         StructuralCheck.VIOLATED: 3}


def _remap(vs: Iterable[int], ids: Sequence[int]) -> frozenset[int]:
    return frozenset(ids[v] for v in vs)


def build_G_prime(g: Graph, Y: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Delete ``Y`` and join every pair of surviving neighbours of ``Y``."""
    Y = g.check_vertices(Y)
    nbrs = sorted(closed_neighborhood(g, Y) - Y)
    rest, old_ids = delete_vertices(g, Y)
    new_id = {old: new for new, old in enumerate(old_ids)}
    local = [new_id[v] for v in nbrs]
    out, _ = add_edges(rest, combinations(local, 2))
    return out, old_ids


def build_G_double_prime(g: Graph, Y: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    return delete_vertices(g, closed_neighborhood(g, Y))


def combine(
    Y: Iterable[int], Z1: Iterable[int], Z2: Iterable[int]
) -> tuple[frozenset[int], Branch]:
    Y, Z1, Z2 = frozenset(Y), frozenset(Z1), frozenset(Z2)
    if len(Z1) < len(Z2):
        return Y | Z1, Branch.PRIME
    return Y | Z2, Branch.DOUBLE_PRIME


def _walk(sub: Graph, start: int) -> list[int]:
    order, prev, cur = [start], None, start
    while True:
        nxt = [u for u in sub.neighbors(cur) if u != prev and u != start]
        if not nxt or nxt[0] in order:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def classify_components(g: Graph) -> list[tuple[str, frozenset[int]]]:
    """Label each component ``isolated``, ``path``, ``cycle`` or ``other``."""
    out = []
    for comp in components(g):
        degs = [g.degree(v) for v in comp]
        edges = sum(degs) // 2
        if len(comp) == 1:
            kind = "isolated"
        elif max(degs) <= 2 and edges == len(comp) - 1:
            kind = "path"
        elif all(d == 2 for d in degs) and edges == len(comp):
            kind = "cycle"
        else:
            kind = "other"
        out.append((kind, comp))
    return out


def solve_special(
    g: Graph, budget: int = DEFAULT_ORACLE_BUDGET
) -> tuple[frozenset[int], StructuralCheck]:
    """Minimum dominating set of a disjoint union of paths and cycles by
    closed form. Components of any other shape make the check VIOLATED and
    are solved by the oracle (its greedy bound if the budget runs out)."""
    witness: set[int] = set()
    kinds = set()
    for kind, comp in classify_components(g):
        kinds.add(kind)
        if kind == "isolated":
            witness |= comp
        elif kind == "path":
            sub, ids = induced_subgraph(g, comp)
            end = min(v for v in range(sub.n) if sub.degree(v) == 1)
            witness |= _remap(path_witness(_walk(sub, end)), ids)
        elif kind == "cycle":
            sub, ids = induced_subgraph(g, comp)
            witness |= _remap(cycle_witness(_walk(sub, 0)), ids)
        else:
            sub, ids = induced_subgraph(g, comp)
            witness |= _remap(min_dominating_set_exact(sub, budget).witness, ids)
    if "other" in kinds:
        check = StructuralCheck.VIOLATED
    elif "cycle" in kinds:
        check = StructuralCheck.PATHS_CYCLES
    elif "path" in kinds:
        check = StructuralCheck.PATHS
    else:
        check = StructuralCheck.INDEPENDENT
    return frozenset(witness), check


def minimum_labeled_sets(kg: Graph, h) -> list[frozenset[int]]:
    """Smallest dominating labeled sets of ``kg`` for structure ``h``."""
    dominating, _ = dominating_labelings(kg, enumerate_labelings(kg, h).labelings)
    if not dominating:
        return []
    best = min(len(s) for s in dominating)
    return sorted((s for s in dominating if len(s) == best), key=sorted)


@dataclass
class SolveConfig:
    policy: ChoicePolicy = CANONICAL
    all_Y: bool = False
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    max_iterations: int | None = None
    cycle_cap: int = DEFAULT_CYCLE_CAP
    max_depth: int = 3
    run_oracle: bool = True


@dataclass
class YSelection:
    """Per-level choice of Y; ``candidates`` are full choices for a
    connected graph (one per minimum labeled set)."""

    Y: frozenset[int]
    candidates: list[frozenset[int]]
    preferred_available: bool | None
    structure_ok: bool
    notes: list[str] = field(default_factory=list)


def select_Y(
    g: Graph, prefer: frozenset[int] | None = None, config: SolveConfig | None = None
) -> YSelection:
    """Build K per component, take the domination structure and its
    smallest dominating labeled sets; candidates meeting ``prefer`` first."""
    config = config or SolveConfig()
    chosen: set[int] = set()
    per_comp: list[list[frozenset[int]]] = []
    notes: list[str] = []
    structure_ok = True
    preferred_any = False
    for comp in components(g):
        sub, ids = induced_subgraph(g, comp)
        if sub.n <= 2:
            cands = [frozenset([0])]
            notes.append(f"trivial component at {ids[0]}")
        else:
            trace = construct_K(sub, config.policy, config.max_iterations, config.cycle_cap)
            kg = trace.output
            dom = [h for h in find_structures(kg, config.cycle_cap) if is_domination_structure(kg, h)]
            cands = minimum_labeled_sets(kg, dom[0]) if dom else []
            if not trace.terminated:
                notes.append(f"scheme K did not terminate on component at {ids[0]}")
            if not dom:
                notes.append(f"no domination structure on component at {ids[0]}")
            elif not cands:
                notes.append(f"no dominating labeling on component at {ids[0]}")
        mapped = [_remap(c, ids) for c in cands]
        if not mapped:
            structure_ok = False
            per_comp.append([frozenset()])
            continue
        if prefer:
            hit = [c for c in mapped if c & prefer]
            preferred_any |= bool(hit)
            mapped = hit + [c for c in mapped if not c & prefer]
        per_comp.append(mapped)
        chosen |= mapped[0]
    candidates = per_comp[0] if len(per_comp) == 1 else [frozenset(chosen)]
    return YSelection(
        frozenset(chosen), candidates, preferred_any if prefer else None, structure_ok, notes
    )


@dataclass
class LevelRecord:
    level: int
    graph_before: Graph
    to_root: tuple[int, ...]
    Y_used: frozenset[int]
    g_prime: Graph
    g_prime_ids: tuple[int, ...]
    g_double_prime: Graph
    g_double_prime_ids: tuple[int, ...]
    W_prime: frozenset[int]
    W_double_prime: frozenset[int]
    chosen_branch: Branch
    structural_check: StructuralCheck
    classification: StructuralCheck
    prime_solved: bool
    preferred_available: bool | None
    min_degree_ok: bool
    structure_ok: bool
    notes: list[str] = field(default_factory=list)


@dataclass
class SolveResult:
    candidate: frozenset[int]
    levels: list[LevelRecord]
    dominates: bool
    oracle_gamma: int | None
    verdict: SolveVerdict
    runtime_ms: dict[str, float]
    y_candidates: list[frozenset[int]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)


def _cascade(
    g: Graph,
    level: int,
    prefer: frozenset[int] | None,
    config: SolveConfig,
    to_root: tuple[int, ...],
    records: list[LevelRecord],
    violations: list[str],
    chosen: tuple[YSelection, frozenset[int]] | None = None,
) -> frozenset[int]:
    if chosen is None:
        sel = select_Y(g, prefer, config)
        Y = sel.Y
    else:
        sel, Y = chosen
    if not sel.structure_ok:
        violations.append(f"level {level}: " + "; ".join(sel.notes))

    gp, gp_ids = build_G_prime(g, Y)
    gpp, gpp_ids = build_G_double_prime(g, Y)
    wpp_local, cls = solve_special(gpp, config.oracle_budget)
    if level in _EXPECTED:
        check = cls if _RANK[cls] <= _RANK[_EXPECTED[level]] else StructuralCheck.VIOLATED
    else:
        check = StructuralCheck.INDEPENDENT if gpp.n == 0 else StructuralCheck.VIOLATED
    if check is StructuralCheck.VIOLATED:
        violations.append(f"level {level}: G'' is {cls.value} with {gpp.n} vertices")
    wpp = _remap(wpp_local, gpp_ids)

    prime_solved = gpp.n > 0
    if not prime_solved:
        wp = frozenset()
    elif level >= config.max_depth:
        violations.append(f"level {level}: depth cap reached, oracle used for G'")
        wp = _remap(min_dominating_set_exact(gp, config.oracle_budget).witness, gp_ids)
    else:
        new_id = {old: new for new, old in enumerate(gp_ids)}
        nbrs = closed_neighborhood(g, Y) - Y
        nxt_prefer = frozenset(new_id[v] for v in nbrs)
        sub_root = tuple(to_root[v] for v in gp_ids)
        wp = _remap(
            _cascade(gp, level + 1, nxt_prefer, config, sub_root, records, violations), gp_ids
        )

    X, branch = combine(Y, wp, wpp)
    records.append(LevelRecord(
        level=level, graph_before=g, to_root=to_root, Y_used=Y,
        g_prime=gp, g_prime_ids=gp_ids, g_double_prime=gpp, g_double_prime_ids=gpp_ids,
        W_prime=wp, W_double_prime=wpp, chosen_branch=branch, structural_check=check,
        classification=cls, prime_solved=prime_solved,
        preferred_available=sel.preferred_available,
        min_degree_ok=degree_profile(g).min_degree >= 3, structure_ok=sel.structure_ok,
        notes=list(sel.notes),
    ))
    return X


def solve_cubic(g: Graph, config: SolveConfig | None = None) -> SolveResult:
    """Run the cascade on a connected cubic graph and grade the result
    against the exact oracle."""
    config = config or SolveConfig()
    if not degree_profile(g).is_cubic:
        raise GraphInputError("solve_cubic needs a cubic graph")
    if len(components(g)) != 1:
        raise GraphInputError("solve_cubic needs a connected graph")
    root = tuple(range(g.n))

    t0 = time.perf_counter()
    top = select_Y(g, None, config)
    options = top.candidates if config.all_Y else top.candidates[:1]
    best: tuple[frozenset[int], list[LevelRecord], list[str]] | None = None
    for Y in options:
        records: list[LevelRecord] = []
        violations: list[str] = []
        X = _cascade(g, 0, None, config, root, records, violations, (top, Y))
        if best is None or len(X) < len(best[0]):
            best = (X, records, violations)
    assert best is not None
    X, records, violations = best
    records.sort(key=lambda r: r.level)
    runtime = {"cascade": (time.perf_counter() - t0) * 1000.0}

    dominates = is_dominating(g, X)
    gamma = None
    oracle_hit = False
    if config.run_oracle:
        t1 = time.perf_counter()
        res = min_dominating_set_exact(g, config.oracle_budget)
        runtime["oracle"] = (time.perf_counter() - t1) * 1000.0
        oracle_hit = res.budget_hit
        gamma = None if res.budget_hit else res.gamma

    if not dominates:
        verdict = SolveVerdict.NOT_DOMINATING
    elif violations:
        verdict = SolveVerdict.STRUCTURE_VIOLATION
    elif gamma is None:
        verdict = SolveVerdict.ORACLE_SKIPPED
    else:
        verdict = SolveVerdict.MATCH if len(X) == gamma else SolveVerdict.SUBOPTIMAL
    if oracle_hit:
        violations = violations + ["oracle budget exhausted"]
    return SolveResult(X, records, dominates, gamma, verdict, runtime, list(top.candidates), violations)


@dataclass(frozen=True)
class P2Check:
    verdict: Verdict
    details: dict
    witness: tuple[frozenset[int], frozenset[int]] | None = None


def check_P2(
    g: Graph, Ys: Sequence[Iterable[int]], budget: int = DEFAULT_ORACLE_BUDGET
) -> P2Check:
    """Is some candidate Y contained in some minimum dominating set of g?"""
    Ys = [frozenset(y) for y in Ys]
    if not Ys:
        return P2Check(Verdict.REFUTED, {"reason": "no candidate Y"})
    if budget <= 0:
        return P2Check(Verdict.SKIPPED, {"reason": "oracle budget"})
    enum = enumerate_all_dsets(g, budget)
    if enum.budget_hit:
        return P2Check(Verdict.SKIPPED, {"reason": "oracle budget"})
    for Y in Ys:
        for X in enum.sets:
            if Y <= X:
                return P2Check(
                    Verdict.HOLDS,
                    {"Y": sorted(Y), "X": sorted(X), "gamma": enum.gamma, "dsets": len(enum.sets)},
                    (Y, X),
                )
    return P2Check(
        Verdict.REFUTED,
        {"gamma": enum.gamma, "dsets": [sorted(x) for x in enum.sets], "Ys": [sorted(y) for y in Ys]},
    )


@dataclass(frozen=True)
class SplitCheck:
    verdict: Verdict
    details: dict


def check_split_rule(
    g: Graph, Y: Iterable[int], budget: int = DEFAULT_ORACLE_BUDGET
) -> SplitCheck:
    """With exact minimum dominating sets Z1 of G' and Z2 of G'', the size
    rule must produce a minimum dominating set of g; on the G' branch some
    minimum dominating set of G' must also meet N(Y)."""
    Y = g.check_vertices(Y)
    gp, gp_ids = build_G_prime(g, Y)
    gpp, gpp_ids = build_G_double_prime(g, Y)
    whole = min_dominating_set_exact(g, budget)
    z1 = min_dominating_set_exact(gp, budget)
    z2 = min_dominating_set_exact(gpp, budget)
    if whole.budget_hit or z1.budget_hit or z2.budget_hit:
        return SplitCheck(Verdict.SKIPPED, {"reason": "oracle budget"})
    X, branch = combine(Y, _remap(z1.witness, gp_ids), _remap(z2.witness, gpp_ids))
    details = {
        "Y": sorted(Y), "gamma": whole.gamma, "z1": z1.gamma, "z2": z2.gamma,
        "branch": branch.value, "combined_size": len(X), "dominates": is_dominating(g, X),
    }
    ok = details["dominates"] and len(X) == whole.gamma
    if branch is Branch.PRIME:
        nbrs = closed_neighborhood(g, Y) - Y
        new_id = {old: new for new, old in enumerate(gp_ids)}
        local = {new_id[v] for v in nbrs}
        dsets = enumerate_all_dsets(gp, budget, gamma=z1.gamma)
        if dsets.budget_hit:
            return SplitCheck(Verdict.SKIPPED, {**details, "reason": "oracle budget"})
        meets = any(s & local for s in dsets.sets)
        details["z1_meets_neighbors"] = meets
        ok = ok and meets
    return SplitCheck(Verdict.HOLDS if ok else Verdict.REFUTED, details)
