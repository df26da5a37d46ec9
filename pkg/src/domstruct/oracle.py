"""Exact minimum dominating sets, used as ground truth for every claim.

The search is iterative deepening on the set size, seeded with a greedy
upper bound and the ``ceil(n / (maxdeg + 1))`` lower bound. Each level
branches on the undominated vertex with the fewest possible dominators.
Budgets count search nodes; exhausting one is reported in-band.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph, GraphInputError, closed_neighborhood, induced_subgraph, is_dominating
from .verdicts import Verdict

__all__ = [
    "DEFAULT_ORACLE_BUDGET",
    "OracleResult",
    "DSetEnumeration",
    "RemarkCheck",
    "min_dominating_set_exact",
    "greedy_dominating_set",
    "enumerate_all_dsets",
    "gamma_path",
    "gamma_cycle",
    "path_witness",
    "cycle_witness",
    "is_minimal_dominating",
    "minimality_defect",
    "check_remark_R",
]

DEFAULT_ORACLE_BUDGET = 10**8


class _OutOfBudget(Exception):
    pass


@dataclass(frozen=True)
class OracleResult:
    gamma: int
    witness: frozenset[int]
    nodes_explored: int
    budget_hit: bool


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


class _Search:
    def __init__(self, g: Graph, budget: int):
        self.closed = g.closed_masks()
        self.full = (1 << g.n) - 1
        self.maxcl = max((c.bit_count() for c in self.closed), default=1)
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget

    def extend(self, dom: int, k: int, allowed: int) -> int | None:
        """Mask of at most ``k`` vertices from ``allowed`` that completes
        ``dom`` to a dominating set, or None."""
        self.tick()
        if dom == self.full:
            return 0
        if k == 0:
            return None
        undominated = self.full & ~dom
        if undominated.bit_count() > k * self.maxcl:
            return None
        best, best_cnt = 0, None
        for v in _bits(undominated):
            c = self.closed[v] & allowed
            cnt = c.bit_count()
            if cnt == 0:
                return None
            if best_cnt is None or cnt < best_cnt:
                best, best_cnt = c, cnt
                if cnt == 1:
                    break
        for u in _bits(best):
            sub = self.extend(dom | self.closed[u], k - 1, allowed)
            if sub is not None:
                return sub | (1 << u)
            allowed &= ~(1 << u)
        return None


def greedy_dominating_set(g: Graph) -> frozenset[int]:
    closed = g.closed_masks()
    full = (1 << g.n) - 1
    dom, chosen = 0, []
    while dom != full:
        v = max(range(g.n), key=lambda u: ((closed[u] & ~dom).bit_count(), -u))
        chosen.append(v)
        dom |= closed[v]
    return frozenset(chosen)


def min_dominating_set_exact(g: Graph, budget: int = DEFAULT_ORACLE_BUDGET) -> OracleResult:
    """Exact domination number with the lexicographically smallest optimal
    witness. On budget exhaustion returns the greedy bound and its witness
    with ``budget_hit=True``."""
    if g.n == 0:
        return OracleResult(0, frozenset(), 0, False)
    greedy = greedy_dominating_set(g)
    search = _Search(g, budget)
    lower = -(-g.n // search.maxcl)
    try:
        gamma = len(greedy)
        for k in range(lower, len(greedy)):
            if search.extend(0, k, search.full) is not None:
                gamma = k
                break
        witness = _lex_smallest(search, gamma)
    except _OutOfBudget:
        return OracleResult(len(greedy), greedy, search.nodes, True)
    return OracleResult(gamma, witness, search.nodes, False)


def _lex_smallest(search: _Search, gamma: int) -> frozenset[int]:
    n = search.full.bit_length()
    chosen: list[int] = []
    dom = 0
    lo = 0
    for slot in range(gamma):
        for v in range(lo, n):
            left = gamma - slot - 1
            allowed = search.full & ~((1 << (v + 1)) - 1)
            if search.extend(dom | search.closed[v], left, allowed) is not None:
                chosen.append(v)
                dom |= search.closed[v]
                lo = v + 1
                break
        if dom == search.full:
            break
    return frozenset(chosen)


@dataclass(frozen=True)
class DSetEnumeration:
    gamma: int
    sets: tuple[frozenset[int], ...]
    nodes_explored: int
    budget_hit: bool


def enumerate_all_dsets(
    g: Graph, budget: int = DEFAULT_ORACLE_BUDGET, gamma: int | None = None
) -> DSetEnumeration:
    """Every minimum dominating set, each once, in lexicographic order.

    Builds sets in increasing vertex order and abandons a branch as soon as
    some undominated vertex has no dominator left at or after the next
    candidate position."""
    if gamma is None:
        res = min_dominating_set_exact(g, budget)
        if res.budget_hit:
            return DSetEnumeration(res.gamma, (), res.nodes_explored, True)
        gamma, spent = res.gamma, res.nodes_explored
    else:
        spent = 0
    closed = g.closed_masks()
    full = (1 << g.n) - 1
    maxcl = max((c.bit_count() for c in closed), default=1)
    nodes = spent
    out: list[frozenset[int]] = []

    def rec(start: int, chosen: list[int], dom: int, k: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        if k == 0:
            if dom == full:
                out.append(frozenset(chosen))
            return
        undominated = full & ~dom
        if undominated.bit_count() > k * maxcl:
            return
        for u in _bits(undominated):
            if closed[u] >> start == 0:
                return
        for e in range(start, g.n - k + 1):
            chosen.append(e)
            rec(e + 1, chosen, dom | closed[e], k - 1)
            chosen.pop()

    try:
        rec(0, [], 0, gamma)
    except _OutOfBudget:
        return DSetEnumeration(gamma, tuple(out), nodes, True)
    return DSetEnumeration(gamma, tuple(out), nodes, False)


def gamma_path(n: int) -> int:
    if n < 1:
        raise GraphInputError("a path needs at least one vertex")
    return -(-n // 3)


def gamma_cycle(n: int) -> int:
    if n < 3:
        raise GraphInputError("a cycle needs at least three vertices")
    return -(-n // 3)


def path_witness(order: Sequence[int]) -> list[int]:
    """Every third vertex of a path given in path order, starting at the
    second one; the far end is added when it would be left uncovered."""
    k = len(order)
    if k == 0:
        return []
    picks = list(range(1, k, 3))
    if not picks or picks[-1] < k - 2:
        picks.append(k - 1)
    return [order[i] for i in picks]


def cycle_witness(order: Sequence[int]) -> list[int]:
    return [order[i] for i in range(0, len(order), 3)]


def minimality_defect(g: Graph, X: Iterable[int]) -> str | None:
    """None for a minimal dominating set; otherwise ``"NOT_DOMINATING"`` or
    ``"REDUNDANT:<v>"`` naming the first removable vertex."""
    X = g.check_vertices(X)
    if not is_dominating(g, X):
        return "NOT_DOMINATING"
    for v in sorted(X):
        if is_dominating(g, X - {v}):
            return f"REDUNDANT:{v}"
    return None


def is_minimal_dominating(g: Graph, X: Iterable[int]) -> bool:
    return minimality_defect(g, X) is None


@dataclass(frozen=True)
class RemarkCheck:
    verdict: Verdict
    left: bool | None
    right: bool | None
    failing_subset: frozenset[int] | None = None
    details: dict = field(default_factory=dict)


def check_remark_R(
    g: Graph, X: Iterable[int], budget: int = DEFAULT_ORACLE_BUDGET, max_size: int = 20
) -> RemarkCheck:
    """Evaluate both sides of "every subset D of X is a minimum dominating
    set of G[N[D]]" iff "X is a minimum dominating set of G" on one
    instance."""
    X = g.check_vertices(X)
    if not is_dominating(g, X):
        raise GraphInputError("X must dominate g")
    if len(X) > max_size:
        return RemarkCheck(Verdict.SKIPPED, None, None, details={"reason": f"|X| > {max_size}"})
    remaining = budget
    whole = min_dominating_set_exact(g, remaining)
    remaining -= whole.nodes_explored
    if whole.budget_hit:
        return RemarkCheck(Verdict.SKIPPED, None, None, details={"reason": "oracle budget"})
    right = len(X) == whole.gamma

    left = True
    failing = None
    members = sorted(X)
    for size in range(1, len(members) + 1):
        for D in combinations(members, size):
            sub, _ = induced_subgraph(g, closed_neighborhood(g, D))
            res = min_dominating_set_exact(sub, remaining)
            remaining -= res.nodes_explored
            if res.budget_hit:
                return RemarkCheck(Verdict.SKIPPED, None, right, details={"reason": "oracle budget"})
            if res.gamma != size:
                left, failing = False, frozenset(D)
                break
        if not left:
            break
    verdict = Verdict.HOLDS if left == right else Verdict.REFUTED
    details = {"left": left, "right": right, "gamma": whole.gamma, "size": len(X)}
    if failing is not None:
        details["failing_subset"] = sorted(failing)
    return RemarkCheck(verdict, left, right, failing, details)
