"""Evaluate every claim on one graph and assemble the JSON report."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterator

from ..cycles import all_induced_cycles_mod3, find_structures, is_domination_structure
from ..formats import CandidateSet, ClaimResult, ReportDocument, write_graph6
from ..graph import Graph, GraphInputError, components, cut_vertices, degree_profile
from ..labeling import candidate_Y, dominating_labelings, enumerate_labelings, labeled_set_edges
from ..oracle import DEFAULT_ORACLE_BUDGET, check_remark_R, greedy_dominating_set, min_dominating_set_exact
from ..pipeline import SolveConfig, SolveVerdict, check_P2, check_split_rule, solve_cubic
from ..scheme_k import construct_K, parse_policy
from ..verdicts import BudgetExceeded, Verdict

__all__ = ["RunConfig", "CLAIMS", "verify_graph"]

CLAIMS = (
    "k_construction",
    "k_single_structure",
    "labelings_dominate",
    "labeling_is_minimum",
    "labeling_count_bound",
    "labeled_sets_independent",
    "remark_subset_dsets",
    "labeling_extends_to_dset",
    "split_rule",
    "cascade_structure",
    "cascade_optimal",
)

MIN_DEGREE_3 = "hypothesis: minimum degree >= 3"
CUBIC = "hypothesis: cubic"


@dataclass
class RunConfig:
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    policy: str = "canonical"
    all_Y: bool = False
    max_iterations: int | None = None
    cycle_cap: int = 10**6
    structure_max_n: int = 10
    claims: tuple[str, ...] = CLAIMS
    timings: bool = False
    strict: bool = False
    jobs: int = 1

    def solve_config(self) -> SolveConfig:
        return SolveConfig(
            policy=parse_policy(self.policy),
            all_Y=self.all_Y,
            oracle_budget=self.oracle_budget,
            max_iterations=self.max_iterations,
            cycle_cap=self.cycle_cap,
        )

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["claims"] = list(self.claims)
        del d["jobs"]
        return d


@dataclass
class _Ctx:
    g: Graph
    config: RunConfig
    claims: dict[str, ClaimResult] = field(default_factory=dict)
    runtimes: dict[str, float] = field(default_factory=dict)
    candidates: list[CandidateSet] = field(default_factory=list)

    def put(self, name: str, verdict: Verdict, **details: Any) -> None:
        if name in self.config.claims:
            self.claims[name] = ClaimResult(name, verdict, details)

    @contextmanager
    def timed(self, phase: str) -> Iterator[None]:
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.runtimes[phase] = self.runtimes.get(phase, 0.0) + (time.perf_counter() - t0) * 1e3

    def guarded(self, names: tuple[str, ...], fn: Callable[[], None]) -> None:
        """Run ``fn``; budget or input failures become verdicts for any of
        ``names`` it did not settle itself."""
        try:
            fn()
        except BudgetExceeded as exc:
            for n in names:
                if n not in self.claims:
                    self.put(n, Verdict.BUDGET_EXCEEDED, reason=str(exc))
        except GraphInputError as exc:
            for n in names:
                if n not in self.claims:
                    self.put(n, Verdict.SKIPPED, reason=str(exc))


def _sets(xs) -> list[list[int]]:
    return [sorted(x) for x in xs]


def verify_graph(
    g: Graph, config: RunConfig | None = None, graph_id: str = "", input_format: str = "inline"
) -> ReportDocument:
    """Check every enabled claim on ``g``. Claims whose hypotheses ``g``
    does not meet are SKIPPED with the reason; no claim short-circuits
    another."""
    config = config or RunConfig()
    ctx = _Ctx(g, config)
    budget = config.oracle_budget
    profile = degree_profile(g)
    deg3 = g.n > 0 and profile.min_degree >= 3
    g6 = write_graph6(g).decode()

    if g.n == 0 or len(components(g)) != 1:
        for name in config.claims:
            ctx.put(name, Verdict.SKIPPED, reason="input graph must be connected and nonempty")
        return _document(ctx, graph_id or g6, input_format, g6, None)

    with ctx.timed("oracle"):
        exact = min_dominating_set_exact(g, budget)
    gamma = None if exact.budget_hit else exact.gamma
    if gamma is not None:
        ctx.candidates.append(CandidateSet("oracle", tuple(sorted(exact.witness))))

    state: dict[str, Any] = {}

    def scheme_k_claims() -> None:
        with ctx.timed("construct"):
            trace = construct_K(g, parse_policy(config.policy), config.max_iterations, config.cycle_cap)
        state["trace"] = trace
        kg = trace.output
        details = {"iterations": trace.iterations, "added_edges": len(trace.added_edges),
                   "output_graph6": write_graph6(kg).decode(), "terminated": trace.terminated}
        if not trace.terminated:
            ctx.put("k_construction", Verdict.REFUTED, reason="iteration cap reached", **details)
        else:
            cuts = sorted(cut_vertices(kg))
            ok, offender = all_induced_cycles_mod3(kg, config.cycle_cap)
            if cuts or not ok:
                ctx.put("k_construction", Verdict.REFUTED, cut_vertices=cuts,
                        offending_cycle=list(offender.vertices) if offender else None, **details)
            else:
                ctx.put("k_construction", Verdict.HOLDS, **details)

        structures = find_structures(kg, config.cycle_cap)
        dom = [h for h in structures if is_domination_structure(kg, h)]
        state["structure"] = dom[0] if dom else None
        if g.n > config.structure_max_n:
            ctx.put("k_single_structure", Verdict.SKIPPED,
                    reason=f"n > {config.structure_max_n}", structures=len(structures))
        else:
            ok = len(structures) == 1 and bool(dom)
            ctx.put("k_single_structure", Verdict.HOLDS if ok else Verdict.REFUTED,
                    structures=len(structures), covers_all=bool(dom))

    ctx.guarded(("k_construction", "k_single_structure"), scheme_k_claims)

    label_claims = ("labelings_dominate", "labeling_is_minimum", "labeling_count_bound",
                    "labeled_sets_independent")

    def labeling_claims() -> None:
        if not deg3:
            for name in label_claims:
                ctx.put(name, Verdict.SKIPPED, reason=MIN_DEGREE_3)
            return
        h = state.get("structure")
        if "trace" not in state:
            return
        if h is None:
            for name in label_claims:
                ctx.put(name, Verdict.STRUCTURE_VIOLATION, reason="K(G) has no domination structure")
            return
        kg = state["trace"].output
        with ctx.timed("labeling"):
            enum = enumerate_labelings(kg, h)
        consistent = enum.consistent
        dom_sets, v_i = dominating_labelings(kg, enum.labelings)
        ctx.put("labelings_dominate", v_i, consistent=len(consistent),
                dominating=len(dom_sets), conflicts=enum.conflicts, tie_breaks=enum.tie_breaks)
        cy = candidate_Y(kg, enum.labelings, budget)
        state["Ys"] = list(cy.sets)
        ctx.put("labeling_is_minimum", cy.verdict, candidates=_sets(cy.sets), **cy.details)
        for y in cy.sets:
            ctx.candidates.append(CandidateSet("Y", tuple(sorted(y))))
        count = len(consistent)
        ctx.put("labeling_count_bound", Verdict.HOLDS if count <= g.n else Verdict.REFUTED,
                count=count, n=g.n, within_twice_n=count <= 2 * g.n, raw_attempts=enum.raw_attempts)
        bad = {str(sorted(y)): labeled_set_edges(kg, y) for y in cy.sets}
        bad = {k: [list(e) for e in v] for k, v in bad.items() if v}
        ctx.put("labeled_sets_independent", Verdict.REFUTED if bad else Verdict.HOLDS,
                checked=len(cy.sets), edges_inside=bad)

    ctx.guarded(label_claims, labeling_claims)

    def remark_claim() -> None:
        if gamma is None:
            ctx.put("remark_subset_dsets", Verdict.SKIPPED, reason="oracle budget")
            return
        results = {}
        for role, X in (("oracle", exact.witness), ("greedy", greedy_dominating_set(g))):
            chk = check_remark_R(g, X, budget)
            results[role] = {"verdict": chk.verdict.value, **chk.details}
        verdicts = {r["verdict"] for r in results.values()}
        if Verdict.REFUTED.value in verdicts:
            v = Verdict.REFUTED
        elif verdicts == {Verdict.HOLDS.value}:
            v = Verdict.HOLDS
        else:
            v = Verdict.SKIPPED
        ctx.put("remark_subset_dsets", v, **results)

    ctx.guarded(("remark_subset_dsets",), remark_claim)

    def extension_claims() -> None:
        if not deg3:
            ctx.put("labeling_extends_to_dset", Verdict.SKIPPED, reason=MIN_DEGREE_3)
            ctx.put("split_rule", Verdict.SKIPPED, reason=MIN_DEGREE_3)
            return
        if "Ys" not in state:
            reason = "no labeling candidates"
            ctx.put("labeling_extends_to_dset", Verdict.SKIPPED, reason=reason)
            ctx.put("split_rule", Verdict.SKIPPED, reason=reason)
            return
        p2 = check_P2(g, state["Ys"], budget)
        ctx.put("labeling_extends_to_dset", p2.verdict, **p2.details)
        if p2.witness is None:
            ctx.put("split_rule", Verdict.SKIPPED, reason="no Y contained in a minimum dominating set")
            return
        split = check_split_rule(g, p2.witness[0], budget)
        ctx.put("split_rule", split.verdict, **split.details)

    ctx.guarded(("labeling_extends_to_dset", "split_rule"), extension_claims)

    def cascade_claims() -> None:
        if not profile.is_cubic:
            ctx.put("cascade_structure", Verdict.SKIPPED, reason=CUBIC)
            ctx.put("cascade_optimal", Verdict.SKIPPED, reason=CUBIC)
            return
        cfg = config.solve_config()
        cfg.run_oracle = False
        with ctx.timed("cascade"):
            res = solve_cubic(g, cfg)
        ctx.candidates.append(CandidateSet("pipeline", tuple(sorted(res.candidate))))
        levels = [
            {"level": r.level, "n_before": r.graph_before.n, "Y": sorted(r.to_root[v] for v in r.Y_used),
             "g_prime_n": r.g_prime.n, "g_double_prime_n": r.g_double_prime.n,
             "W_prime": len(r.W_prime), "W_double_prime": len(r.W_double_prime),
             "branch": r.chosen_branch.value, "structural_check": r.structural_check.value,
             "classification": r.classification.value, "preferred_available": r.preferred_available,
             "min_degree_ok": r.min_degree_ok}
            for r in res.levels
        ]
        ctx.put("cascade_structure",
                Verdict.STRUCTURE_VIOLATION if res.violations else Verdict.HOLDS,
                violations=res.violations, levels=levels)
        size = len(res.candidate)
        if not res.dominates:
            verdict, solve = Verdict.REFUTED, SolveVerdict.NOT_DOMINATING
        elif gamma is None:
            verdict, solve = Verdict.SKIPPED, SolveVerdict.ORACLE_SKIPPED
        elif size == gamma:
            verdict = Verdict.HOLDS
            solve = SolveVerdict.STRUCTURE_VIOLATION if res.violations else SolveVerdict.MATCH
        else:
            verdict = Verdict.REFUTED
            solve = SolveVerdict.STRUCTURE_VIOLATION if res.violations else SolveVerdict.SUBOPTIMAL
        ctx.put("cascade_optimal", verdict, candidate=sorted(res.candidate), size=size,
                gamma=gamma, dominates=res.dominates, solve_verdict=solve.value)

    ctx.guarded(("cascade_structure", "cascade_optimal"), cascade_claims)

    return _document(ctx, graph_id or g6, input_format, g6, gamma)


def _document(ctx: _Ctx, graph_id: str, input_format: str, g6: str, gamma: int | None) -> ReportDocument:
    claims = [ctx.claims[name] for name in ctx.config.claims if name in ctx.claims]
    flagged = any(c.verdict in (Verdict.REFUTED, Verdict.STRUCTURE_VIOLATION) for c in claims)
    return ReportDocument(
        graph_id=graph_id,
        input_format=input_format,
        n=ctx.g.n,
        m=ctx.g.m,
        graph6=g6,
        claims=claims,
        candidate_sets=ctx.candidates,
        oracle_gamma=gamma,
        runtimes={k: round(v, 3) for k, v in sorted(ctx.runtimes.items())} if ctx.config.timings else {},
        counterexample=g6 if flagged else None,
    )
