import pytest
from hypothesis import given, strategies as st

import brute
from domstruct.families import (
    complete_bipartite,
    complete_graph,
    cube,
    cycle_graph,
    disjoint_union,
    path_graph,
    petersen,
    prism,
)
from domstruct.graph import Graph, GraphInputError, closed_neighborhood, is_dominating
from domstruct.harness.generate import cubic_catalog, random_cubic
from domstruct.pipeline import (
    Branch,
    SolveConfig,
    SolveVerdict,
    StructuralCheck,
    build_G_double_prime,
    build_G_prime,
    check_P2,
    check_split_rule,
    classify_components,
    combine,
    select_Y,
    solve_cubic,
    solve_special,
)
from domstruct.verdicts import Verdict

SMALL_CUBIC = [g for g in cubic_catalog() if g.n <= 8]


def test_g_prime_examples():
    g, ids = build_G_prime(complete_graph(4), {0})
    assert g == complete_graph(3) and ids == (1, 2, 3)
    g, ids = build_G_prime(cycle_graph(6), {0})
    assert g == cycle_graph(5) and ids == (1, 2, 3, 4, 5)
    assert build_G_prime(petersen(), set()) == (petersen(), tuple(range(10)))


def test_g_double_prime_examples():
    g, ids = build_G_double_prime(cycle_graph(6), {0})
    assert g == path_graph(3) and ids == (2, 3, 4)
    g, ids = build_G_double_prime(complete_graph(4), {0})
    assert g.n == 0 and ids == ()
    assert build_G_double_prime(petersen(), set()) == (petersen(), tuple(range(10)))


def test_combine_examples():
    Y = {9}
    X, b = combine(Y, {1, 2}, {3, 4, 5})
    assert X == {9, 1, 2} and b is Branch.PRIME
    X, b = combine(Y, {1, 2, 3}, {4, 5, 6})
    assert X == {9, 4, 5, 6} and b is Branch.DOUBLE_PRIME
    assert combine(Y, set(), set()) == ({9}, Branch.DOUBLE_PRIME)


@given(st.frozensets(st.integers(0, 30)), st.frozensets(st.integers(0, 30)),
       st.frozensets(st.integers(0, 30)))
def test_combine_uses_strict_inequality(Y, Z1, Z2):
    X, b = combine(Y, Z1, Z2)
    if len(Z1) < len(Z2):
        assert b is Branch.PRIME and X == Y | Z1
    else:
        assert b is Branch.DOUBLE_PRIME and X == Y | Z2


def test_check_P2_examples():
    c6 = cycle_graph(6)
    r = check_P2(c6, [{0, 3}, {1, 4}, {2, 5}])
    assert r.verdict is Verdict.HOLDS and r.witness == (frozenset({0, 3}), frozenset({0, 3}))
    assert check_P2(c6, []).verdict is Verdict.REFUTED
    assert check_P2(c6, [{0, 3}], budget=0).verdict is Verdict.SKIPPED


def test_check_P2_refutation_lists_all_dsets():
    r = check_P2(cycle_graph(6), [{0, 1}])
    assert r.verdict is Verdict.REFUTED
    assert r.details["dsets"] == [[0, 3], [1, 4], [2, 5]]


def test_solve_special_examples():
    w, check = solve_special(disjoint_union(path_graph(4), cycle_graph(6)))
    assert len(w) == 4 and check is StructuralCheck.PATHS_CYCLES
    assert is_dominating(disjoint_union(path_graph(4), cycle_graph(6)), w)
    w, check = solve_special(Graph.empty(5))
    assert w == frozenset(range(5)) and check is StructuralCheck.INDEPENDENT
    g = disjoint_union(complete_graph(4), path_graph(2))
    w, check = solve_special(g)
    assert check is StructuralCheck.VIOLATED and is_dominating(g, w)


def test_solve_special_paths_only():
    w, check = solve_special(disjoint_union(path_graph(5), path_graph(1)))
    assert check is StructuralCheck.PATHS and len(w) == 3


def test_classify_components():
    g = disjoint_union(path_graph(3), cycle_graph(4), Graph.empty(1), complete_graph(4))
    assert [k for k, _ in classify_components(g)] == ["path", "cycle", "isolated", "other"]


@given(st.lists(st.tuples(st.sampled_from(["p", "c"]), st.integers(1, 12)), max_size=5))
def test_solve_special_is_optimal_on_paths_and_cycles(parts):
    pieces = [path_graph(k) if kind == "p" else cycle_graph(max(k, 3)) for kind, k in parts]
    g = disjoint_union(*pieces) if pieces else Graph.empty(0)
    w, check = solve_special(g)
    assert check is not StructuralCheck.VIOLATED
    assert is_dominating(g, w)
    assert len(w) == sum(-(-p.n // 3) for p in pieces)


def test_split_rule_example():
    r = check_split_rule(cycle_graph(6), {0})
    assert r.verdict is Verdict.HOLDS
    assert r.details["branch"] == "DOUBLE_PRIME" and r.details["combined_size"] == 2


def test_solve_cubic_k4():
    res = solve_cubic(complete_graph(4))
    assert len(res.candidate) == 1 and res.oracle_gamma == 1
    assert res.verdict is SolveVerdict.MATCH and res.dominates


@pytest.mark.parametrize("g, gamma", [(complete_bipartite(3, 3), 2), (prism(), 2), (petersen(), 3)],
                         ids=["k33", "prism", "petersen"])
def test_solve_cubic_graded_against_oracle(g, gamma):
    res = solve_cubic(g)
    assert res.oracle_gamma == gamma == brute.gamma(g)
    assert res.dominates == is_dominating(g, res.candidate)
    assert res.verdict in set(SolveVerdict)
    if res.verdict is SolveVerdict.MATCH:
        assert len(res.candidate) == gamma and not res.violations


def test_solve_cubic_reports_structure_violation_on_cube():
    res = solve_cubic(cube())
    assert res.verdict is SolveVerdict.STRUCTURE_VIOLATION
    assert any("level 0" in v for v in res.violations)


def test_solve_cubic_rejects_bad_input():
    with pytest.raises(GraphInputError):
        solve_cubic(cycle_graph(6))
    with pytest.raises(GraphInputError):
        solve_cubic(disjoint_union(complete_graph(4), complete_graph(4)))


def test_all_Y_never_worse_than_first():
    for g in SMALL_CUBIC:
        first = solve_cubic(g, SolveConfig(run_oracle=False))
        every = solve_cubic(g, SolveConfig(all_Y=True, run_oracle=False))
        assert len(every.candidate) <= len(first.candidate)


def test_select_Y_preference_recorded():
    sel = select_Y(cycle_graph(6), prefer=frozenset({1}))
    assert sel.Y & {1} and sel.preferred_available is True
    assert select_Y(cycle_graph(6)).preferred_available is None


def check_levels(g, res):
    for rec in res.levels:
        h = rec.graph_before
        Y = rec.Y_used
        assert len(rec.to_root) == h.n
        assert set(rec.g_prime_ids) == set(range(h.n)) - Y
        assert not set(rec.g_double_prime_ids) & closed_neighborhood(h, Y)
        assert set(rec.g_double_prime_ids) == set(range(h.n)) - closed_neighborhood(h, Y)
        assert [r.level for r in res.levels] == sorted(r.level for r in res.levels)
    if all(r.chosen_branch is Branch.DOUBLE_PRIME for r in res.levels):
        assert res.dominates
    assert res.dominates == is_dominating(g, res.candidate)
    if not res.dominates:
        assert res.verdict is SolveVerdict.NOT_DOMINATING


@pytest.mark.parametrize("g", SMALL_CUBIC, ids=lambda g: f"n{g.n}")
def test_level_invariants_on_small_catalog(g):
    check_levels(g, solve_cubic(g))


@given(st.sampled_from([4, 6, 8, 10, 12]), st.integers(0, 10**6))
def test_level_invariants_on_random_cubic(n, seed):
    g = random_cubic(n, seed)
    res = solve_cubic(g, SolveConfig(run_oracle=False))
    check_levels(g, res)
    assert res.verdict in (SolveVerdict.ORACLE_SKIPPED, SolveVerdict.STRUCTURE_VIOLATION,
                           SolveVerdict.NOT_DOMINATING)
