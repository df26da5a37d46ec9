"""Acceptance suite: one test per criterion, each marked with
``criterion(number, title)``. The terminal summary prints a PASS/FAIL line
per criterion (see conftest.py)."""

import time

import networkx as nx
import pytest

import brute
from domstruct.cycles import all_induced_cycles_mod3, find_structures, is_domination_structure
from domstruct.families import bowtie, complete_bipartite, complete_graph, cube, cycle_graph, path_graph, petersen, prism
from domstruct.formats import parse_graph6, write_graph6
from domstruct.graph import Graph, cut_vertices, is_dominating
from domstruct.harness.cli import main
from domstruct.harness.corpus import load_source
from domstruct.harness.generate import cubic_catalog, random_connected_graph
from domstruct.harness.verify import RunConfig, verify_graph
from domstruct.labeling import candidate_Y, dominating_labelings, enumerate_labelings
from domstruct.oracle import gamma_cycle, gamma_path, min_dominating_set_exact
from domstruct.pipeline import SolveVerdict, check_P2, solve_cubic
from domstruct.scheme_k import StepKind, construct_K
from domstruct.verdicts import Verdict

CUBIC_CORPUS = "gen:n=4-14,count=100,seed=1"
FACT_CLAIMS = ("k_construction", "labelings_dominate", "labeling_is_minimum", "labeling_count_bound")


def small_connected_graphs():
    """Every connected graph on 1..7 vertices (networkx atlas) plus seeded
    random connected graphs on 8 vertices."""
    out = []
    for h in nx.graph_atlas_g()[1:]:
        if nx.is_connected(h):
            out.append(Graph.from_edges(h.number_of_nodes(), h.edges()))
    for seed in range(200):
        out.append(random_connected_graph(8, 0.2 + 0.6 * (seed % 5) / 4, seed))
    return out


@pytest.fixture(scope="module")
def cubic_corpus():
    t0 = time.perf_counter()
    entries = load_source(CUBIC_CORPUS)
    config = RunConfig(claims=FACT_CLAIMS)
    reports = [verify_graph(e.graph, config, e.graph_id, e.input_format) for e in entries]
    return entries, reports, config, time.perf_counter() - t0


def claim(doc, name):
    return next(c for c in doc.claims if c.name == name)


@pytest.mark.criterion(1, "oracle matches subset sweep on >= 500 connected graphs, n <= 8")
def test_oracle_soundness():
    t0 = time.perf_counter()
    graphs = small_connected_graphs()
    assert len(graphs) >= 500
    assert max(g.n for g in graphs) == 8
    for g in graphs:
        res = min_dominating_set_exact(g)
        assert not res.budget_hit
        assert res.gamma == brute.gamma_sweep(g), write_graph6(g)
        assert is_dominating(g, res.witness) and len(res.witness) == res.gamma
    elapsed = time.perf_counter() - t0
    print(f"criterion 1: {len(graphs)} graphs in {elapsed:.1f}s")
    assert elapsed < 120


@pytest.mark.criterion(2, "closed forms equal the search oracle for n <= 15")
def test_closed_forms():
    t0 = time.perf_counter()
    for n in range(1, 16):
        assert gamma_path(n) == min_dominating_set_exact(path_graph(n)).gamma
        if n >= 3:
            assert gamma_cycle(n) == min_dominating_set_exact(cycle_graph(n)).gamma
    assert time.perf_counter() - t0 < 5


@pytest.mark.criterion(3, "scheme K fixtures: C4, C5, bowtie, C6")
def test_scheme_k_fixtures():
    t0 = time.perf_counter()
    c4 = construct_K(cycle_graph(4))
    assert c4.iterations == 1 and c4.output == complete_graph(4)

    c5 = construct_K(cycle_graph(5))
    first = c5.steps[0]
    assert first.kind is StepKind.CYCLE_MOD2
    r = first.roles
    expected = {tuple(sorted(e)) for e in ((r["w1"], r["w2"]), (r["w1"], r["alpha"]), (r["w"], r["alpha"]))}
    assert set(first.added) == expected and len(first.added) == 3
    assert c5.iterations == 1 and c5.output.m == 8
    assert not cut_vertices(c5.output) and all_induced_cycles_mod3(c5.output)[0]

    bt = construct_K(bowtie())
    assert bt.output == complete_graph(5)
    assert {len(s) for s in brute.induced_cycle_vertex_sets(bt.output)} == {3}

    c6 = construct_K(cycle_graph(6))
    assert c6.iterations == 0 and c6.output == cycle_graph(6) and c6.terminated
    assert time.perf_counter() - t0 < 1


@pytest.mark.criterion(4, "K(G) on 100 random cubic graphs: 2-connected, residue-0 induced cycles")
def test_k_construction_on_cubic_corpus(cubic_corpus):
    entries, reports, config, elapsed = cubic_corpus
    assert len(entries) == 100 and max(e.graph.n for e in entries) <= 14
    tally = {}
    for entry, doc in zip(entries, reports):
        c = claim(doc, "k_construction")
        assert c.verdict in (Verdict.HOLDS, Verdict.REFUTED, Verdict.BUDGET_EXCEEDED)
        tally[c.verdict.value] = tally.get(c.verdict.value, 0) + 1
        # independent re-check of the terminated output
        if c.verdict is not Verdict.BUDGET_EXCEEDED and c.details["terminated"]:
            kg = parse_graph6(c.details["output_graph6"])
            h = nx.Graph(kg.edges())
            two_connected = kg.n < 3 or nx.is_biconnected(h)
            residue_zero = all(len(s) % 3 == 0 for s in brute.induced_cycle_vertex_sets(kg)) \
                if kg.n <= 10 else all_induced_cycles_mod3(kg)[0]
            assert (c.verdict is Verdict.HOLDS) == (two_connected and residue_zero)
        if c.verdict is Verdict.REFUTED:
            again = verify_graph(parse_graph6(doc.counterexample), config, entry.graph_id)
            assert claim(again, "k_construction").verdict is Verdict.REFUTED
    print(f"criterion 4: {tally}")
    assert elapsed < 600


@pytest.mark.criterion(5, "labelings on the same corpus; C6 and K4 hold; counts <= 2|V|")
def test_labelings_on_cubic_corpus(cubic_corpus):
    entries, reports, _, elapsed = cubic_corpus
    for g in (cycle_graph(6), complete_graph(4)):
        (h,) = find_structures(g)
        enum = enumerate_labelings(g, h)
        assert dominating_labelings(g, enum.labelings)[1] is Verdict.HOLDS
        assert candidate_Y(g, enum.labelings).verdict is Verdict.HOLDS

    tally = {"i": {}, "ii": {}}
    for entry, doc in zip(entries, reports):
        ci = claim(doc, "labelings_dominate")
        cii = claim(doc, "labeling_is_minimum")
        tally["i"][ci.verdict.value] = tally["i"].get(ci.verdict.value, 0) + 1
        tally["ii"][cii.verdict.value] = tally["ii"].get(cii.verdict.value, 0) + 1
        count = claim(doc, "labeling_count_bound")
        if count.verdict in (Verdict.HOLDS, Verdict.REFUTED):
            assert count.details["count"] <= 2 * entry.graph.n

        # recompute claim (i) straight from the definition
        kg = construct_K(entry.graph).output
        dom = [h for h in find_structures(kg) if is_domination_structure(kg, h)]
        if not dom:
            assert ci.verdict is Verdict.STRUCTURE_VIOLATION
            continue
        consistent = enumerate_labelings(kg, dom[0]).consistent
        assert ci.details["consistent"] == len(consistent)
        if consistent:
            expected = all(brute.dominates(kg, lab.labeled) for lab in consistent)
            assert ci.verdict is (Verdict.HOLDS if expected else Verdict.REFUTED)
        else:
            assert ci.verdict is Verdict.SKIPPED
    print(f"criterion 5: {tally}")
    assert elapsed < 600


@pytest.mark.criterion(6, "P2 and the cubic cascade on every connected cubic graph, n <= 10")
def test_cascade_on_cubic_catalog():
    t0 = time.perf_counter()
    fixtures = [(complete_graph(4), 1), (complete_bipartite(3, 3), 2), (prism(), 2),
                (cube(), 2), (petersen(), 3)]
    for g, gamma in fixtures:
        assert brute.gamma(g) == gamma
        assert min_dominating_set_exact(g).gamma == gamma

    catalog = cubic_catalog()
    assert [sum(g.n == n for g in catalog) for n in (4, 6, 8, 10)] == [1, 2, 5, 19]
    tally = {"P2": {}, "solve": {}}
    for g in catalog + [g for g, _ in fixtures]:
        doc = verify_graph(g, RunConfig(claims=("labeling_is_minimum",)))
        Ys = claim(doc, "labeling_is_minimum").details.get("candidates", [])
        p2 = check_P2(g, Ys)
        assert p2.verdict in (Verdict.HOLDS, Verdict.REFUTED)
        tally["P2"][p2.verdict.value] = tally["P2"].get(p2.verdict.value, 0) + 1

        res = solve_cubic(g)
        gamma = brute.gamma(g) if g.n <= 8 else min_dominating_set_exact(g).gamma
        assert res.oracle_gamma == gamma
        # never a silent acceptance of a non-dominating candidate
        assert res.dominates == is_dominating(g, res.candidate)
        if not res.dominates:
            assert res.verdict is SolveVerdict.NOT_DOMINATING
        else:
            assert len(res.candidate) >= gamma
            if res.verdict is SolveVerdict.MATCH:
                assert len(res.candidate) == gamma
        tally["solve"][res.verdict.value] = tally["solve"].get(res.verdict.value, 0) + 1
    print(f"criterion 6: {tally}")
    assert time.perf_counter() - t0 < 600


@pytest.mark.criterion(7, "two corpus runs give byte-identical JSON")
def test_corpus_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["corpus", "--input", CUBIC_CORPUS, "--json", str(a)]) == 0
    assert main(["corpus", "--input", CUBIC_CORPUS, "--json", str(b), "--jobs", "2"]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_bytes()) > 1000


@pytest.mark.criterion(8, "graph6 round-trip over the full corpus; C~ and Bw fixtures")
def test_graph6_fidelity(cubic_corpus):
    entries, _, _, _ = cubic_corpus
    pool = [e.graph for e in entries] + cubic_catalog() + small_connected_graphs()
    for g in pool:
        assert parse_graph6(write_graph6(g)) == g
    assert parse_graph6("C~") == complete_graph(4) and write_graph6(complete_graph(4)) == b"C~"
    assert parse_graph6("Bw") == complete_graph(3) and write_graph6(complete_graph(3)) == b"Bw"
