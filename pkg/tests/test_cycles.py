from collections import Counter

import pytest
from hypothesis import given

import brute
from domstruct.cycles import (
    InducedCycle,
    Structure,
    all_induced_cycles_mod3,
    connecting_without_seams,
    enumerate_induced_cycles,
    find_structures,
    is_domination_structure,
    is_induced_cycle,
    seam_graph,
)
from domstruct.families import bowtie, complete_graph, cycle_graph, petersen
from domstruct.graph import Graph
from domstruct.verdicts import BudgetExceeded
from strategies import connected_graphs, graphs

# frozen from brute.induced_cycle_vertex_sets(petersen(), 6)
PETERSEN_LENGTHS = {5: 12, 6: 10}


def test_canonical_form_normalizes_rotation_and_reflection():
    assert InducedCycle.canonical([3, 2, 1, 0]).vertices == (0, 1, 2, 3)
    assert InducedCycle.canonical([2, 0, 1]).vertices == (0, 1, 2)
    assert InducedCycle.canonical([4, 0, 3, 1, 2]).vertices == (0, 3, 1, 2, 4)


def test_c6_has_one_cycle():
    cycles = enumerate_induced_cycles(cycle_graph(6))
    assert [c.vertices for c in cycles] == [(0, 1, 2, 3, 4, 5)]
    assert cycles[0].residue == 0


def test_k4_has_exactly_four_triangles():
    cycles = enumerate_induced_cycles(complete_graph(4))
    assert len(cycles) == 4 and all(c.length == 3 for c in cycles)
    assert {c.vertex_set for c in cycles} == brute.induced_cycle_vertex_sets(complete_graph(4))


def test_petersen_induced_cycles_up_to_six():
    cycles = enumerate_induced_cycles(petersen(), max_length=6)
    assert Counter(c.length for c in cycles) == PETERSEN_LENGTHS
    assert {c.vertex_set for c in cycles} == brute.induced_cycle_vertex_sets(petersen(), 6)


def test_petersen_frozen_counts_match_brute():
    sets = brute.induced_cycle_vertex_sets(petersen(), 6)
    assert Counter(len(s) for s in sets) == PETERSEN_LENGTHS


def test_enumeration_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_induced_cycles(petersen(), cap=5)


def test_seam_examples():
    t1, t2 = InducedCycle.canonical([0, 1, 2]), InducedCycle.canonical([1, 2, 3])
    assert connecting_without_seams(t1, t2)
    assert not connecting_without_seams(t1, InducedCycle.canonical([3, 4, 5]))
    a = InducedCycle.canonical([0, 1, 2, 3, 4, 5])
    b = InducedCycle.canonical([0, 6, 7, 3, 8, 9])
    assert not connecting_without_seams(a, b)


def test_single_shared_vertex_is_a_trivial_path():
    t1, t2 = InducedCycle.canonical([0, 1, 2]), InducedCycle.canonical([0, 3, 4])
    assert connecting_without_seams(t1, t2)
    assert not connecting_without_seams(t1, t2, allow_trivial=False)


def test_find_structures_examples():
    (h,) = find_structures(cycle_graph(6))
    assert [c.vertices for c in h.cycles] == [(0, 1, 2, 3, 4, 5)] and h.seam_edges == ()
    assert find_structures(cycle_graph(5)) == []
    (h,) = find_structures(complete_graph(4))
    assert len(h.cycles) == 4 and len(h.seam_edges) == 6


def test_bowtie_triangles_join_only_with_trivial_paths():
    assert len(find_structures(bowtie())) == 1
    assert len(find_structures(bowtie(), allow_trivial=False)) == 2


def test_is_domination_structure_examples():
    (h,) = find_structures(cycle_graph(6))
    assert is_domination_structure(cycle_graph(6), h)
    pendant = Graph.from_edges(7, cycle_graph(6).edges() + [(0, 6)])
    assert not is_domination_structure(pendant, h)
    (h,) = find_structures(complete_graph(4))
    assert is_domination_structure(complete_graph(4), h)


def test_all_induced_cycles_mod3_examples():
    assert all_induced_cycles_mod3(complete_graph(4)) == (True, None)
    ok, bad = all_induced_cycles_mod3(cycle_graph(5))
    assert not ok and bad.vertices == (0, 1, 2, 3, 4)
    assert all_induced_cycles_mod3(cycle_graph(6)) == (True, None)


@given(graphs(max_n=8))
def test_enumeration_matches_subset_oracle(g):
    cycles = enumerate_induced_cycles(g)
    sets = [c.vertex_set for c in cycles]
    assert len(sets) == len(set(sets))
    assert set(sets) == brute.induced_cycle_vertex_sets(g)


@given(graphs(max_n=8))
def test_enumerated_cycles_are_induced_and_canonical(g):
    for c in enumerate_induced_cycles(g):
        vs = c.vertices
        assert c.length >= 3 and is_induced_cycle(g, vs)
        for i, v in enumerate(vs):
            for j, u in enumerate(vs):
                if i < j:
                    consecutive = j - i == 1 or (i == 0 and j == len(vs) - 1)
                    assert g.has_edge(u, v) == consecutive
        assert vs == InducedCycle.canonical(vs[::-1]).vertices


@given(graphs(max_n=8))
def test_seam_relation_is_symmetric(g):
    cycles = enumerate_induced_cycles(g)
    for a in cycles:
        for b in cycles:
            assert connecting_without_seams(a, b) == connecting_without_seams(b, a)


@given(connected_graphs(max_n=8))
def test_structures_have_residue_zero_and_connected_seams(g):
    structures = find_structures(g)
    for h in structures:
        assert isinstance(h, Structure) and h.maximal
        assert all(c.residue == 0 for c in h.cycles)
        nbrs = h.seam_neighbors()
        seen, stack = {0}, [0]
        while stack:
            for b in nbrs[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        assert len(seen) == len(h.cycles)
    # the structures partition the residue-0 cycles and none could be merged
    zero = [c for c in enumerate_induced_cycles(g) if c.residue == 0]
    assert sorted(c for h in structures for c in h.cycles) == sorted(zero)
    for i, h1 in enumerate(structures):
        for h2 in structures[i + 1:]:
            assert not any(connecting_without_seams(a, b) for a in h1.cycles for b in h2.cycles)
    assert len(seam_graph(zero)) == sum(len(h.seam_edges) for h in structures)
