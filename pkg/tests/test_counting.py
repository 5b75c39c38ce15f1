import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regtail.counting import (
    CopyBudgetExceededError,
    IsolatedPatternVertexError,
    copy_edge_lists,
    count_hom,
    count_K12_centered,
    count_labelled,
    count_N11,
    count_paths_signed,
    count_through_edge,
    count_with_edges,
    expected_count,
    low_degree_vertices,
)
from regtail.graphs import (
    SparsityContext,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    empty,
    from_edge_list,
    path,
    petersen,
    star,
    validate_pattern,
)

from conftest import (
    oracle_count_hom,
    oracle_count_injective,
    oracle_simple_paths,
    random_graph,
)


def test_frozen_small_counts():
    assert count_labelled(cycle(4), complete_bipartite(2, 3)) == 24
    assert count_labelled(complete(3), complete(4)) == 24
    assert count_labelled(complete(3), petersen()) == 0
    assert count_labelled(complete(3), complete(3)) == 6
    assert count_labelled(cycle(5), petersen()) == 120
    assert count_labelled(petersen(), petersen()) == 120


def test_frozen_hom_counts():
    assert count_hom(cycle(4), complete(3)) == 18
    assert count_hom(complete(3), complete(3)) == 6
    # closed form: Hom(K2, G) = 2 e(G)
    assert count_hom(from_edge_list(2, [(0, 1)]), petersen()) == 30


def test_pattern_larger_than_host():
    assert count_labelled(complete(4), complete(3)) == 0


def test_isolated_pattern_vertex():
    h = empty(3)
    with pytest.raises(IsolatedPatternVertexError):
        count_labelled(h, complete(4))
    lonely = from_edge_list(3, [(0, 1)])  # vertex 2 isolated
    with pytest.raises(IsolatedPatternVertexError):
        count_labelled(lonely, complete(4))
    # homomorphisms absorb isolated vertices as free choices
    assert count_hom(lonely, complete(4)) == 12 * 4


def test_oracle_equivalence_injective(rng):
    for _ in range(60):
        h = random_graph(rng, rng.randint(2, 5), rng.uniform(0.3, 0.9))
        if not all(h.degree(v) for v in range(h.vertex_count)):
            continue
        g = random_graph(rng, rng.randint(2, 7), rng.uniform(0.2, 0.8))
        assert count_labelled(h, g) == oracle_count_injective(h, g)


def test_oracle_equivalence_hom(rng):
    for _ in range(25):
        h = random_graph(rng, rng.randint(2, 4), rng.uniform(0.4, 0.9))
        g = random_graph(rng, rng.randint(1, 5), rng.uniform(0.2, 0.8))
        assert count_hom(h, g) == oracle_count_hom(h, g)


def test_count_invariant_under_host_relabelling(rng):
    h = validate_pattern(cycle(4))
    for _ in range(20):
        g = random_graph(rng, 8, 0.4)
        perm = list(range(8))
        rng.shuffle(perm)
        relabelled = from_edge_list(8, [(perm[u], perm[v]) for u, v in g.edges])
        assert count_labelled(h, g) == count_labelled(h, relabelled)


def test_per_edge_sums_to_pattern_edge_multiple(rng):
    k3 = validate_pattern(complete(3))
    for _ in range(20):
        g = random_graph(rng, 8, 0.5)
        report = count_with_edges(k3, g)
        assert report.per_edge is not None
        assert set(report.per_edge) == set(g.edges)
        assert sum(report.per_edge.values()) == 3 * report.total


def test_count_through_edge_matches_report():
    g = complete(5)
    report = count_with_edges(complete(3), g)
    for e in g.edges:
        assert count_through_edge(complete(3), g, e) == report.per_edge[e]
        assert report.per_edge[e] == 18  # 6 orderings times 3 third vertices
    with pytest.raises(ValueError):
        count_through_edge(complete(3), g, (0, 7))


def test_copy_edge_lists_enumerates_labelled_copies():
    lists = copy_edge_lists(complete(3), complete(4))
    assert len(lists) == count_labelled(complete(3), complete(4)) == 24
    for edges in lists:
        assert len(edges) == 3
        assert all(a < b for a, b in edges)
    # each unordered triangle shows up once per automorphism
    assert len({frozenset(edges) for edges in lists}) == 4
    with pytest.raises(CopyBudgetExceededError):
        copy_edge_lists(complete(3), complete(5), max_copies=3)


def test_low_degree_vertices():
    g = star(4)
    assert low_degree_vertices(g, 1) == frozenset({1, 2, 3, 4})
    assert low_degree_vertices(g, 4) == frozenset(range(5))


def test_count_N11_consistency(rng):
    k3 = validate_pattern(complete(3))
    for _ in range(15):
        g = random_graph(rng, 8, 0.45)
        for D in (2, 3):
            with_low, only_low, mixed = count_N11(k3, g, D)
            assert with_low == only_low + mixed
            assert 0 <= with_low <= count_labelled(k3, g)


def test_count_N11_split_hand_case():
    # two triangles sharing vertex 2; hang two pendants on vertex 2 so it
    # crosses degree threshold 2 while all others stay low
    g = from_edge_list(
        7, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (2, 5), (2, 6)]
    )
    with_low, only_low, mixed = count_N11(complete(3), g, 2)
    assert (with_low, only_low, mixed) == (12, 0, 12)


def test_paths_signed_partition_total(rng):
    # summing over all signatures recovers the plain simple-path count
    for _ in range(12):
        g = random_graph(rng, 7, 0.5)
        v1, v2 = 0, 1
        for ell in (1, 2, 3):
            total = sum(
                count_paths_signed(g, s, v1, v2, 2)
                for s in product((0, 1), repeat=ell)
            )
            assert total == len(oracle_simple_paths(g, v1, v2, ell))


def test_paths_signed_classification():
    # path 0-1-2 with all degrees <= 2: only the all-zero signature counts
    g = path(2)
    assert count_paths_signed(g, (0, 0), 0, 2, 2) == 1
    assert count_paths_signed(g, (0, 1), 0, 2, 2) == 0
    assert count_paths_signed(g, (1, 0), 0, 2, 2) == 0
    # raise threshold pressure: with D=1 the middle vertex is high
    assert count_paths_signed(g, (1, 1), 0, 2, 1) == 1
    assert count_paths_signed(g, (0, 0), 0, 2, 1) == 0


def test_paths_signed_validation():
    g = path(3)
    with pytest.raises(ValueError):
        count_paths_signed(g, (), 0, 1, 2)
    with pytest.raises(ValueError):
        count_paths_signed(g, (2,), 0, 1, 2)
    assert count_paths_signed(g, (0,), 1, 1, 2) == 0


def test_count_K12_centered():
    g = star(4)
    # center 0 has degree 4: 4*3 ordered cherries; leaves contribute none
    assert count_K12_centered(g, {0}) == 12
    assert count_K12_centered(g, {1, 2}) == 0
    # leaves must land outside U, so U = everything kills every cherry
    assert count_K12_centered(g, set(range(5))) == 0
    with pytest.raises(ValueError):
        count_K12_centered(g, {9})


def test_expected_count_formula():
    k3 = validate_pattern(complete(3))
    ctx = SparsityContext(30, 0.2)
    assert expected_count(k3, ctx) == pytest.approx(30 * 29 * 28 * 0.2**3)
    with pytest.raises(ValueError):
        expected_count(k3, SparsityContext(2, 0.2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_disconnected_pattern_multiplies(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(4, 7), 0.6)
    h = disjoint_union(complete(2), complete(2))
    direct = count_labelled(h, g)
    assert direct == oracle_count_injective(h, g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_per_edge_nonnegative_and_bounded(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(3, 8), 0.5)
    c4 = validate_pattern(cycle(4))
    report = count_with_edges(c4, g)
    for value in report.per_edge.values():
        assert 0 <= value <= report.total
