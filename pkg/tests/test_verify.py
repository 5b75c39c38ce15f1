import json
from pathlib import Path

import pytest

from regtail.graphs import (
    SparsityContext,
    complete,
    cycle,
    from_edge_list,
    petersen,
    validate_pattern,
)
from regtail.structures import CoreParams
from regtail.verify import (
    GATING_CHECKS,
    CheckResult,
    check_alpha_count_bound,
    check_degree_product_strong_core,
    check_mixed_growth_exponent,
    check_seqcounting_exploratory,
    connected_graphs_up_to,
    connected_regular_graphs,
    cube_graph,
    report_jsonl,
    run_all,
    summary_table,
    _isomorphic,
)

FROZEN = Path(__file__).parent / "data" / "regular_graphs_frozen.json"


def test_connected_graph_catalogue():
    graphs = connected_graphs_up_to(5)
    assert len(graphs) == 30
    by_order = {}
    for g in graphs:
        by_order.setdefault(g.vertex_count, []).append(g)
        assert g.is_connected()
    assert {n: len(v) for n, v in by_order.items()} == {2: 1, 3: 2, 4: 6, 5: 21}
    # pairwise distinct up to isomorphism
    for i, a in enumerate(graphs):
        for b in graphs[i + 1 :]:
            if a.vertex_count == b.vertex_count and a.edge_count == b.edge_count:
                assert not _isomorphic(a, b)


def test_cube_graph_shape():
    g = cube_graph()
    assert g.vertex_count == 8
    assert g.is_regular() and g.max_degree() == 3
    assert g.bipartition() is not None
    assert g.is_connected()


def test_isomorphism_sanity():
    k4 = complete(4)
    shuffled = from_edge_list(4, [(3, 2), (3, 1), (3, 0), (2, 1), (2, 0), (1, 0)])
    assert _isomorphic(k4, shuffled)
    assert not _isomorphic(k4, cycle(4))
    relabelled_petersen = from_edge_list(
        10, [(9 - u, 9 - v) for u, v in petersen().edges]
    )
    assert _isomorphic(petersen(), relabelled_petersen)
    # same degree sequence, different triangle counts
    a = from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    b = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    assert not _isomorphic(a, b)


CENSUS = {
    (4, 3): 1,
    (5, 3): 0,  # odd degree sum
    (6, 3): 2,
    (7, 3): 0,
    (8, 3): 5,
    (5, 4): 1,
    (6, 4): 1,
    (7, 4): 2,
    (8, 4): 6,
    (8, 5): 3,
    (8, 6): 1,
    (8, 7): 1,
    (6, 2): 1,  # the cycle is the only connected 2-regular class
    (3, 2): 1,
}


def test_regular_graph_enumeration_census():
    for (n, d), expect in CENSUS.items():
        got = connected_regular_graphs(n, d)
        assert len(got) == expect, (n, d)
        for g in got:
            assert g.vertex_count == n
            assert g.is_regular() and (n == 0 or g.max_degree() == d)
            assert g.is_connected()
        for i, a in enumerate(got):
            for b in got[i + 1 :]:
                assert not _isomorphic(a, b)


def test_frozen_regular_graph_data_consistent():
    data = json.loads(FROZEN.read_text())
    expect = {"9,4": 16, "10,3": 19, "10,4": 59}
    assert {k: len(v) for k, v in data.items()} == expect
    for key, edge_lists in data.items():
        n, d = map(int, key.split(","))
        graphs = [from_edge_list(n, [tuple(e) for e in edges]) for edges in edge_lists]
        for g in graphs:
            assert g.is_regular() and g.max_degree() == d
            assert g.is_connected()
    # spot-check distinctness on the smallest family
    nine = [
        from_edge_list(9, [tuple(e) for e in edges]) for edges in data["9,4"]
    ]
    for i, a in enumerate(nine):
        for b in nine[i + 1 :]:
            assert not _isomorphic(a, b)


def test_gating_checkers_pass():
    for check in GATING_CHECKS:
        result = check()
        assert isinstance(result, CheckResult)
        assert result.passed, (result.check_id, result.violations[:3])
        assert result.instances > 0
        assert result.violations == []


def test_alpha_checker_counts_instances():
    result = check_alpha_count_bound(seed=101, graphs=5)
    assert result.passed
    assert result.instances > 0


def test_strong_core_checker_skips_rejected_instances():
    ctx = SparsityContext(2000, 0.0194)
    params = CoreParams(
        delta=1.0,
        eps=0.05,
        context=ctx,
        pattern=validate_pattern(complete(3)),
    )
    tiny = from_edge_list(2000, [(i, j) for i in range(6) for j in range(i + 1, 6)])
    result = check_degree_product_strong_core([("six-clique", tiny, params)])
    assert result.passed  # vacuously: nothing accepted, nothing violated
    assert result.instances == 0
    assert any("skipped" in obs for obs in result.observations)


def test_exploratory_checker_records_observations():
    result = check_seqcounting_exploratory()
    assert result.passed  # observational: never gates
    assert result.violations == []
    assert result.observations


def test_growth_exponent_reports_slopes():
    result = check_mixed_growth_exponent(ks=(5, 7, 9))
    assert result.passed
    assert any("fitted exponent" in obs for obs in result.observations)


def test_run_all_composition():
    results = run_all()
    ids = [r.check_id for r in results]
    assert len(ids) == len(set(ids))
    assert len(results) == len(GATING_CHECKS) + 1
    trimmed = run_all(include_exploratory=False)
    assert len(trimmed) == len(GATING_CHECKS)


def test_reports_are_deterministic():
    first = run_all()
    second = run_all()
    assert report_jsonl(first) == report_jsonl(second)
    assert summary_table(first) == summary_table(second)
    for line in report_jsonl(first).strip().split("\n"):
        record = json.loads(line)
        assert {"check", "instances", "violations", "observations"} <= set(record)


def test_summary_table_marks_failures():
    bad = CheckResult("made-up", 3, [("case", 1.0, 2.0)], [])
    table = summary_table([bad])
    assert "FAIL" in table
    good = CheckResult("made-up", 3, [], [])
    assert "FAIL" not in summary_table([good])
