import math
from fractions import Fraction
from itertools import combinations

import pytest

from regtail.counting import count_labelled
from regtail.graphs import (
    SparsityContext,
    complete,
    cycle,
    from_edge_list,
    validate_pattern,
)
from regtail.independence import tilted_root
from regtail.ratefn import (
    InfeasibleFamilyError,
    UnsupportedRegimeError,
    asymptotic_conditional_gain,
    c4_mu,
    classify_regime,
    exact_conditional_expectation,
    is_pre_seed,
    plant,
    rate_function,
    variational_upper_bound,
)
from regtail.structures import CoreParams

K3 = validate_pattern(complete(3))
C4 = validate_pattern(cycle(4))


def test_regime_boundaries():
    # density scale n p^(degree/2) against sqrt(n) and log-power floor
    assert classify_regime(K3, SparsityContext(100, 0.5)).tag == "dense-localized"
    assert (
        classify_regime(K3, SparsityContext(16, 0.25)).tag == "clique-only-boundary"
    )
    assert (
        classify_regime(K3, SparsityContext(10**4, 0.005)).tag == "sparse-localized"
    )
    assert classify_regime(K3, SparsityContext(10**4, 5e-4)).tag == "poisson"


def test_regime_echoes_scales():
    r = classify_regime(K3, SparsityContext(10**4, 0.005))
    assert r.density_scale == pytest.approx(50.0)
    assert r.sqrt_n == pytest.approx(100.0)
    assert r.poisson_ceiling == pytest.approx(math.log(10**4))


def test_rate_dense_takes_minimum():
    ctx = SparsityContext(100, 0.5)
    value, regime = rate_function(K3, 1.0, ctx)
    assert regime.tag == "dense-localized"
    assert value == pytest.approx(1.0 / 3.0, abs=1e-12)
    value10, _ = rate_function(K3, 10.0, ctx)
    assert value10 == pytest.approx(0.5 * 10.0 ** (2.0 / 3.0), abs=1e-12)
    vc4, _ = rate_function(C4, 1.0, ctx)
    assert vc4 == pytest.approx(min(tilted_root(C4, 1.0), 0.5), abs=1e-12)
    assert vc4 == pytest.approx(0.22474487139158905, abs=1e-10)


def test_rate_sparse_is_clique_cost():
    ctx = SparsityContext(10**4, 0.005)
    value, regime = rate_function(K3, 1.0, ctx)
    assert regime.tag == "sparse-localized"
    assert value == pytest.approx(0.5)
    value, _ = rate_function(K3, 8.0, ctx)
    assert value == pytest.approx(0.5 * 8.0 ** (2.0 / 3.0))


def test_rate_refuses_out_of_scope_regimes():
    with pytest.raises(UnsupportedRegimeError):
        rate_function(K3, 1.0, SparsityContext(10**4, 5e-4))
    with pytest.raises(UnsupportedRegimeError):
        rate_function(K3, 1.0, SparsityContext(16, 0.25))
    with pytest.raises(ValueError):
        rate_function(K3, 0.0, SparsityContext(100, 0.5))


def oracle_completion_expectation(g, h, ctx):
    """Average N(h, g + S) over all completions S of the missing edges,
    weighted by the exact Fraction edge probability."""
    p = Fraction(ctx.p)
    n = ctx.n
    missing = [
        (u, v)
        for u, v in combinations(range(n), 2)
        if (u, v) not in g.edge_set()
    ]
    total = Fraction(0)
    for k in range(len(missing) + 1):
        for extra in combinations(missing, k):
            host = from_edge_list(n, list(g.edges) + list(extra))
            cnt = count_labelled(h, host)
            if cnt:
                total += (
                    p**k * (1 - p) ** (len(missing) - k) * cnt
                )
    return total


def test_exact_conditional_expectation_vs_completion_oracle():
    ctx = SparsityContext(5, 0.3)
    for edges in ([], [(0, 1)], [(0, 1), (1, 2)], [(0, 1), (1, 2), (0, 2)]):
        g = from_edge_list(5, edges)
        got = exact_conditional_expectation(g, K3, ctx, exact=True)
        assert isinstance(got, Fraction)
        assert got == oracle_completion_expectation(g, K3, ctx)
        assert exact_conditional_expectation(g, K3, ctx) == pytest.approx(
            float(got)
        )


def test_exact_conditional_expectation_empty_graph_is_unconditional():
    ctx = SparsityContext(30, 0.2)
    g = from_edge_list(30, [])
    expect = 30 * 29 * 28 * Fraction(0.2) ** 3
    assert exact_conditional_expectation(g, K3, ctx, exact=True) == expect


def test_exact_conditional_expectation_validation():
    ctx = SparsityContext(10, 0.2)
    with pytest.raises(ValueError):
        exact_conditional_expectation(from_edge_list(9, []), K3, ctx)
    with pytest.raises(ValueError):
        exact_conditional_expectation(
            from_edge_list(2, []), K3, SparsityContext(2, 0.2)
        )


def test_gain_single_edge_closed_form():
    # one planted edge: three single-edge pattern subsets, two labelled
    # placements each, n^(3-2) p^(3-1) completions
    n, p = 50, 0.1
    ctx = SparsityContext(n, p)
    g = from_edge_list(n, [(0, 1)])
    assert asymptotic_conditional_gain(g, K3, ctx) == pytest.approx(
        6 * (1 - p) * n * p**2
    )


def test_gain_empty_graph_is_zero():
    ctx = SparsityContext(20, 0.3)
    assert asymptotic_conditional_gain(from_edge_list(20, []), K3, ctx) == 0.0


def test_gain_tracks_exact_difference():
    # the sum with plain powers of n upper-bounds the exact surplus and,
    # for a triangle-free plant at small p, lands within a few percent
    ctx = SparsityContext(100, 0.05)
    g = from_edge_list(100, [(0, 1), (1, 2), (2, 3)])
    exact = exact_conditional_expectation(g, K3, ctx, exact=True)
    base = Fraction(100 * 99 * 98) * Fraction(ctx.p) ** 3
    surplus = float(exact - base)
    gain = asymptotic_conditional_gain(g, K3, ctx)
    assert gain >= surplus - 1e-9
    assert gain == pytest.approx(surplus, rel=0.05)


def test_plant_clique_and_bipartite_closed_forms():
    ctx = SparsityContext(50, 0.1)
    clique = plant(("clique", 7), ctx)
    assert clique.realized.vertex_count == 50
    assert clique.realized.edge_count == 21
    bip = plant(("bipartite", 3, 4), ctx)
    assert bip.realized.edge_count == 12
    assert bip.realized.max_degree() == 4


def test_plant_hub_touches_everything():
    ctx = SparsityContext(30, 0.1)
    hub = plant(("hub", 4), ctx)
    g = hub.realized
    assert g.edge_count == 4 * 26 + 6
    for v in range(4):
        assert g.degree(v) == 29
    for v in range(4, 30):
        assert g.degree(v) == 4


def test_plant_union_uses_fresh_blocks():
    ctx = SparsityContext(40, 0.1)
    ps = plant(("union", (("clique", 5), ("bipartite", 2, 3))), ctx)
    g = ps.realized
    assert g.edge_count == 10 + 6
    # blocks are vertex-disjoint: degrees 4 on the clique, then 3,3,2,2,2
    assert sorted(g.degree(v) for v in range(10)) == [2, 2, 2, 3, 3, 4, 4, 4, 4, 4]


def test_plant_errors():
    ctx = SparsityContext(10, 0.1)
    with pytest.raises(ValueError):
        plant(("hub", 11), ctx)
    with pytest.raises(ValueError):
        plant(("clique", 20), ctx)
    with pytest.raises(ValueError):
        plant(("ring", 3), ctx)
    with pytest.raises(ValueError):
        plant(("union", (("hub", 2),)), ctx)
    with pytest.raises(ValueError):
        plant(("union", (("clique", 6), ("clique", 6))), ctx)


def test_variational_bound_picks_cheapest_feasible():
    ctx = SparsityContext(60, 0.15)
    delta = 0.5
    family = [("clique", m) for m in range(3, 12)]
    cost, ps = variational_upper_bound(K3, delta, ctx, family)
    assert cost == pytest.approx(ps.realized.edge_count / (60.0**2 * 0.15**2))
    threshold = (1 + delta) * 60.0**3 * 0.15**3
    assert exact_conditional_expectation(ps.realized, K3, ctx) >= threshold
    # every strictly smaller clique in the family must be infeasible
    (_, m_star) = ps.descriptor
    for m in range(3, m_star):
        value = exact_conditional_expectation(
            plant(("clique", m), ctx).realized, K3, ctx
        )
        assert value < threshold


def test_variational_bound_tie_breaks_lexicographically():
    ctx = SparsityContext(60, 0.15)
    delta = 0.05  # small enough that a 12-edge block clears the threshold
    # both orientations plant isomorphic graphs at identical cost
    family = [("bipartite", 4, 3), ("bipartite", 3, 4)]
    cost, ps = variational_upper_bound(K3, delta, ctx, family)
    assert ps.descriptor == ("bipartite", 3, 4)
    assert cost == pytest.approx(12.0 / (60.0**2 * 0.15**2))


def test_variational_bound_errors():
    ctx = SparsityContext(60, 0.15)
    with pytest.raises(ValueError):
        variational_upper_bound(K3, 1.0, ctx, [])
    with pytest.raises(ValueError):
        variational_upper_bound(K3, -1.0, ctx, [("clique", 5)])
    with pytest.raises(InfeasibleFamilyError):
        variational_upper_bound(K3, 50.0, ctx, [("clique", 3)])


def test_pre_seed_clauses():
    ctx = SparsityContext(100, 0.05)
    params = CoreParams(delta=0.1, eps=0.4, context=ctx, pattern=K3)
    planted = plant(("clique", 6), ctx).realized
    assert bool(is_pre_seed(planted, params))
    empty_canvas = from_edge_list(100, [])
    w = is_pre_seed(empty_canvas, params)
    assert not w
    assert w.violated_clause == "copies"


def test_c4_mu_hand_case():
    g = cycle(4)
    # V1 = {0, 2} and V2 = {1, 3}: every edge crosses, eight labelled
    # 4-cycles survive, and each V2 vertex centers two ordered cherries
    assert c4_mu(g, (0, 2), (1, 3), 0.0) == pytest.approx(8.0)
    assert c4_mu(g, (0, 2), (1, 3), 0.5) == pytest.approx(8.0 + 4 * 0.5 * 4)
    # putting everything in V1 leaves no crossing edges and no centers
    assert c4_mu(g, (0, 1, 2, 3), (), 3.0) == 0.0


def test_c4_mu_validation():
    g = cycle(4)
    with pytest.raises(ValueError):
        c4_mu(g, (0, 1), (1, 2, 3), 1.0)
    with pytest.raises(ValueError):
        c4_mu(g, (0, 1), (2,), 1.0)
