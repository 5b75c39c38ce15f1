"""Upper-tail rate functions and conditional expectations.

The tail cost is reported as the coefficient of n^2 p^Delta log(1/p).
Conditioning on a planted graph g is evaluated exactly: grouping the
defining sum over injective maps by the set A of pattern edges landing
inside g gives

    E_g[count] = p^e(H) * sum_A (1/p - 1)^|A| * N(span A, g) * (n - v_A)_(v_H - v_A)

where span A drops isolated vertices and the falling factorial places the
pattern vertices missed by A. With rational p the identity is evaluated
in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log, perm

from .counting import count_K12_centered, count_labelled
from .graphs import (
    Graph,
    PatternGraph,
    SparsityContext,
    as_graph,
    cycle,
    from_edge_list,
    span_of_edges,
)
from .independence import tilted_root
from .structures import CoreParams, PredicateWitness, _ladder


class UnsupportedRegimeError(ValueError):
    pass


class PatternTooLargeError(ValueError):
    pass


class InfeasibleFamilyError(ValueError):
    pass


@dataclass(frozen=True)
class Regime:
    """Sparsity classification with the scales that decided it echoed."""

    tag: str  # dense-localized | sparse-localized | poisson | clique-only-boundary
    density_scale: float
    sqrt_n: float
    poisson_ceiling: float


def classify_regime(h: PatternGraph, ctx: SparsityContext) -> Regime:
    if h.v_h < 3:
        raise ValueError("patterns on fewer than 3 vertices are out of scope")
    scale = ctx.density_scale(h)
    root = float(ctx.n) ** 0.5
    ceiling = log(ctx.n) ** (1.0 / (h.v_h - 2))
    if scale > root:
        tag = "dense-localized"
    elif scale == root:
        tag = "clique-only-boundary"
    elif scale > ceiling:
        tag = "sparse-localized"
    else:
        tag = "poisson"
    return Regime(tag, scale, root, ceiling)


def rate_function(
    h: PatternGraph, delta: float, ctx: SparsityContext
) -> tuple[float, Regime]:
    """Tail cost per n^2 p^Delta log(1/p), with the regime that chose it."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    regime = classify_regime(h, ctx)
    clique_cost = 0.5 * delta ** (2.0 / h.v_h)
    if regime.tag == "dense-localized":
        return min(tilted_root(h, delta), clique_cost), regime
    if regime.tag == "sparse-localized":
        return clique_cost, regime
    if regime.tag == "poisson":
        raise UnsupportedRegimeError(
            "poisson regime: density scale "
            f"{regime.density_scale:g} <= {regime.poisson_ceiling:g}; "
            "the localized rate formula does not apply"
        )
    raise UnsupportedRegimeError(
        "density scale sits exactly on sqrt(n); only the clique branch is "
        "meaningful there and no rate value is reported"
    )


def _subset_terms(g: Graph, h: PatternGraph):
    """Yield (|A|, v_A, N(span A, g)) over all pattern edge subsets A."""
    edges = as_graph(h).edges
    m = len(edges)
    if m > 20:
        raise PatternTooLargeError(f"{m} pattern edges; subset sum capped at 20")
    for mask in range(1 << m):
        chosen = [edges[i] for i in range(m) if mask >> i & 1]
        span = span_of_edges(chosen)
        yield len(chosen), span.vertex_count, count_labelled(span, g)


def exact_conditional_expectation(
    g: Graph, h: PatternGraph, ctx: SparsityContext, exact: bool = False
):
    """Expected copy count given that every edge of g is present.

    With exact=True, p is taken as the binary rational of the stored float
    and a Fraction is returned; otherwise a float.
    """
    n = ctx.n
    if g.vertex_count != n:
        raise ValueError(
            f"planted graph has {g.vertex_count} vertices, context has {n}"
        )
    if n < h.v_h:
        raise ValueError(f"n={n} smaller than pattern order {h.v_h}")
    p: Fraction | float = Fraction(ctx.p) if exact else ctx.p
    q = 1 / p - 1
    total: Fraction | float = 0
    for size, va, cnt in _subset_terms(g, h):
        if cnt:
            total += q**size * cnt * perm(n - va, h.v_h - va)
    return p**h.e_h * total


def asymptotic_conditional_gain(
    g: Graph, h: PatternGraph, ctx: SparsityContext
) -> float:
    """First-order surplus over the unconditional expectation.

    Sums N(span A, g) * (1 - p^|A|) * n^(v_H - v_A) * p^(e_H - |A|) over
    nonempty edge subsets A, with plain powers of n.
    """
    n, p = ctx.n, ctx.p
    total = 0.0
    for size, va, cnt in _subset_terms(g, h):
        if size and cnt:
            total += (
                cnt * (1.0 - p**size) * float(n) ** (h.v_h - va) * p ** (h.e_h - size)
            )
    return total


def is_pre_seed(g: Graph, params: CoreParams) -> PredicateWitness:
    """Conditional-expectation form of the predicate ladder's first rung."""
    gain = exact_conditional_expectation(g, params.pattern, params.context)
    need = (1 + params.delta * (1 - params.eps)) * params.copies_scale
    edges = g.edge_count
    budget = params.core_edge_budget
    return _ladder(
        [
            ("copies", float(gain), need, gain >= need),
            ("edges", float(edges), budget, edges <= budget),
        ]
    )


# ---------------------------------------------------------------------------
# planted structures


@dataclass(frozen=True)
class PlantedStructure:
    descriptor: tuple
    realized: Graph


def _block_edges(kind: tuple, start: int) -> tuple[list[tuple[int, int]], int, int]:
    """Edges, block width, and closed-form edge count for a union part."""
    match kind:
        case ("clique", int(m)) if m >= 1:
            edges = [
                (start + i, start + j) for i in range(m) for j in range(i + 1, m)
            ]
            return edges, m, m * (m - 1) // 2
        case ("bipartite", int(a), int(b)) if a >= 1 and b >= 1:
            edges = [
                (start + i, start + a + j) for i in range(a) for j in range(b)
            ]
            return edges, a + b, a * b
        case _:
            raise ValueError(f"unsupported planted part {kind!r}")


def plant(kind, ctx: SparsityContext) -> PlantedStructure:
    """Realize a planted structure on the full n-vertex canvas.

    Kinds: ("clique", m), ("hub", u), ("bipartite", a, b), and
    ("union", (part, ...)) of clique/bipartite parts on fresh blocks.
    A hub joins u vertices to everything, itself included, so it cannot
    appear inside a union.
    """
    n = ctx.n
    kind = tuple(kind)
    if kind[0] == "hub":
        (_, u) = kind
        if not 1 <= u <= n:
            raise ValueError(f"hub size {u} does not fit in n={n}")
        edges = [(i, j) for i in range(u) for j in range(i + 1, n)]
        g = from_edge_list(n, edges)
        assert g.edge_count == u * (n - u) + u * (u - 1) // 2
        return PlantedStructure(kind, g)
    parts = list(kind[1]) if kind[0] == "union" else [kind]
    edges: list[tuple[int, int]] = []
    start = 0
    expected = 0
    for part in parts:
        part_edges, width, closed = _block_edges(tuple(part), start)
        edges.extend(part_edges)
        start += width
        expected += closed
    if start > n:
        raise ValueError(f"planted structure needs {start} vertices, n={n}")
    g = from_edge_list(n, edges)
    assert g.edge_count == expected
    return PlantedStructure(kind, g)


def variational_upper_bound(
    h: PatternGraph, delta: float, ctx: SparsityContext, family
) -> tuple[float, PlantedStructure]:
    """Cheapest planted structure whose conditional expectation clears
    (1 + delta) n^v p^e; cost is edge count over n^2 p^Delta, i.e. the
    edge budget e(G) log(1/p) normalized by n^2 p^Delta log(1/p).

    An upper bound of the full variational problem: only the given family
    is searched. Ties break toward the lexicographically smallest
    descriptor (the family is scanned in sorted order and only strict
    improvements replace the incumbent).
    """
    descriptors = sorted(tuple(k) for k in family)
    if not descriptors:
        raise ValueError("search family is empty")
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    threshold = (1 + delta) * ctx.copies_scale(h)
    scale = ctx.edge_scale(h)
    best: tuple[float, PlantedStructure] | None = None
    for desc in descriptors:
        ps = plant(desc, ctx)
        value = exact_conditional_expectation(ps.realized, h, ctx)
        if value < threshold:
            continue
        cost = ps.realized.edge_count / scale
        if best is None or cost < best[0]:
            best = (cost, ps)
    if best is None:
        raise InfeasibleFamilyError(
            f"no structure among {len(descriptors)} candidates meets the "
            "conditional-expectation constraint"
        )
    return best


def c4_mu(g: Graph, V1, V2, kappa: float) -> float:
    """Boundary-regime objective for the 4-cycle: bipartite 4-cycle count
    between the parts plus 4 kappa times the cherries centered in V2.
    """
    s1, s2 = set(V1), set(V2)
    if s1 & s2:
        raise ValueError("parts overlap")
    if s1 | s2 != set(range(g.vertex_count)):
        raise ValueError("parts must cover every vertex")
    between = [e for e in g.edges if (e[0] in s1) != (e[1] in s1)]
    sub = from_edge_list(g.vertex_count, between)
    return count_labelled(cycle(4), sub) + 4.0 * kappa * count_K12_centered(g, s2)
