"""Structural classification of host graphs.

Degree-threshold edge partitions, the seed / core / strong-core predicate
ladder, fixed-point peeling extractors, and the high/low/bad edge split.
All predicates evaluate literal inequalities at the given finite (n, p);
nothing here asserts a limit statement.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import ceil

from .counting import copy_edge_lists, count_labelled, count_with_edges
from .graphs import Edge, Graph, PatternGraph, SparsityContext


@dataclass(frozen=True)
class CoreParams:
    """Shared knobs for the predicate ladder.

    c_bar budgets edges against n^2 p^Delta log(1/p); c_star against
    n^2 p^Delta alone and must stay >= 32 delta^(2/v) for the strong-core
    per-edge threshold to be meaningful.
    """

    delta: float
    eps: float
    context: SparsityContext
    pattern: PatternGraph
    c_bar: float = 0.0
    c_star: float = 0.0

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0,1), got {self.eps}")
        floor = 32.0 * self.delta ** (2.0 / self.pattern.v_h)
        if self.c_bar == 0.0:
            object.__setattr__(self, "c_bar", 10.0 / (self.delta * self.eps))
        if self.c_star == 0.0:
            object.__setattr__(self, "c_star", floor)
        elif self.c_star < floor * (1.0 - 1e-12):
            raise ValueError(
                f"c_star={self.c_star} below 32*delta^(2/v)={floor}"
            )

    @property
    def degree_threshold(self) -> int:
        return ceil(16 * self.pattern.delta / self.eps)

    # scale shorthands used by every clause below
    @property
    def copies_scale(self) -> float:
        return self.context.copies_scale(self.pattern)

    @property
    def edge_scale(self) -> float:
        return self.context.edge_scale(self.pattern)

    @property
    def core_edge_budget(self) -> float:
        return self.c_bar * self.edge_scale * self.context.log_inv_p

    @property
    def core_min_edge_threshold(self) -> float:
        return self.delta * self.eps * self.copies_scale / self.core_edge_budget

    @property
    def strong_edge_budget(self) -> float:
        return self.c_star * self.edge_scale

    @property
    def strong_min_edge_threshold(self) -> float:
        scale = self.context.density_scale(self.pattern)
        return (self.delta * self.eps / self.c_star) * scale ** (
            self.pattern.v_h - 2
        )


@dataclass(frozen=True)
class PredicateWitness:
    """Outcome of a clause ladder; truthiness tracks satisfaction.

    On failure, names the first violated clause and reports the attained
    and required values; slack = attained - required is then negative.
    """

    satisfied: bool
    violated_clause: str | None = None
    attained: float | None = None
    required: float | None = None

    def __bool__(self) -> bool:
        return self.satisfied

    @property
    def slack(self) -> float | None:
        if self.attained is None or self.required is None:
            return None
        return self.attained - self.required


def _ladder(clauses: list[tuple[str, float, float, bool]]) -> PredicateWitness:
    """Each clause: (name, attained, required, ok)."""
    for name, attained, required, ok in clauses:
        if not ok:
            return PredicateWitness(False, name, attained, required)
    return PredicateWitness(True)


def is_seed(g: Graph, params: CoreParams) -> PredicateWitness:
    copies = count_labelled(params.pattern, g)
    need = params.delta * (1 - 2 * params.eps) * params.copies_scale
    edges = g.edge_count
    budget = params.core_edge_budget
    return _ladder(
        [
            ("copies", float(copies), need, copies >= need),
            ("edges", float(edges), budget, edges <= budget),
        ]
    )


def _min_per_edge(g: Graph, h: PatternGraph) -> int | None:
    if g.edge_count == 0:
        return None
    report = count_with_edges(h, g)
    assert report.per_edge is not None
    return min(report.per_edge.values())


def is_core(g: Graph, params: CoreParams) -> PredicateWitness:
    copies = count_labelled(params.pattern, g)
    need = params.delta * (1 - 3 * params.eps) * params.copies_scale
    edges = g.edge_count
    budget = params.core_edge_budget
    floor = params.core_min_edge_threshold
    worst = _min_per_edge(g, params.pattern)
    min_ok = worst is None or worst >= floor
    return _ladder(
        [
            ("copies", float(copies), need, copies >= need),
            ("edges", float(edges), budget, edges <= budget),
            (
                "min-edge-copies",
                float(worst) if worst is not None else 0.0,
                floor,
                min_ok,
            ),
        ]
    )


def is_strong_core(g: Graph, params: CoreParams) -> PredicateWitness:
    copies = count_labelled(params.pattern, g)
    need = params.delta * (1 - 6 * params.eps) * params.copies_scale
    edges = g.edge_count
    budget = params.strong_edge_budget
    floor = params.strong_min_edge_threshold
    worst = _min_per_edge(g, params.pattern)
    min_ok = worst is None or worst >= floor
    return _ladder(
        [
            ("copies", float(copies), need, copies >= need),
            ("edges", float(edges), budget, edges <= budget),
            (
                "min-edge-copies",
                float(worst) if worst is not None else 0.0,
                floor,
                min_ok,
            ),
        ]
    )


@dataclass(frozen=True)
class EdgePartition:
    """Edges split by membership of endpoints in the low-degree set."""

    low_vertices: frozenset[int]
    e11: frozenset[Edge]
    e12: frozenset[Edge]
    e22: frozenset[Edge]


def edge_partition(g: Graph, D: int) -> EdgePartition:
    if D < 0:
        raise ValueError(f"degree threshold must be >= 0, got {D}")
    low = frozenset(v for v in range(g.vertex_count) if g.degree(v) <= D)
    e11, e12, e22 = set(), set(), set()
    for u, v in g.edges:
        inside = (u in low) + (v in low)
        (e22, e12, e11)[inside].add((u, v))
    return EdgePartition(low, frozenset(e11), frozenset(e12), frozenset(e22))


def _peel(
    g: Graph,
    h: PatternGraph,
    threshold: float,
    copy_budget: int | None,
) -> Graph:
    if threshold <= 0:
        return g
    copies = copy_edge_lists(h, g, max_copies=copy_budget)
    per_edge: dict[Edge, int] = {e: 0 for e in g.edges}
    edge_copies: dict[Edge, list[int]] = {e: [] for e in g.edges}
    for ci, ce in enumerate(copies):
        for e in ce:
            per_edge[e] += 1
            edge_copies[e].append(ci)
    alive = set(g.edge_set())
    copy_alive = [True] * len(copies)
    work = deque(e for e in g.edges if per_edge[e] < threshold)
    queued = set(work)
    while work:
        e = work.popleft()
        queued.discard(e)
        if e not in alive:
            continue
        alive.discard(e)
        # counts only decrease, so retesting removed edges is never needed;
        # only copies through e change, and each dies exactly once
        for ci in edge_copies[e]:
            if not copy_alive[ci]:
                continue
            copy_alive[ci] = False
            for f in copies[ci]:
                if f == e:
                    continue
                per_edge[f] -= 1
                if f in alive and per_edge[f] < threshold and f not in queued:
                    work.append(f)
                    queued.add(f)
    return g.without_edges(g.edge_set() - alive)


def peel_to_core(
    g: Graph, params: CoreParams, copy_budget: int | None = None
) -> Graph:
    return _peel(g, params.pattern, params.core_min_edge_threshold, copy_budget)


def peel_to_strong_core(
    g: Graph, params: CoreParams, copy_budget: int | None = None
) -> Graph:
    return _peel(
        g, params.pattern, params.strong_min_edge_threshold, copy_budget
    )


def min_edges_for_copies(h: PatternGraph, target: float) -> float:
    """Fewest edges any graph holding ``target`` copies of h can have.

    Inverts the count <= (2e)^(v/2) bound, giving e >= target^(2/v)/2.
    """
    if target < 0:
        raise ValueError(f"target must be >= 0, got {target}")
    return 0.5 * target ** (2.0 / h.v_h)


def min_edges_scaled(
    h: PatternGraph, delta0: float, ctx: SparsityContext
) -> float:
    """Same bound with target delta0 n^v p^e, reported in units of edges."""
    if delta0 < 0:
        raise ValueError(f"delta0 must be >= 0, got {delta0}")
    return 0.5 * delta0 ** (2.0 / h.v_h) * ctx.edge_scale(h)


@dataclass(frozen=True)
class HighLowSplit:
    """Edges split by the degree-product test, plus the bad closure.

    An edge is bad when no copy of the pattern through it stays inside
    g_low; edges meeting no copy at all are vacuously bad.
    """

    g_high: frozenset[Edge]
    g_low: frozenset[Edge]
    g_bad: frozenset[Edge]
    c0: float
    c_big0: float


def degree_product_floor(params: CoreParams) -> float:
    """Explicit lower-scale constant for degree products over strong cores."""
    h = params.pattern
    d = h.delta
    if d < 2:
        raise ValueError("pattern degree must be at least 2")
    q = d / (d - 1)
    a = (params.eps / params.c_star) ** q
    b = (1.0 / (4 * h.e_h)) ** q
    c = (2 * params.c_star) ** (-(h.v_h / 2 - (2 * d - 1) / d) * q)
    return 0.25 * a * b * c


def degree_product_ceiling(params: CoreParams) -> float:
    """Default upper-scale constant, large enough for the split estimates.

    Chosen as the smallest closed form the sufficiency analysis supports;
    callers may override it in high_low_bad_split.
    """
    h = params.pattern
    half = 2.0 ** (h.v_h / 2.0)
    a = params.c_star * half * h.e_h / params.eps**2
    terms = [a]
    if params.eps < 1.0 / 6.0:
        terms.append(
            half * h.e_h * params.c_star
            / (params.eps * params.delta * (1 - 6 * params.eps))
        )
    return 5.0 * params.c_star * max(terms) ** h.delta


def high_low_bad_split(
    g: Graph,
    params: CoreParams,
    c_big0: float | None = None,
    copy_budget: int | None = None,
) -> HighLowSplit:
    if c_big0 is None:
        c_big0 = degree_product_ceiling(params)
    cutoff = c_big0 * params.edge_scale
    high, low = set(), set()
    for u, v in g.edges:
        if g.degree(u) * g.degree(v) >= cutoff:
            high.add((u, v))
        else:
            low.add((u, v))
    clean: set[Edge] = set()
    for ce in copy_edge_lists(params.pattern, g, max_copies=copy_budget):
        if high.isdisjoint(ce):
            clean.update(ce)
    bad = g.edge_set() - clean
    return HighLowSplit(
        g_high=frozenset(high),
        g_low=frozenset(low),
        g_bad=frozenset(bad),
        c0=degree_product_floor(params),
        c_big0=c_big0,
    )
