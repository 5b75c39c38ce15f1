"""Graph representation, validation, degree cores, and generators.

All graphs are simple and undirected, with 0-based dense vertex labels.
Isolated vertices are representable on purpose: degree cores and edge
peeling leave them behind, and copy counts never depend on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import log


class GraphInputError(ValueError):
    """Raised for malformed construction input (bad endpoint, self-loop)."""


class PatternError(ValueError):
    """Base class for pattern validation failures."""


class PatternNotConnectedError(PatternError):
    pass


class PatternNotRegularError(PatternError):
    pass


class PatternDegreeError(PatternError):
    """Regular but with degree below 2; such patterns are out of scope."""


Edge = tuple[int, int]


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``edges`` is the canonical sorted tuple of (min, max) pairs.
    ``adjacency`` maps each vertex to a frozenset of neighbors.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)
    adjacency_masks: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def vertices(self) -> range:
        return range(self.vertex_count)

    def support(self) -> list[int]:
        """Vertices with at least one incident edge."""
        return [v for v in range(self.vertex_count) if self.adjacency[v]]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def without_edges(self, removed: set[Edge] | frozenset[Edge]) -> "Graph":
        removed = {_canon(*e) for e in removed}
        return from_edge_list(
            self.vertex_count, [e for e in self.edges if e not in removed]
        )

    def edge_subgraph(self, kept: set[Edge] | frozenset[Edge]) -> "Graph":
        """Subgraph on the same vertex set containing exactly ``kept`` edges."""
        kept = {_canon(*e) for e in kept}
        missing = kept - set(self.edges)
        if missing:
            raise GraphInputError(f"edges not present: {sorted(missing)}")
        return from_edge_list(self.vertex_count, sorted(kept))

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def connected_components(self) -> list[list[int]]:
        seen: set[int] = set()
        out: list[list[int]] = []
        for start in range(self.vertex_count):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def bipartition(self) -> tuple[list[int], list[int]] | None:
        """A 2-coloring as (side0, side1) vertex lists, or None."""
        color: dict[int, int] = {}
        for start in range(self.vertex_count):
            if start in color:
                continue
            color[start] = 0
            queue = [start]
            while queue:
                u = queue.pop()
                for w in self.adjacency[u]:
                    if w not in color:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        side0 = [v for v in range(self.vertex_count) if color[v] == 0]
        side1 = [v for v in range(self.vertex_count) if color[v] == 1]
        return side0, side1

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def is_regular(self) -> bool:
        degs = {len(a) for a in self.adjacency}
        return len(degs) <= 1

    def relabelled_span(self) -> "Graph":
        """Drop isolated vertices and relabel the rest densely from 0."""
        kept = self.support()
        index = {v: i for i, v in enumerate(kept)}
        return from_edge_list(
            len(kept), [(index[u], index[v]) for u, v in self.edges]
        )


def from_edge_list(n: int, pairs) -> Graph:
    """Build a Graph on n vertices; duplicate pairs collapse, order canonical."""
    if n < 0:
        raise GraphInputError(f"negative vertex count {n}")
    seen: set[Edge] = set()
    for u, v in pairs:
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"endpoint out of range in ({u}, {v})")
        seen.add(_canon(u, v))
    edges = tuple(sorted(seen))
    neigh: list[set[int]] = [set() for _ in range(n)]
    masks = [0] * n
    for u, v in edges:
        neigh[u].add(v)
        neigh[v].add(u)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(
        vertex_count=n,
        edges=edges,
        adjacency=tuple(frozenset(s) for s in neigh),
        adjacency_masks=tuple(masks),
    )


def span_of_edges(pairs) -> Graph:
    """Graph carrying exactly ``pairs``, on the densely relabelled endpoint set."""
    pairs = [_canon(u, v) for u, v in pairs]
    verts = sorted({x for e in pairs for x in e})
    index = {v: i for i, v in enumerate(verts)}
    return from_edge_list(len(verts), [(index[u], index[v]) for u, v in pairs])


@dataclass(frozen=True)
class PatternGraph:
    """A connected regular graph with degree at least 2, used as a count pattern."""

    graph: Graph
    delta: int
    v_h: int
    e_h: int

    @property
    def vertex_count(self) -> int:
        return self.v_h

    @property
    def edge_count(self) -> int:
        return self.e_h


def validate_pattern(g: Graph) -> PatternGraph:
    """Check connectivity and regularity; reject degree below 2."""
    if g.vertex_count == 0:
        raise PatternNotConnectedError("empty pattern")
    if not g.is_connected():
        raise PatternNotConnectedError("pattern is not connected")
    degs = {g.degree(v) for v in g.vertices()}
    if len(degs) != 1:
        raise PatternNotRegularError(f"pattern is not regular: degrees {sorted(degs)}")
    (delta,) = degs
    if delta < 2:
        raise PatternDegreeError(f"pattern degree {delta} < 2")
    # degree sum: e = (delta/2) * v, always integral here
    assert g.edge_count * 2 == delta * g.vertex_count
    return PatternGraph(graph=g, delta=delta, v_h=g.vertex_count, e_h=g.edge_count)


def as_graph(h: Graph | PatternGraph) -> Graph:
    return h.graph if isinstance(h, PatternGraph) else h


@dataclass(frozen=True)
class SparsityContext:
    """Ambient scale (n, p) with 0 < p < 1."""

    n: int
    p: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie strictly inside (0, 1), got {self.p}")

    @property
    def log_inv_p(self) -> float:
        return log(1.0 / self.p)

    def copies_scale(self, h: PatternGraph) -> float:
        """n^{v} p^{e} for the pattern."""
        return float(self.n) ** h.v_h * self.p ** h.e_h

    def edge_scale(self, h: PatternGraph) -> float:
        """n^2 p^{degree} for the pattern."""
        return float(self.n) ** 2 * self.p ** h.delta

    def density_scale(self, h: PatternGraph) -> float:
        """n p^{degree/2}; its v-th power is the copies scale."""
        return float(self.n) * self.p ** (h.delta / 2.0)


# ---------------------------------------------------------------------------
# degree core


def delta_core(g: Graph, k: int) -> Graph:
    """Maximal subgraph of minimum degree >= k, by worklist peeling.

    Vertices falling below k lose all incident edges; result keeps the
    original vertex count with removed vertices isolated.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    deg = [g.degree(v) for v in g.vertices()]
    alive = [bool(g.adjacency[v]) for v in g.vertices()]
    work = [v for v in g.vertices() if alive[v] and deg[v] < k]
    dead: set[int] = set()
    while work:
        v = work.pop()
        if v in dead or not alive[v]:
            continue
        dead.add(v)
        alive[v] = False
        for w in g.adjacency[v]:
            if w not in dead and alive[w]:
                deg[w] -= 1
                if deg[w] < k:
                    work.append(w)
    edges = [(u, v) for u, v in g.edges if u not in dead and v not in dead]
    return from_edge_list(g.vertex_count, edges)


# ---------------------------------------------------------------------------
# generators


def empty(n: int) -> Graph:
    return from_edge_list(n, [])


def complete(m: int) -> Graph:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return from_edge_list(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError(f"sides must be positive, got ({a}, {b})")
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle(length: int) -> Graph:
    if length < 3:
        raise ValueError(f"cycle length must be >= 3, got {length}")
    return from_edge_list(length, [(i, (i + 1) % length) for i in range(length)])


def path(edge_count: int) -> Graph:
    """Path with ``edge_count`` edges on edge_count + 1 vertices."""
    if edge_count < 0:
        raise ValueError("edge_count must be nonnegative")
    return from_edge_list(edge_count + 1, [(i, i + 1) for i in range(edge_count)])


def star(leaves: int) -> Graph:
    if leaves < 1:
        raise ValueError("leaves must be positive")
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return from_edge_list(10, outer + inner + spokes)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.vertex_count
    edges = list(g1.edges) + [(u + shift, v + shift) for u, v in g2.edges]
    return from_edge_list(g1.vertex_count + g2.vertex_count, edges)


def random_regular_bipartite(delta: int, m: int, rng_seed: int) -> Graph:
    """Delta-regular bipartite graph on m + m vertices.

    Union of delta random permutation matchings between the sides;
    resampled whenever two matchings collide on a pair.
    """
    if delta < 1 or m < 1:
        raise ValueError(f"delta and m must be positive, got ({delta}, {m})")
    if delta > m:
        raise ValueError(f"delta {delta} exceeds side size {m}")
    rng = random.Random(rng_seed)
    while True:
        pairs: set[Edge] = set()
        ok = True
        for _ in range(delta):
            perm = list(range(m))
            rng.shuffle(perm)
            for i in range(m):
                e = (i, m + perm[i])
                if e in pairs:
                    ok = False
                    break
                pairs.add(e)
            if not ok:
                break
        if ok:
            return from_edge_list(2 * m, sorted(pairs))


# ---------------------------------------------------------------------------
# edge-list text format: header "n m", then m lines "u v"; '#' starts a comment


def parse_edge_list(text: str) -> Graph:
    rows: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise GraphInputError("empty edge-list input")
    head = rows[0].split()
    if len(head) != 2:
        raise GraphInputError(f"header must be 'n m', got {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise GraphInputError(f"header promises {m} edges, found {len(rows) - 1}")
    pairs = []
    for line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphInputError(f"bad edge line {line!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return from_edge_list(n, pairs)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
