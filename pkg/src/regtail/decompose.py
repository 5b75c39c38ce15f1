"""Constructive decompositions of patterns.

Bipartite double covers, edge colorings with max-degree many colors via
alternating-path recoloring, perfect matchings dodging a small forbidden
set, vertex-disjoint cycle/edge covers excluding one edge, and an ordered
cover anchored at a prescribed cherry. Existence arguments are turned into
deterministic constructions; validators re-check every claimed invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Edge, Graph, PatternGraph, _canon, as_graph, from_edge_list


class NotBipartiteError(ValueError):
    pass


@dataclass(frozen=True)
class DoubleCover:
    graph: Graph
    projection: tuple[int, ...]


def double_cover(h: Graph | PatternGraph) -> DoubleCover:
    """Graph on two layers of V(h), edges crossing layers iff adjacent in h.

    Vertex v's copies are v (layer one) and v + v_h (layer two).
    """
    h = as_graph(h)
    v = h.vertex_count
    edges = []
    for a, b in h.edges:
        edges.append((a, b + v))
        edges.append((b, a + v))
    cover = from_edge_list(2 * v, edges)
    return DoubleCover(cover, tuple(i % v for i in range(2 * v)))


@dataclass(frozen=True)
class EdgeColoring:
    color: dict[Edge, int]
    num_colors: int

    def classes(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in range(self.num_colors)]
        for e in sorted(self.color):
            out[self.color[e]].append(e)
        return out

    def is_proper(self, g: Graph) -> bool:
        for v in range(g.vertex_count):
            seen = set()
            for w in g.adjacency[v]:
                c = self.color[_canon(v, w)]
                if c in seen:
                    return False
                seen.add(c)
        return True


def konig_coloring(g: Graph) -> EdgeColoring:
    """Proper edge coloring of a bipartite graph with max-degree colors.

    Processes edges in canonical order. When the endpoints have no common
    free color, swaps a two-color alternating path starting at the second
    endpoint; the path cannot reach the first endpoint (it would need to
    arrive on a color that endpoint misses), so the swap frees one color
    at both ends.
    """
    if g.bipartition() is None:
        raise NotBipartiteError("input graph is not bipartite")
    ncol = g.max_degree()
    if ncol == 0:
        return EdgeColoring({}, 0)
    # used[v][c] = neighbor joined to v by the edge colored c, or None
    used: list[list[int | None]] = [[None] * ncol for _ in range(g.vertex_count)]
    color: dict[Edge, int] = {}

    def free(v: int) -> int:
        for c in range(ncol):
            if used[v][c] is None:
                return c
        raise AssertionError("no free color at an uncolored endpoint")

    for u, v in g.edges:
        alpha = free(u)
        if used[v][alpha] is not None:
            beta = free(v)
            # walk the alpha/beta path from v and swap its colors
            path: list[tuple[int, int, int]] = []
            cur, col = v, alpha
            while used[cur][col] is not None:
                nxt = used[cur][col]
                path.append((cur, nxt, col))
                cur = nxt
                col = beta if col == alpha else alpha
            for x, y, c in path:
                used[x][c] = None
                used[y][c] = None
            for x, y, c in path:
                nc = beta if c == alpha else alpha
                color[_canon(x, y)] = nc
                used[x][nc] = y
                used[y][nc] = x
        color[(u, v)] = alpha
        used[u][alpha] = v
        used[v][alpha] = u
    return EdgeColoring(color, ncol)


def matching_avoiding(h: Graph, avoid) -> frozenset[Edge]:
    """Perfect matching of a regular bipartite graph missing every avoided edge.

    Each of the max-degree color classes is a perfect matching and each
    avoided edge blocks exactly one class, so with fewer avoided edges
    than classes a clean class survives.
    """
    if h.bipartition() is None:
        raise NotBipartiteError("input graph is not bipartite")
    if not h.is_regular():
        raise ValueError("input graph is not regular")
    d = h.max_degree()
    if d < 2:
        raise ValueError(f"degree must be at least 2, got {d}")
    forbidden = {_canon(*e) for e in avoid}
    if not forbidden <= h.edge_set():
        raise ValueError("avoided edges must belong to the graph")
    if len(forbidden) > d - 1:
        raise ValueError(
            f"{len(forbidden)} avoided edges; at most {d - 1} allowed"
        )
    for cls in konig_coloring(h).classes():
        if forbidden.isdisjoint(cls):
            return frozenset(cls)
    raise AssertionError("pigeonhole guarantees an untouched color class")


@dataclass(frozen=True)
class CoverComponent:
    """Either a single edge or a cycle given by the visiting order."""

    kind: str  # "edge" or "cycle"
    vertices: tuple[int, ...]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edge_set(self) -> frozenset[Edge]:
        if self.kind == "edge":
            return frozenset({_canon(self.vertices[0], self.vertices[1])})
        seq = self.vertices
        return frozenset(
            _canon(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))
        )


@dataclass(frozen=True)
class CycleEdgeCover:
    components: tuple[CoverComponent, ...]


def cycle_edge_cover_avoiding(h: Graph | PatternGraph, e: Edge) -> CycleEdgeCover:
    """Vertex-disjoint cycles and single edges covering V(h) without e.

    Color the bipartite double cover with the full degree count; both
    layer-crossing lifts of e occupy at most two classes, so some class
    avoids both. Projecting that perfect matching back gives a spanning
    union of cycles, where an edge hit from both layers collapses to a
    single-edge component.
    """
    h = as_graph(h)
    if not h.is_regular():
        raise ValueError("input graph is not regular")
    d = h.max_degree()
    if d < 3:
        raise ValueError(f"degree must be at least 3, got {d}")
    key = _canon(*e)
    if key not in h.edge_set():
        raise ValueError(f"edge {e} not in the graph")
    v = h.vertex_count
    dc = double_cover(h)
    classes = konig_coloring(dc.graph).classes()
    u1, u2 = key
    lifts = {_canon(u1, u2 + v), _canon(u2, u1 + v)}
    chosen = next(cls for cls in classes if lifts.isdisjoint(cls))
    projected = [_canon(a % v, b % v) for a, b in chosen]
    incident: dict[int, list[int]] = {x: [] for x in range(v)}
    for idx, (a, b) in enumerate(projected):
        incident[a].append(idx)
        incident[b].append(idx)
    # the matching covers both copies of every vertex, so the projection
    # is 2-regular as a multigraph: doubled pairs become single edges
    used = [False] * len(projected)
    components: list[CoverComponent] = []
    for start in range(v):
        i, j = incident[start]
        if used[i]:
            continue
        if projected[i] == projected[j]:
            used[i] = used[j] = True
            components.append(CoverComponent("edge", projected[i]))
            continue
        seq = [start]
        cur, eidx = start, i
        while True:
            used[eidx] = True
            a, b = projected[eidx]
            cur = b if cur == a else a
            if cur == start:
                break
            seq.append(cur)
            x, y = incident[cur]
            eidx = y if used[x] else x
        components.append(CoverComponent("cycle", tuple(seq)))
    return CycleEdgeCover(tuple(components))


def validate_cycle_edge_cover(
    cover: CycleEdgeCover, h: Graph | PatternGraph, forbidden: Edge
) -> None:
    h = as_graph(h)
    key = _canon(*forbidden)
    seen: set[int] = set()
    for comp in cover.components:
        if comp.kind == "edge":
            if len(comp.vertices) != 2:
                raise ValueError(f"edge component with {len(comp.vertices)} vertices")
        elif comp.kind == "cycle":
            if len(comp.vertices) < 3:
                raise ValueError(f"cycle component of length {len(comp.vertices)}")
        else:
            raise ValueError(f"unknown component kind {comp.kind!r}")
        vs = comp.vertex_set()
        if len(vs) != len(comp.vertices):
            raise ValueError("component repeats a vertex")
        if vs & seen:
            raise ValueError("components are not vertex-disjoint")
        seen |= vs
        for a, b in comp.edge_set():
            if (a, b) not in h.edge_set():
                raise ValueError(f"component edge {(a, b)} not in the graph")
        if key in comp.edge_set():
            raise ValueError(f"forbidden edge {forbidden} appears in a component")
    if seen != set(range(h.vertex_count)):
        raise ValueError("components do not cover every vertex")


@dataclass(frozen=True)
class OrderedCover:
    """Cover relabelled so three anchor vertices land in the first three
    parts (which may coincide); parts beyond the third each attach to the
    union of the earlier ones through a recorded pattern edge.
    """

    parts: tuple[CoverComponent, ...]
    attachments: tuple[tuple[int, int], ...]  # aligned with parts[3:]


def ordered_cover(h: Graph | PatternGraph, q) -> OrderedCover:
    h = as_graph(h)
    (a1, b1), (a2, b2) = q
    first = _canon(a1, b1)
    second = _canon(a2, b2)
    if first not in h.edge_set() or second not in h.edge_set():
        raise ValueError("cherry edges must belong to the graph")
    shared = set(first) & set(second)
    if len(shared) != 1:
        raise ValueError("cherry edges must share exactly one vertex")
    u2 = shared.pop()
    u1 = first[0] if first[1] == u2 else first[1]
    v = second[0] if second[1] == u2 else second[1]
    if not h.is_connected():
        raise ValueError("input graph is not connected")
    cover = cycle_edge_cover_avoiding(h, (u1, u2))
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(cover.components):
        for x in comp.vertices:
            comp_of[x] = idx
    anchor_ids = [comp_of[u1], comp_of[u2], comp_of[v]]
    parts = [cover.components[i] for i in anchor_ids]
    placed: set[int] = set()
    for i in set(anchor_ids):
        placed |= set(cover.components[i].vertices)
    remaining = sorted(set(range(len(cover.components))) - set(anchor_ids))
    attachments: list[tuple[int, int]] = []
    while remaining:
        hit = None
        for idx in remaining:
            comp = cover.components[idx]
            pick = None
            for x in sorted(comp.vertices):
                for y in sorted(h.adjacency[x]):
                    if y in placed:
                        pick = (x, y)
                        break
                if pick:
                    break
            if pick:
                hit = (idx, pick)
                break
        if hit is None:
            raise AssertionError("connected graph must link a remaining part")
        idx, pick = hit
        parts.append(cover.components[idx])
        attachments.append(pick)
        placed |= set(cover.components[idx].vertices)
        remaining.remove(idx)
    return OrderedCover(tuple(parts), tuple(attachments))


def validate_ordered_cover(oc: OrderedCover, h: Graph | PatternGraph, q) -> None:
    h = as_graph(h)
    (a1, b1), (a2, b2) = q
    first = _canon(a1, b1)
    second = _canon(a2, b2)
    shared = set(first) & set(second)
    if len(shared) != 1:
        raise ValueError("cherry edges must share exactly one vertex")
    u2 = shared.pop()
    u1 = first[0] if first[1] == u2 else first[1]
    v = second[0] if second[1] == u2 else second[1]
    parts = oc.parts
    if len(parts) < 3:
        raise ValueError("ordered cover needs at least three labelled parts")
    covered: set[int] = set()
    for comp in parts:
        covered |= set(comp.vertices)
        for edge in comp.edge_set():
            if edge not in h.edge_set():
                raise ValueError(f"part edge {edge} not in the graph")
        if first in comp.edge_set():
            raise ValueError("forbidden edge appears in a part")
    if covered != set(range(h.vertex_count)):
        raise ValueError("parts do not cover every vertex")
    for anchor, comp in zip((u1, u2, v), parts[:3]):
        if anchor not in comp.vertex_set():
            raise ValueError(f"anchor {anchor} missing from its part")
    for i in range(3):
        for j in range(i + 1, 3):
            pi, pj = parts[i], parts[j]
            if pi != pj and pi.vertex_set() & pj.vertex_set():
                raise ValueError("first three parts overlap without coinciding")
    tail = parts[3:]
    for i, comp in enumerate(tail):
        for other in tail[i + 1 :]:
            if comp.vertex_set() & other.vertex_set():
                raise ValueError("later parts are not vertex-disjoint")
        for head in parts[:3]:
            if comp.vertex_set() & head.vertex_set():
                raise ValueError("later part overlaps an anchor part")
    if len(oc.attachments) != len(tail):
        raise ValueError("one attachment required per part beyond the third")
    for i, (x, y) in enumerate(oc.attachments):
        comp = tail[i]
        if x not in comp.vertex_set():
            raise ValueError(f"attachment tail {x} not in its part")
        earlier: set[int] = set()
        for prev in parts[: 3 + i]:
            earlier |= set(prev.vertices)
        if y not in earlier:
            raise ValueError(f"attachment head {y} not in an earlier part")
        if _canon(x, y) not in h.edge_set():
            raise ValueError(f"attachment pair {(x, y)} is not a graph edge")
