"""Shared oracles and instance helpers.

The oracles here are deliberately naive reimplementations used to pin
the optimized library code: straight iteration over all maps or subsets,
no pruning, no bitmasks. Keep them slow and obviously correct.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product

import pytest

from regtail.graphs import Graph, from_edge_list


def oracle_count_injective(h: Graph, g: Graph) -> int:
    """All injective vertex maps, checked edge by edge."""
    k = h.vertex_count
    if k > g.vertex_count:
        return 0
    total = 0
    for image in permutations(range(g.vertex_count), k):
        if all(g.has_edge(image[a], image[b]) for a, b in h.edges):
            total += 1
    return total


def oracle_count_hom(h: Graph, g: Graph) -> int:
    """All vertex maps, repeats allowed."""
    total = 0
    for image in product(range(g.vertex_count), repeat=h.vertex_count):
        if all(g.has_edge(image[a], image[b]) for a, b in h.edges):
            total += 1
    return total


def oracle_independent_counts(g: Graph) -> list[int]:
    """Independent-set counts by size via subset enumeration."""
    n = g.vertex_count
    counts = [0] * (n + 1)
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            if all(not g.has_edge(u, v) for u, v in combinations(subset, 2)):
                counts[k] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def oracle_fractional_independence(g: Graph) -> Fraction:
    """Brute force over half-integral weight vectors; the optimum of the
    relaxation is always attained at one of them.
    """
    n = g.vertex_count
    best = Fraction(0)
    levels = (Fraction(0), Fraction(1, 2), Fraction(1))
    for weights in product(levels, repeat=n):
        if all(weights[u] + weights[v] <= 1 for u, v in g.edges):
            best = max(best, sum(weights))
    return best


def oracle_simple_paths(g: Graph, v1: int, v2: int, length: int) -> list[tuple]:
    """All simple paths from v1 to v2 with exactly `length` edges."""
    out = []

    def walk(path: list[int]) -> None:
        if len(path) - 1 == length:
            if path[-1] == v2:
                out.append(tuple(path))
            return
        for w in g.adjacency[path[-1]]:
            if w not in path and (w != v2 or len(path) == length):
                walk(path + [w])

    if v1 != v2:
        walk([v1])
    return out


def random_graph(rng: random.Random, nv: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(nv) for v in range(u + 1, nv) if rng.random() < p
    ]
    return from_edge_list(nv, edges)


def random_connected_graph(rng: random.Random, nv: int, p: float) -> Graph:
    """Random spanning tree plus density-p extra edges."""
    order = list(range(nv))
    rng.shuffle(order)
    edges = {
        tuple(sorted((order[i], rng.choice(order[:i])))) for i in range(1, nv)
    }
    for u in range(nv):
        for v in range(u + 1, nv):
            if rng.random() < p:
                edges.add((u, v))
    return from_edge_list(nv, sorted(edges))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
