"""Seeded synthetic graph generators for tests and benchmarks."""

from __future__ import annotations

import random

from .graph import AsGraph, build_from_edges

__all__ = ["scale_free", "gnp", "random_connected"]


def scale_free(n: int, attach: int = 3, seed: int = 0) -> AsGraph:
    """Preferential-attachment graph: each new node links to ``attach``
    distinct existing nodes chosen proportionally to degree, giving
    roughly attach * n edges and a heavy-tailed degree sequence.
    Nodes are ASNs 1..n."""
    if n < attach + 1:
        raise ValueError("need n > attach")
    rng = random.Random(seed)
    edges = []
    # endpoint pool: every edge contributes both ends, so sampling the
    # pool is sampling proportionally to degree
    pool: list[int] = []
    core = attach + 1
    for u in range(1, core + 1):
        for v in range(u + 1, core + 1):
            edges.append((u, v))
            pool.append(u)
            pool.append(v)
    for u in range(core + 1, n + 1):
        chosen: set[int] = set()
        while len(chosen) < attach:
            chosen.add(pool[rng.randrange(len(pool))])
        for v in chosen:
            edges.append((u, v))
            pool.append(u)
            pool.append(v)
    return build_from_edges(edges)


def gnp(n: int, p: float, seed: int = 0) -> AsGraph:
    """Erdos-Renyi graph on ASNs 1..n with edge probability p."""
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if rng.random() < p
    ]
    return build_from_edges(edges, nodes=range(1, n + 1))


def random_connected(n: int, extra: int = 0, seed: int = 0) -> AsGraph:
    """Connected graph on ASNs 1..n: a random recursive tree plus up to
    ``extra`` additional random edges."""
    rng = random.Random(seed)
    edges = {(rng.randrange(1, u), u) for u in range(2, n + 1)}
    for _ in range(extra):
        u = rng.randrange(1, n + 1)
        v = rng.randrange(1, n + 1)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return build_from_edges(edges, nodes=range(1, n + 1))
