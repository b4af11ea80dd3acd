"""Pairwise graph comparison: set deltas, exclusive degree profiles, and
reduction to the common node set."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyGraphError, UndefinedMetricError
from .graph import AsGraph, induced_subgraph
from .local_metrics import DegreeDistribution

__all__ = [
    "GraphDelta",
    "graph_delta",
    "exclusive_degree_distribution",
    "reduced_pair",
]


@dataclass(frozen=True)
class GraphDelta:
    """Counts of shared and exclusive nodes and edges between two graphs."""

    nodes_both: int
    nodes_only_a: int
    nodes_only_b: int
    edges_both: int
    edges_only_a: int
    edges_only_b: int


def graph_delta(a: AsGraph, b: AsGraph) -> GraphDelta:
    nodes_a = set(a.nodes)
    nodes_b = set(b.nodes)
    edges_a = set(a.edges())
    edges_b = set(b.edges())
    return GraphDelta(
        nodes_both=len(nodes_a & nodes_b),
        nodes_only_a=len(nodes_a - nodes_b),
        nodes_only_b=len(nodes_b - nodes_a),
        edges_both=len(edges_a & edges_b),
        edges_only_a=len(edges_a - edges_b),
        edges_only_b=len(edges_b - edges_a),
    )


def exclusive_degree_distribution(a: AsGraph, b: AsGraph) -> DegreeDistribution:
    """Degree distribution of the nodes of ``a`` absent from ``b``,
    with degrees measured in ``a``."""
    exclusive = [u for u in a.nodes if not b.has_node(u)]
    if not exclusive:
        raise UndefinedMetricError("no exclusive nodes: a is a subset of b")
    counts: dict[int, int] = {}
    for u in exclusive:
        k = a.degree(u)
        counts[k] = counts.get(k, 0) + 1
    return DegreeDistribution(counts, len(exclusive), max(counts))


def reduced_pair(a: AsGraph, b: AsGraph) -> tuple[AsGraph, AsGraph]:
    """Both graphs induced on their common node set, for like-for-like
    metric comparison."""
    common = [u for u in a.nodes if b.has_node(u)]
    if not common:
        raise EmptyGraphError("graphs share no nodes")
    return induced_subgraph(a, common), induced_subgraph(b, common)
