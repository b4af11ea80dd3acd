"""Degree-based metrics: distributions, joint-degree structure,
correlations, clustering, and the rich-club ratio.

Tallies are integer-exact throughout; floating point enters only in the
final divisions, so every reported value is one rounding away from the
exact rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .errors import EmptyGraphError, UndefinedMetricError
from .graph import AsGraph

__all__ = [
    "DegreeDistribution",
    "JddMatrix",
    "NeighborDegree",
    "average_degree",
    "degree_distribution",
    "power_law_max_degree",
    "jdd",
    "conditional_degree",
    "avg_neighbor_degree",
    "assortativity",
    "local_clustering",
    "clustering_summaries",
    "rich_club",
]

MARGINAL_TOL = 1e-9


def average_degree(g: AsGraph) -> float:
    """Mean degree 2m/n."""
    if g.n == 0:
        raise EmptyGraphError("average degree of an empty graph")
    return 2 * g.m / g.n


@dataclass(frozen=True)
class DegreeDistribution:
    """Degree histogram of a graph (or of any node subset)."""

    counts: Mapping[int, int]
    n: int
    k_max: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.n:
            raise ValueError("degree counts do not sum to n")

    def pdf(self, k: int) -> float:
        """Fraction of nodes with degree exactly k."""
        return self.counts.get(k, 0) / self.n

    def ccdf(self, k: int) -> float:
        """Fraction of nodes with degree at least k."""
        return sum(c for d, c in self.counts.items() if d >= k) / self.n

    def mean(self) -> float:
        return sum(k * c for k, c in self.counts.items()) / self.n

    def degrees(self) -> list[int]:
        """Observed degrees, ascending."""
        return sorted(self.counts)


def degree_distribution(g: AsGraph) -> DegreeDistribution:
    if g.n == 0:
        raise EmptyGraphError("degree distribution of an empty graph")
    counts: dict[int, int] = {}
    for _a, k in g.degrees():
        counts[k] = counts.get(k, 0) + 1
    return DegreeDistribution(counts, g.n, max(counts))


def power_law_max_degree(n: int, gamma: float) -> float:
    """Expected cutoff degree n**(1/(gamma-1)) for a power-law graph."""
    if n < 1:
        raise UndefinedMetricError("need n >= 1")
    if not gamma > 1:
        raise UndefinedMetricError(f"exponent must exceed 1, got {gamma}")
    return n ** (1.0 / (gamma - 1.0))


@dataclass(frozen=True)
class JddMatrix:
    """Joint degree distribution: edge counts per unordered degree pair.

    ``edge_counts[(k1, k2)]`` with k1 <= k2 is the number of edges whose
    endpoint degrees are k1 and k2; values sum to m.  The probability
    accessor exposes the symmetric-matrix normalization: the (k1, k2)
    entry is the probability that a uniformly random edge endpoint pair
    (one per orientation, 2m total) has first degree k1 and second k2.
    Both orientations of a within-class edge land in the single diagonal
    cell, which therefore carries twice the raw count; the full matrix
    sums to exactly 1 and restores P(k) and the mean degree through the
    marginal identity.
    """

    edge_counts: Mapping[tuple[int, int], int]
    m: int

    def degrees(self) -> list[int]:
        """Degrees appearing in any cell, ascending."""
        seen = {k for pair in self.edge_counts for k in pair}
        return sorted(seen)

    def count(self, k1: int, k2: int) -> int:
        return self.edge_counts.get((k1, k2) if k1 <= k2 else (k2, k1), 0)

    def probability(self, k1: int, k2: int) -> float:
        """Symmetric-matrix cell value (sums to 1 over ordered pairs)."""
        mu = 2 if k1 == k2 else 1
        return mu * self.count(k1, k2) / (2 * self.m)

    def pair_probability(self, k1: int, k2: int) -> float:
        """Probability a random edge joins degrees {k1, k2} (unordered)."""
        return self.count(k1, k2) / self.m

    def marginal(self, k: int) -> float:
        """Row sum of the symmetric matrix: k * n(k) / (2m)."""
        total = 0
        for (a, b), c in self.edge_counts.items():
            if a == k:
                total += 2 * c if b == k else c
            elif b == k:
                total += c
        return total / (2 * self.m)


def jdd(g: AsGraph) -> JddMatrix:
    """Joint degree distribution of the graph (needs at least one edge)."""
    if g.m == 0:
        raise UndefinedMetricError("jdd needs at least one edge")
    counts: dict[tuple[int, int], int] = {}
    for u, v in g.edges():
        k1, k2 = g.degree(u), g.degree(v)
        if k1 > k2:
            k1, k2 = k2, k1
        counts[(k1, k2)] = counts.get((k1, k2), 0) + 1
    return JddMatrix(counts, g.m)


def conditional_degree(
    j: JddMatrix, d: DegreeDistribution
) -> dict[tuple[int, int], float]:
    """P(k2 | k1): probability that an edge from a degree-k1 node leads to
    a degree-k2 node, for every ordered pair with a populated cell.

    Raises when ``j`` and ``d`` disagree (marginal identity violated),
    e.g. when they come from different graphs.
    """
    mean_degree = 2 * j.m / d.n
    for k in j.degrees():
        expected = d.pdf(k)
        got = (mean_degree / k) * j.marginal(k)
        if abs(got - expected) > MARGINAL_TOL:
            raise UndefinedMetricError(
                f"jdd and degree distribution are inconsistent at k={k}: "
                f"marginal gives {got!r}, distribution gives {expected!r}"
            )
    out: dict[tuple[int, int], float] = {}
    for (k1, k2) in j.edge_counts:
        out[(k1, k2)] = mean_degree * j.probability(k1, k2) / (k1 * d.pdf(k1))
        if k1 != k2:
            out[(k2, k1)] = mean_degree * j.probability(k2, k1) / (k2 * d.pdf(k2))
    return dict(sorted(out.items()))


class NeighborDegree(NamedTuple):
    """Mean neighbor degree per degree class, raw and divided by n-1."""

    raw: dict[int, float]
    normalized: dict[int, float]


def avg_neighbor_degree(g: AsGraph) -> NeighborDegree:
    """k_nn(k): over all edge endpoints at degree-k nodes, the mean degree
    of the opposite endpoint.  Full mesh gives n-1, i.e. normalized 1."""
    if g.m == 0:
        raise UndefinedMetricError("avg_neighbor_degree needs an edge")
    sums: dict[int, int] = {}
    ends: dict[int, int] = {}
    for a, k in g.degrees():
        if k == 0:
            continue
        total = 0
        for b in g.neighbors(a):
            total += g.degree(b)
        sums[k] = sums.get(k, 0) + total
        ends[k] = ends.get(k, 0) + k
    raw = {k: sums[k] / ends[k] for k in sorted(sums)}
    norm = (g.n - 1) or 1
    return NeighborDegree(raw, {k: v / norm for k, v in raw.items()})


def assortativity(g: AsGraph) -> float:
    """Pearson correlation of endpoint degrees over the symmetrized edge
    list (each edge in both orientations).

    The sums are integers, so the result is a single rounding away from
    exact; a perfect star yields exactly -1.0.  Degenerate inputs (fewer
    than two edges, or all endpoint degrees equal) are an error.
    """
    if g.m < 2:
        raise UndefinedMetricError("assortativity needs at least 2 edges")
    s_x = 0
    s_xx = 0
    s_xy = 0
    for u, v in g.edges():
        du, dv = g.degree(u), g.degree(v)
        s_x += du + dv
        s_xx += du * du + dv * dv
        s_xy += 2 * du * dv
    count = 2 * g.m
    den = count * s_xx - s_x * s_x
    if den == 0:
        raise UndefinedMetricError(
            "assortativity undefined: endpoint degrees have zero variance"
        )
    num = count * s_xy - s_x * s_x
    return num / den


def _triangle_doubles(g: AsGraph) -> dict[int, int]:
    """Per-node 2*(number of triangles through the node)."""
    sets = {a: set(g.neighbors(a)) for a in g.nodes}
    acc = {a: 0 for a in g.nodes}
    for u, v in g.edges():
        su, sv = sets[u], sets[v]
        if len(sv) < len(su):
            su, sv = sv, su
        t = len(su & sv)
        if t:
            acc[u] += t
            acc[v] += t
    return acc


def local_clustering(g: AsGraph) -> dict[int, float]:
    """C(k): mean over degree-k nodes of (links among neighbors) divided
    by the k-choose-2 maximum, for every observed k >= 2."""
    if g.n == 0:
        raise EmptyGraphError("clustering of an empty graph")
    doubles = _triangle_doubles(g)
    tri_sums: dict[int, int] = {}
    counts: dict[int, int] = {}
    for a, k in g.degrees():
        if k < 2:
            continue
        tri_sums[k] = tri_sums.get(k, 0) + doubles[a] // 2
        counts[k] = counts.get(k, 0) + 1
    return {
        k: tri_sums[k] / (counts[k] * (k * (k - 1) // 2))
        for k in sorted(tri_sums)
    }


def clustering_summaries(g: AsGraph) -> tuple[float, float]:
    """(C_mean, C_coeff): the P(k)-weighted mean of C(k), counting
    degree-below-2 nodes as zero, and the transitivity ratio of 3 times
    the triangle count to the number of connected triplets."""
    if g.n < 3:
        raise UndefinedMetricError("clustering summaries need n >= 3")
    doubles = _triangle_doubles(g)
    c_of_k = local_clustering(g)
    dist = degree_distribution(g)
    c_mean = sum(c_of_k[k] * dist.pdf(k) for k in sorted(c_of_k))
    triplets = 0
    for _a, k in g.degrees():
        triplets += k * (k - 1) // 2
    if triplets == 0:
        raise UndefinedMetricError("no connected triplet exists")
    triangles = sum(doubles.values()) // 6
    c_coeff = 3 * triangles / triplets
    return c_mean, c_coeff


def rich_club(g: AsGraph) -> dict[float, float]:
    """phi(rho/n) for rho = 2..n: edges within the rho highest-degree
    nodes (ties by ascending ASN) over the rho-choose-2 maximum."""
    if g.n < 2:
        raise UndefinedMetricError("rich club needs at least 2 nodes")
    ranked = sorted(g.nodes, key=lambda a: (-g.degree(a), a))
    member: set[int] = {ranked[0]}
    inside = 0
    out: dict[float, float] = {}
    for rho in range(2, g.n + 1):
        node = ranked[rho - 1]
        for b in g.neighbors(node):
            if b in member:
                inside += 1
        member.add(node)
        out[rho / g.n] = inside / (rho * (rho - 1) // 2)
    return out
