"""Distance, betweenness, and spectral metrics.

These are the whole-graph sweeps: every one runs a breadth-first search
from each node (or an eigensolver over the full adjacency), so they route
through the kernel backends.  Betweenness follows the shortest-path
dependency-accumulation scheme with an extra pass that credits path
endpoints, so a star hub reaches the maximum n(n-1) over ordered pairs.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

import numpy as np

from . import _kernels
from .errors import (
    ConvergenceError,
    DisconnectedGraphError,
    EmptyGraphError,
    UndefinedMetricError,
)
from .graph import AsGraph, Asn, connected_components

__all__ = [
    "DistanceStats",
    "BetweennessResult",
    "SpectrumResult",
    "distance_distribution",
    "avg_distance_by_degree",
    "betweenness",
    "node_betweenness_by_degree",
    "edge_betweenness_by_degrees",
    "spectrum_top",
]

# Sources are processed in fixed-size blocks whose partial tallies are
# combined in block order, so results are bit-identical for every worker
# count.  The block size is part of that contract; do not derive it from
# the worker count.
_SOURCE_BLOCK = 256

Scalar = Union[float, Fraction]


def _source_blocks(n: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + _SOURCE_BLOCK, n)) for lo in range(0, n, _SOURCE_BLOCK)]


_WORKER_CSR = None


def _init_worker(indptr, indices, edge_ids, n, m_edges):
    global _WORKER_CSR
    _WORKER_CSR = (indptr, indices, edge_ids, n, m_edges)


def _brandes_task(block: tuple[int, int]):
    indptr, indices, edge_ids, n, m_edges = _WORKER_CSR
    sources = np.arange(block[0], block[1], dtype=np.int32)
    return _kernels.brandes_block(indptr, indices, edge_ids, sources, n, m_edges)


def _distance_task(block: tuple[int, int]):
    indptr, indices, _edge_ids, n, _m_edges = _WORKER_CSR
    sources = np.arange(block[0], block[1], dtype=np.int32)
    return _kernels.distance_block(indptr, indices, sources, n)


def _run_blocks(task, g: AsGraph, workers: int) -> list:
    """Run ``task`` over the source blocks, results in block order."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    asns, indptr, indices, edge_ids, edge_list = g.csr()
    args = (indptr, indices, edge_ids, g.n, len(edge_list))
    blocks = _source_blocks(g.n)
    if workers == 1 or len(blocks) <= 1:
        _init_worker(*args)
        return [task(b) for b in blocks]
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=args
    ) as pool:
        return list(pool.map(task, blocks))


# -- distances -----------------------------------------------------------


@dataclass(frozen=True)
class DistanceStats:
    """Shortest-path length distribution over unordered node pairs."""

    n: int
    counts: Mapping[int, int]
    mean: float
    sigma: float

    @property
    def pair_count(self) -> int:
        return sum(self.counts.values())

    def probability(self, d: int) -> float:
        return self.counts.get(d, 0) / self.pair_count

    def expansion(self, d: int) -> float:
        """Distance distribution scaled by graph size."""
        return self.probability(d) * self.n


def _distance_sweep(g: AsGraph, workers: int):
    """Full BFS sweep: ordered-pair histogram and per-node distance sums."""
    hist = np.zeros(g.n, dtype=np.int64)
    sums = np.zeros(g.n, dtype=np.int64)
    reach = np.zeros(g.n, dtype=np.int64)
    pos = 0
    for h, s, r in _run_blocks(_distance_task, g, workers):
        hist += h
        sums[pos : pos + len(s)] = s
        reach[pos : pos + len(r)] = r
        pos += len(s)
    return hist, sums, reach


def _require_connected(g: AsGraph) -> None:
    if g.n == 0:
        raise EmptyGraphError("empty graph")
    if len(connected_components(g)) != 1:
        raise DisconnectedGraphError(
            "graph is disconnected; reduce to giant_component first"
        )


def distance_distribution(g: AsGraph, workers: int = 1) -> DistanceStats:
    """Distribution of shortest-path lengths over unordered pairs, with
    its mean and population standard deviation.  Requires a connected
    graph with at least two nodes."""
    _require_connected(g)
    if g.n < 2:
        raise UndefinedMetricError("distances need at least 2 nodes")
    hist_ordered, _sums, _reach = _distance_sweep(g, workers)
    counts = {
        d: int(c) // 2 for d, c in enumerate(hist_ordered.tolist()) if c
    }
    total = sum(counts.values())
    s1 = sum(d * c for d, c in counts.items())
    s2 = sum(d * d * c for d, c in counts.items())
    mean = s1 / total
    var = (s2 * total - s1 * s1) / (total * total)
    return DistanceStats(g.n, counts, mean, math.sqrt(var))


def avg_distance_by_degree(g: AsGraph, workers: int = 1) -> dict[int, float]:
    """Mean distance to all other nodes, averaged within each degree
    class.  Requires a connected graph with at least two nodes."""
    _require_connected(g)
    if g.n < 2:
        raise UndefinedMetricError("distances need at least 2 nodes")
    _hist, sums, _reach = _distance_sweep(g, workers)
    asns = g.nodes
    by_degree: dict[int, list[int]] = {}
    for i, a in enumerate(asns):
        by_degree.setdefault(g.degree(a), []).append(int(sums[i]))
    return {
        k: sum(v) / (len(v) * (g.n - 1))
        for k, v in sorted(by_degree.items())
    }


# -- betweenness ----------------------------------------------------------


@dataclass(frozen=True)
class BetweennessResult:
    """Node and edge betweenness over ordered node pairs.

    ``node_b[v]`` counts, over all ordered pairs (s, t), the fraction of
    shortest s-t paths on which v lies, with v counted when it is an
    endpoint; a star hub therefore attains n(n-1) exactly.  ``edge_b``
    counts path traversals per edge the same way.  ``norm`` is n(n-1).
    Values are floats, or exact rationals from ``betweenness(exact=True)``.
    """

    node_b: Mapping[Asn, Scalar]
    edge_b: Mapping[tuple[Asn, Asn], Scalar]
    norm: int

    def node_normalized(self) -> dict[Asn, Scalar]:
        return {a: v / self.norm for a, v in self.node_b.items()}

    def edge_normalized(self) -> dict[tuple[Asn, Asn], Scalar]:
        return {e: v / self.norm for e, v in self.edge_b.items()}

    def mean_node_normalized(self) -> float:
        return float(sum(self.node_b.values())) / (len(self.node_b) * self.norm)

    def mean_edge_normalized(self) -> float:
        if not self.edge_b:
            raise UndefinedMetricError("no edges")
        return float(sum(self.edge_b.values())) / (len(self.edge_b) * self.norm)


def _component_sizes(g: AsGraph) -> dict[Asn, int]:
    sizes: dict[Asn, int] = {}
    for comp in connected_components(g):
        for a in comp:
            sizes[a] = len(comp)
    return sizes


def _betweenness_exact(g: AsGraph) -> BetweennessResult:
    """Dependency accumulation in exact rational arithmetic."""
    asns, indptr, indices, edge_ids, edge_list = g.csr()
    ptr = indptr.tolist()
    nbr = indices.tolist()
    eid = edge_ids.tolist()
    n = g.n
    node_acc: list[Fraction | int] = [0] * n
    edge_acc: list[Fraction | int] = [0] * len(edge_list)
    dist = [-1] * n
    sigma = [0] * n
    delta: list[Fraction | int] = [0] * n
    order = [0] * n
    for s in range(n):
        dist[s] = 0
        sigma[s] = 1
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            v = order[head]
            head += 1
            dv1 = dist[v] + 1
            for j in range(ptr[v], ptr[v + 1]):
                w = nbr[j]
                if dist[w] < 0:
                    dist[w] = dv1
                    order[tail] = w
                    tail += 1
                    sigma[w] = sigma[v]
                elif dist[w] == dv1:
                    sigma[w] += sigma[v]
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            dwm = dist[w] - 1
            for j in range(ptr[w], ptr[w + 1]):
                v = nbr[j]
                if dist[v] == dwm:
                    c = Fraction(sigma[v], sigma[w]) * (1 + delta[w])
                    delta[v] += c
                    edge_acc[eid[j]] += c
            node_acc[w] += delta[w]
        for idx in range(tail):
            v = order[idx]
            dist[v] = -1
            sigma[v] = 0
            delta[v] = 0
    sizes = _component_sizes(g)
    node_b = {
        a: node_acc[i] + 2 * (sizes[a] - 1) for i, a in enumerate(asns)
    }
    edge_b = {e: edge_acc[k] for k, e in enumerate(edge_list)}
    return BetweennessResult(node_b, edge_b, g.n * (g.n - 1))


def betweenness(g: AsGraph, workers: int = 1, exact: bool = False) -> BetweennessResult:
    """Node and edge betweenness over ordered pairs, endpoints included.

    Unreachable pairs contribute nothing, so disconnected graphs are fine.
    ``exact=True`` switches to rational arithmetic (for verification at
    small scale; the default float path is within rounding of it).
    """
    if g.n < 2:
        raise UndefinedMetricError("betweenness needs at least 2 nodes")
    if exact:
        return _betweenness_exact(g)
    asns, _indptr, _indices, _edge_ids, edge_list = g.csr()
    node_acc = np.zeros(g.n, dtype=np.float64)
    edge_acc = np.zeros(len(edge_list), dtype=np.float64)
    for na, ea in _run_blocks(_brandes_task, g, workers):
        node_acc += na
        edge_acc += ea
    sizes = _component_sizes(g)
    node_b = {
        a: float(node_acc[i]) + 2.0 * (sizes[a] - 1)
        for i, a in enumerate(asns)
    }
    edge_b = {e: float(edge_acc[k]) for k, e in enumerate(edge_list)}
    return BetweennessResult(node_b, edge_b, g.n * (g.n - 1))


def node_betweenness_by_degree(g: AsGraph, result: BetweennessResult) -> dict[int, float]:
    """Mean normalized node betweenness within each degree class."""
    by_degree: dict[int, list[float]] = {}
    for a, v in result.node_b.items():
        by_degree.setdefault(g.degree(a), []).append(float(v))
    return {
        k: sum(vals) / (len(vals) * result.norm)
        for k, vals in sorted(by_degree.items())
    }


def edge_betweenness_by_degrees(
    g: AsGraph, result: BetweennessResult
) -> dict[tuple[int, int], float]:
    """Mean normalized edge betweenness per unordered degree pair."""
    by_pair: dict[tuple[int, int], list[float]] = {}
    for (u, v), value in result.edge_b.items():
        k1, k2 = sorted((g.degree(u), g.degree(v)))
        by_pair.setdefault((k1, k2), []).append(float(value))
    return {
        pair: sum(vals) / (len(vals) * result.norm)
        for pair, vals in sorted(by_pair.items())
    }


# -- spectrum --------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumResult:
    """Largest-magnitude adjacency eigenvalues, signs preserved."""

    eigenvalues: tuple[float, ...]
    n: int
    method: str

    @property
    def k(self) -> int:
        return len(self.eigenvalues)


_DENSE_LIMIT = 4096

# deterministic start vector seed for the iterative solver
_V0_SEED = 2748499


def _order_by_magnitude(values: np.ndarray, k: int) -> tuple[float, ...]:
    """Top-k by descending |value|; near-ties resolve positive-first."""
    vals = sorted(values.tolist(), key=lambda x: -abs(x))
    i = 0
    while i + 1 < len(vals):
        j = i + 1
        scale = max(abs(vals[i]), 1e-300)
        while j < len(vals) and abs(abs(vals[j]) - abs(vals[i])) <= 1e-9 * scale:
            j += 1
        if j - i > 1:
            vals[i:j] = sorted(vals[i:j], reverse=True)
        i = j
    return tuple(vals[:k])


def spectrum_top(g: AsGraph, k: int | None = None, method: str = "auto") -> SpectrumResult:
    """The k largest-|lambda| adjacency eigenvalues in descending
    magnitude.  ``k`` defaults to 10% of the nodes (rounded up).

    ``method`` is "auto" (dense up to 4096 nodes, iterative above),
    "dense", or "iterative"; the result is the same within the iterative
    solver's tolerance.
    """
    if g.n == 0:
        raise EmptyGraphError("spectrum of an empty graph")
    if k is None:
        k = math.ceil(0.10 * g.n)
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} outside [1, n={g.n}]")
    if method == "auto":
        method = "dense" if g.n <= _DENSE_LIMIT or k > g.n - 2 else "iterative"
    if method == "dense":
        return SpectrumResult(_spectrum_dense(g, k), g.n, "dense")
    if method == "iterative":
        if k > g.n - 2:
            raise ValueError("iterative solver needs k <= n - 2")
        return SpectrumResult(_spectrum_iterative(g, k), g.n, "iterative")
    raise ValueError(f"unknown method {method!r}")


def _adjacency_sparse(g: AsGraph):
    import scipy.sparse as sp

    _asns, indptr, indices, _eids, _edges = g.csr()
    data = np.ones(len(indices), dtype=np.float64)
    return sp.csr_matrix((data, indices, indptr), shape=(g.n, g.n))


def _spectrum_dense(g: AsGraph, k: int) -> tuple[float, ...]:
    a = np.zeros((g.n, g.n), dtype=np.float64)
    index = {asn: i for i, asn in enumerate(g.nodes)}
    for u, v in g.edges():
        iu, iv = index[u], index[v]
        a[iu, iv] = 1.0
        a[iv, iu] = 1.0
    return _order_by_magnitude(np.linalg.eigvalsh(a), k)


def _spectrum_iterative(g: AsGraph, k: int) -> tuple[float, ...]:
    import scipy.sparse.linalg as spl

    a = _adjacency_sparse(g)
    v0 = np.random.default_rng(_V0_SEED).standard_normal(g.n)
    try:
        vals = spl.eigsh(
            a, k=k, which="LM", v0=v0, tol=1e-9, return_eigenvectors=False
        )
    except spl.ArpackNoConvergence as exc:
        residual = None
        if exc.eigenvalues is not None and len(exc.eigenvalues):
            vecs = exc.eigenvectors
            res = a @ vecs - vecs * exc.eigenvalues
            residual = float(np.max(np.linalg.norm(res, axis=0)))
        raise ConvergenceError(
            f"eigensolver converged {len(exc.eigenvalues)} of {k} values",
            residual,
        ) from exc
    return _order_by_magnitude(vals, k)
