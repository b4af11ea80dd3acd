"""Undirected AS-level graph and its construction operations.

The graph is simple (no self-loops, no parallel edges) and immutable once
built.  Nodes are AS numbers; adjacency is kept as sorted tuples so that
every iteration order, and therefore every emitted artifact, is
deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import IO, Iterable, Iterator

import numpy as np

from .errors import EmptyGraphError, GraphBuildError

__all__ = [
    "Asn",
    "AsGraph",
    "ASN_MAX",
    "build_from_edges",
    "merge",
    "induced_subgraph",
    "giant_component",
    "connected_components",
    "edge_lines",
    "write_edge_file",
]

Asn = int

ASN_MAX = 2**32  # exclusive upper bound: ASNs are 32-bit identifiers


def check_asn(value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise GraphBuildError(f"ASN must be an integer, got {value!r}")
    if not 0 <= value < ASN_MAX:
        raise GraphBuildError(f"ASN {value} outside [0, 2^32)")
    return value


class AsGraph:
    """Immutable undirected simple graph over AS numbers.

    Build through :func:`build_from_edges` (or the ingest parsers) rather
    than instantiating directly.
    """

    __slots__ = ("_adj", "_nodes", "_m", "_csr")

    def __init__(self, adj: dict[Asn, tuple[Asn, ...]], m: int):
        self._adj = adj
        self._nodes: tuple[Asn, ...] = tuple(sorted(adj))
        self._m = m
        self._csr = None

    # -- basic accessors ------------------------------------------------

    @property
    def n(self) -> int:
        """Node count."""
        return len(self._adj)

    @property
    def m(self) -> int:
        """Edge count (each undirected edge counted once)."""
        return self._m

    @property
    def nodes(self) -> tuple[Asn, ...]:
        """All ASNs in ascending order."""
        return self._nodes

    def has_node(self, a: Asn) -> bool:
        return a in self._adj

    def degree(self, a: Asn) -> int:
        return len(self._adj[a])

    def neighbors(self, a: Asn) -> tuple[Asn, ...]:
        """Neighbor ASNs of ``a`` in ascending order."""
        return self._adj[a]

    def has_edge(self, a: Asn, b: Asn) -> bool:
        nbrs = self._adj.get(a)
        if nbrs is None:
            return False
        lo, hi = 0, len(nbrs)
        while lo < hi:
            mid = (lo + hi) // 2
            if nbrs[mid] < b:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(nbrs) and nbrs[lo] == b

    def edges(self) -> Iterator[tuple[Asn, Asn]]:
        """Edges as (u, v) with u < v, in ascending numeric order."""
        for u in self._nodes:
            for v in self._adj[u]:
                if v > u:
                    yield (u, v)

    def degrees(self) -> Iterator[tuple[Asn, int]]:
        for u in self._nodes:
            yield u, len(self._adj[u])

    def __contains__(self, a: Asn) -> bool:
        return a in self._adj

    def __repr__(self) -> str:
        return f"AsGraph(n={self.n}, m={self.m})"

    def validate(self) -> None:
        """Check the structural invariants; raises on violation.

        O(n + m); intended for tests and debugging, constructors already
        guarantee these by construction.
        """
        deg_total = 0
        for u, nbrs in self._adj.items():
            check_asn(u)
            deg_total += len(nbrs)
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphBuildError(f"adjacency of {u} not a sorted set")
            for v in nbrs:
                if v == u:
                    raise GraphBuildError(f"self-loop at {u}")
                if u not in self._adj.get(v, ()):
                    raise GraphBuildError(f"asymmetric edge {u}-{v}")
        if deg_total != 2 * self._m:
            raise GraphBuildError(
                f"degree sum {deg_total} != 2*m = {2 * self._m}"
            )

    # -- compressed adjacency for the kernels ---------------------------

    def csr(self):
        """Index-based adjacency arrays for the compiled kernels.

        Returns ``(asns, indptr, indices, edge_ids, edge_list)`` where
        ``asns[i]`` is the ASN of node index ``i`` (ascending), ``indptr``/
        ``indices`` are the usual compressed layout, ``edge_ids[j]`` maps
        adjacency slot ``j`` to an undirected edge index, and
        ``edge_list[e]`` is that edge as an (u, v) ASN pair with u < v in
        ascending numeric order.  Cached after the first call.
        """
        if self._csr is None:
            asns = self._nodes
            index = {a: i for i, a in enumerate(asns)}
            n = len(asns)
            indptr = np.zeros(n + 1, dtype=np.int64)
            for i, a in enumerate(asns):
                indptr[i + 1] = indptr[i] + len(self._adj[a])
            indices = np.empty(int(indptr[n]), dtype=np.int32)
            edge_ids = np.empty(int(indptr[n]), dtype=np.int32)
            edge_list = list(self.edges())
            edge_index = {e: k for k, e in enumerate(edge_list)}
            pos = indptr[:-1].copy()
            for u in asns:
                iu = index[u]
                for v in self._adj[u]:
                    j = pos[iu]
                    indices[j] = index[v]
                    edge_ids[j] = edge_index[(u, v) if u < v else (v, u)]
                    pos[iu] += 1
            self._csr = (asns, indptr, indices, edge_ids, edge_list)
        return self._csr


def _build(edge_set: set[tuple[Asn, Asn]], nodes: set[Asn]) -> AsGraph:
    adj: dict[Asn, list[Asn]] = {a: [] for a in nodes}
    for u, v in edge_set:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return AsGraph(
        {a: tuple(sorted(nbrs)) for a, nbrs in adj.items()}, len(edge_set)
    )


def build_from_edges(
    pairs: Iterable[tuple[Asn, Asn]], nodes: Iterable[Asn] = ()
) -> AsGraph:
    """Build a graph from ASN pairs, deduplicating repeats.

    ``nodes`` adds ASNs that must be present even if isolated.  A pair with
    equal endpoints is an error identifying the ASN.
    """
    edge_set: set[tuple[Asn, Asn]] = set()
    node_set: set[Asn] = set()
    for a in nodes:
        node_set.add(check_asn(a))
    for u, v in pairs:
        check_asn(u)
        check_asn(v)
        if u == v:
            raise GraphBuildError(f"self-pair at ASN {u}")
        edge_set.add((u, v) if u < v else (v, u))
    return _build(edge_set, node_set)


def merge(graphs: Iterable[AsGraph]) -> AsGraph:
    """Union of node sets and edge sets across the inputs."""
    edge_set: set[tuple[Asn, Asn]] = set()
    node_set: set[Asn] = set()
    for g in graphs:
        node_set.update(g.nodes)
        edge_set.update(g.edges())
    return _build(edge_set, node_set)


def induced_subgraph(g: AsGraph, keep: Iterable[Asn]) -> AsGraph:
    """Restrict to ``keep``: nodes in the intersection, edges with both
    endpoints kept.  ASNs in ``keep`` absent from ``g`` are ignored."""
    kept = {a for a in keep if g.has_node(a)}
    edge_set = {
        (u, v) for u in kept for v in g.neighbors(u) if v in kept and u < v
    }
    return _build(edge_set, kept)


def connected_components(g: AsGraph) -> list[list[Asn]]:
    """Components as lists of ASNs; ordered by ascending smallest member."""
    seen: set[Asn] = set()
    comps: list[list[Asn]] = []
    for start in g.nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        comps.append(comp)
    return comps


def giant_component(g: AsGraph) -> AsGraph:
    """Subgraph induced by the largest component.

    Ties on size are broken by the smallest minimum ASN in the component.
    Empty graph is an error.
    """
    if g.n == 0:
        raise EmptyGraphError("giant_component of an empty graph")
    best: list[Asn] | None = None
    # components arrive ordered by ascending minimum ASN, so a strict size
    # comparison keeps the smallest-minimum component among ties
    for comp in connected_components(g):
        if best is None or len(comp) > len(best):
            best = comp
    assert best is not None
    return induced_subgraph(g, best)


# -- canonical on-disk edge format --------------------------------------


def edge_lines(g: AsGraph) -> list[str]:
    """Canonical serialization: every edge as ``u v`` with u < v, plus one
    bare ASN line per isolated node, all lines sorted lexicographically."""
    lines = [f"{u} {v}" for u, v in g.edges()]
    lines.extend(str(a) for a in g.nodes if g.degree(a) == 0)
    lines.sort()
    return lines


def write_edge_file(g: AsGraph, out: IO[str]) -> None:
    for line in edge_lines(g):
        out.write(line + "\n")
