"""Pure-Python kernels.

These mirror the compiled extension loop-for-loop; in particular every
floating-point operation happens in the same order with the same operand
grouping, so both backends accumulate bit-identical results.  Plain lists
are used instead of arrays because element access on them is several times
faster under the interpreter.
"""

from __future__ import annotations

import numpy as np


def brandes_block(indptr, indices, edge_ids, sources, n, m_edges):
    """Shortest-path dependency accumulation for a block of source nodes.

    Returns ``(node_acc, edge_acc)``: the interior node dependencies and
    the per-edge dependencies summed over ordered pairs (s, t) for every s
    in ``sources``, as float64 arrays of length n and m_edges.  Endpoint
    terms are not included; the caller adds them from component sizes.
    """
    ptr = indptr.tolist()
    nbr = indices.tolist()
    eid = edge_ids.tolist()
    node_acc = [0.0] * n
    edge_acc = [0.0] * m_edges
    dist = [-1] * n
    sigma = [0.0] * n
    delta = [0.0] * n
    order = [0] * n

    for s in sources.tolist():
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = order[head]
            head += 1
            dv1 = dist[v] + 1
            sv = sigma[v]
            for j in range(ptr[v], ptr[v + 1]):
                w = nbr[j]
                dw = dist[w]
                if dw < 0:
                    dist[w] = dv1
                    order[tail] = w
                    tail += 1
                    sigma[w] = sv
                elif dw == dv1:
                    sigma[w] += sv
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            dwm = dist[w] - 1
            for j in range(ptr[w], ptr[w + 1]):
                v = nbr[j]
                if dist[v] == dwm:
                    c = sigma[v] / sigma[w] * (1.0 + delta[w])
                    delta[v] += c
                    edge_acc[eid[j]] += c
            node_acc[w] += delta[w]
        for idx in range(tail):
            v = order[idx]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0

    return np.array(node_acc, dtype=np.float64), np.array(edge_acc, dtype=np.float64)


def distance_block(indptr, indices, sources, n):
    """BFS distance tallies for a block of source nodes.

    Returns ``(hist, dist_sums, reach)``: ``hist[d]`` counts ordered pairs
    (s, t) at distance d over all s in the block (length n, index 0
    unused); ``dist_sums[i]`` is the sum of distances from ``sources[i]``
    to every node it reaches; ``reach[i]`` is how many nodes that is,
    excluding the source itself.  All tallies are exact integers.
    """
    ptr = indptr.tolist()
    nbr = indices.tolist()
    hist = [0] * n
    dist_sums = []
    reach = []
    dist = [-1] * n
    order = [0] * n

    for s in sources.tolist():
        dist[s] = 0
        order[0] = s
        head = 0
        tail = 1
        total = 0
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
                    hist[dv1] += 1
                    total += dv1
        dist_sums.append(total)
        reach.append(tail - 1)
        for idx in range(tail):
            dist[order[idx]] = -1

    return (
        np.array(hist, dtype=np.int64),
        np.array(dist_sums, dtype=np.int64),
        np.array(reach, dtype=np.int64),
    )
