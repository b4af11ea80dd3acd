# cython: language_level=3, boundscheck=False, wraparound=False
# cython: initializedcheck=False, cdivision=True
"""Compiled kernels.

Same contract (and the same floating-point operation order) as the
pure-Python module next to this one; see its docstrings.
"""

import numpy as np


def brandes_block(indptr, indices, edge_ids, sources, int n, int m_edges):
    cdef long long[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int[::1] nbr = np.ascontiguousarray(indices, dtype=np.int32)
    cdef int[::1] eid = np.ascontiguousarray(edge_ids, dtype=np.int32)
    cdef int[::1] src = np.ascontiguousarray(sources, dtype=np.int32)

    node_acc_arr = np.zeros(n, dtype=np.float64)
    edge_acc_arr = np.zeros(m_edges, dtype=np.float64)
    cdef double[::1] node_acc = node_acc_arr
    cdef double[::1] edge_acc = edge_acc_arr

    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    sigma_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] sigma = sigma_arr
    delta_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] delta = delta_arr
    order_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] order = order_arr

    cdef Py_ssize_t si, j, idx
    cdef int s, v, w, head, tail, dv1, dw, dwm
    cdef double sv, c

    for si in range(src.shape[0]):
        s = src[si]
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

    return node_acc_arr, edge_acc_arr


def distance_block(indptr, indices, sources, int n):
    cdef long long[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int[::1] nbr = np.ascontiguousarray(indices, dtype=np.int32)
    cdef int[::1] src = np.ascontiguousarray(sources, dtype=np.int32)

    hist_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] hist = hist_arr
    dist_sums_arr = np.zeros(src.shape[0], dtype=np.int64)
    cdef long long[::1] dist_sums = dist_sums_arr
    reach_arr = np.zeros(src.shape[0], dtype=np.int64)
    cdef long long[::1] reach = reach_arr

    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    order_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] order = order_arr

    cdef Py_ssize_t si, j, idx
    cdef int s, v, w, head, tail, dv1
    cdef long long total

    for si in range(src.shape[0]):
        s = src[si]
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
        dist_sums[si] = total
        reach[si] = tail - 1
        for idx in range(tail):
            dist[order[idx]] = -1

    return hist_arr, dist_sums_arr, reach_arr
