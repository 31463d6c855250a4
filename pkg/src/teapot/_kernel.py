"""Compiled depth-first exclusion search over paths of the GIFS graph.

Graphs are passed in CSR form: ``out_start[v]:out_start[v+1]`` indexes the
edges leaving ``v``; ``out_dst`` holds targets and ``out_lab`` labels
(0 = L, 1 = R).
"""
import warnings

import numpy as np

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    import numba
    from numba import njit, prange

# TBB in this environment is too old and only produces a warning
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

STATUS_OUT = 0
STATUS_UNKNOWN = 1
STATUS_BUDGET = 2


@njit(cache=True)
def tail_radius(z):
    az = abs(z)
    return max(abs(2.0 - z), az) / (1.0 - az)


@njit(cache=True)
def classify_one(z, C, depth, slack, out_start, out_dst, out_lab, base, budget):
    """Return (status, depth, margin_or_residual, nodes) for one parameter."""
    az = abs(z)
    if az > 1.0:
        return STATUS_OUT, 0, az - 1.0, 0
    if az == 1.0:
        return STATUS_UNKNOWN, 0, np.inf, 0
    R = tail_radius(z)
    ex = abs(C) - R
    if ex > slack:
        return STATUS_OUT, 0, ex, 1
    if depth == 0:
        return STATUS_UNKNOWN, 0, abs(C), 1
    n = depth + 1
    vs = np.empty(n, np.int64)
    bs = np.empty(n, np.complex128)
    avals = np.empty(n, np.complex128)
    ei = np.empty(n, np.int64)
    pw = np.empty(n, np.float64)
    vs[0] = base
    bs[0] = 0.0
    avals[0] = 1.0
    ei[0] = out_start[base]
    pw[0] = 1.0
    lvl = 0
    nodes = 1
    margin = np.inf
    best = np.inf
    deepest_prune = 0
    tz = 2.0 - z
    while lvl >= 0:
        v = vs[lvl]
        if ei[lvl] >= out_start[v + 1]:
            lvl -= 1
            continue
        e = ei[lvl]
        ei[lvl] += 1
        a = avals[lvl]
        if out_lab[e] == 0:
            b = bs[lvl] + a * tz
            na = a * z
        else:
            b = bs[lvl] + a * z
            na = -a * z
        nodes += 1
        if nodes > budget:
            return STATUS_BUDGET, lvl + 1, best, nodes
        p = pw[lvl] * az
        ex = abs(b - C) - p * R
        if ex > slack:
            if ex < margin:
                margin = ex
            if lvl + 1 > deepest_prune:
                deepest_prune = lvl + 1
            continue
        if lvl + 1 == depth:
            r = abs(b - C)
            if r < best:
                best = r
            continue
        lvl += 1
        vs[lvl] = out_dst[e]
        bs[lvl] = b
        avals[lvl] = na
        ei[lvl] = out_start[out_dst[e]]
        pw[lvl] = p
    if best == np.inf:
        return STATUS_OUT, deepest_prune, margin, nodes
    return STATUS_UNKNOWN, depth, best, nodes


@njit(parallel=True, cache=True)
def classify_many(zs, C, depth, slack, out_start, out_dst, out_lab, base, budget):
    n = zs.shape[0]
    status = np.empty(n, np.int8)
    depths = np.empty(n, np.int64)
    values = np.empty(n, np.float64)
    nodes = np.empty(n, np.int64)
    for i in prange(n):
        s, d, v, k = classify_one(zs[i], C, depth, slack, out_start, out_dst, out_lab, base, budget)
        status[i] = s
        depths[i] = d
        values[i] = v
        nodes[i] = k
    return status, depths, values, nodes


def set_threads(threads):
    """Use ``threads`` worker threads (None or "auto" = all available)."""
    limit = numba.config.NUMBA_NUM_THREADS
    if threads in (None, "auto"):
        numba.set_num_threads(limit)
    else:
        numba.set_num_threads(max(1, min(int(threads), limit)))
