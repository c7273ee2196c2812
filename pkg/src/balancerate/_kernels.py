"""Numba kernels for the hot loops: per-sample parity DSU passes.

Each sample owns its own parent/parity/rank arrays, so the batched kernels
are free of shared mutable state and deterministic under any thread count.
Parity semantics match paritydsu.ParityDSU (path compression, union by rank,
ties promoting the first root).
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True, inline="always")
def _find(parent, parity, x):
    root = x
    par = 0
    while parent[root] != root:
        par ^= parity[root]
        root = parent[root]
    cur = x
    cur_par = par
    while parent[cur] != root:
        nxt = parent[cur]
        nxt_par = cur_par ^ parity[cur]
        parent[cur] = root
        parity[cur] = cur_par
        cur = nxt
        cur_par = nxt_par
    return root, par


@njit(cache=True, parallel=True, nogil=True)
def cci_batch(nv, us, vs, signs, probs, uniforms, out, out_offset):
    """Cycle-chord integration samples; one row of uniforms per sample.

    Tree edges (roots differ) consume their uniform as a Bernoulli(p) draw;
    chord edges are integrated analytically, multiplying the running
    estimate by (1 - p) iff the chord would close a negative cycle.
    """
    rows = uniforms.shape[0]
    m = us.shape[0]
    for k in prange(rows):
        parent = np.empty(nv, np.int64)
        parity = np.zeros(nv, np.int64)
        rank = np.zeros(nv, np.int64)
        for i in range(nv):
            parent[i] = i
        r = 1.0
        for e in range(m):
            ru, pu = _find(parent, parity, us[e])
            rv, pv = _find(parent, parity, vs[e])
            if ru != rv:
                if uniforms[k, e] < probs[e]:
                    offset = pu ^ pv ^ signs[e]
                    if rank[ru] < rank[rv]:
                        parent[ru] = rv
                        parity[ru] = offset
                    else:
                        parent[rv] = ru
                        parity[rv] = offset
                        if rank[ru] == rank[rv]:
                            rank[ru] += 1
            else:
                if (pu ^ pv) != signs[e]:
                    r *= 1.0 - probs[e]
        out[out_offset + k] = r


@njit(cache=True, parallel=True, nogil=True)
def mc_batch(nv, us, vs, signs, probs, uniforms, out, out_offset):
    """Naive Monte Carlo: realize every edge, return the balance indicator."""
    rows = uniforms.shape[0]
    m = us.shape[0]
    for k in prange(rows):
        parent = np.empty(nv, np.int64)
        parity = np.zeros(nv, np.int64)
        rank = np.zeros(nv, np.int64)
        for i in range(nv):
            parent[i] = i
        balanced = True
        for e in range(m):
            if uniforms[k, e] >= probs[e]:
                continue
            ru, pu = _find(parent, parity, us[e])
            rv, pv = _find(parent, parity, vs[e])
            if ru == rv:
                if (pu ^ pv) != signs[e]:
                    balanced = False
                    break
            else:
                offset = pu ^ pv ^ signs[e]
                if rank[ru] < rank[rv]:
                    parent[ru] = rv
                    parity[ru] = offset
                else:
                    parent[rv] = ru
                    parity[rv] = offset
                    if rank[ru] == rank[rv]:
                        rank[ru] += 1
        out[out_offset + k] = 1.0 if balanced else 0.0


@njit(cache=True)
def exact_rate_sum(nv, us, vs, signs, probs):
    """Sum Pr(realization) over all balanced realizations, by enumeration.

    Mask bit e set means edge e is present.  Per-mask probabilities and the
    outer sum are accumulated in ascending index order so the result is
    bit-identical to the naive Python enumeration.
    """
    m = us.shape[0]
    parent = np.empty(nv, np.int64)
    parity = np.zeros(nv, np.int64)
    rank = np.zeros(nv, np.int64)
    total = 0.0
    for mask in range(1 << m):
        pr = 1.0
        for e in range(m):
            if (mask >> e) & 1:
                pr *= probs[e]
            else:
                pr *= 1.0 - probs[e]
        for i in range(nv):
            parent[i] = i
            parity[i] = 0
            rank[i] = 0
        balanced = True
        for e in range(m):
            if not (mask >> e) & 1:
                continue
            ru, pu = _find(parent, parity, us[e])
            rv, pv = _find(parent, parity, vs[e])
            if ru == rv:
                if (pu ^ pv) != signs[e]:
                    balanced = False
                    break
            else:
                offset = pu ^ pv ^ signs[e]
                if rank[ru] < rank[rv]:
                    parent[ru] = rv
                    parity[ru] = offset
                else:
                    parent[rv] = ru
                    parity[rv] = offset
                    if rank[ru] == rank[rv]:
                        rank[ru] += 1
        if balanced:
            total += pr
    return total
