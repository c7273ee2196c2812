"""Exact desk-scale references.

exact_balance_rate enumerates all 2^|E| realizations of a graph; it is the
definition itself, usable up to a hard edge-count guard.  exact_estimator_
moments computes the exact law of the cycle-chord sampler on a block by
branching over tree-edge outcomes, giving closed-form means and variances
to validate the sampling path against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels
from .decompose import Block
from .graph import UncertainSignedGraph, check_balanced

ENUMERATION_GUARD = 25


class EnumerationGuardError(ValueError):
    """Instance too large for exact enumeration."""


@dataclass(frozen=True)
class EstimatorDistribution:
    atoms: tuple  # ((value, probability), ...) sorted by value
    mean: float
    variance: float


def exact_balance_rate(graph: UncertainSignedGraph) -> float:
    """Exact balance rate by enumerating every realization.

    Refuses graphs with more than ENUMERATION_GUARD edges.  Backed by a
    compiled enumeration that is bit-identical to the plain-Python
    reference below.
    """
    m = graph.edge_count
    if m > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"exact enumeration limited to {ENUMERATION_GUARD} edges, got {m}"
        )
    if m == 0:
        return 1.0
    us, vs, signs, probs = graph.arrays()
    return float(_kernels.exact_rate_sum(graph.vertex_count, us, vs, signs, probs))


def exact_balance_rate_reference(graph: UncertainSignedGraph) -> float:
    """Plain-Python enumeration via check_balanced; same accumulation order."""
    m = graph.edge_count
    if m > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"exact enumeration limited to {ENUMERATION_GUARD} edges, got {m}"
        )
    probs = [e.prob for e in graph.edges]
    total = 0.0
    for mask in range(1 << m):
        pr = 1.0
        for e in range(m):
            pr *= probs[e] if (mask >> e) & 1 else 1.0 - probs[e]
        present = [(mask >> e) & 1 == 1 for e in range(m)]
        if check_balanced(graph, present):
            total += pr
    return total


def _find_plain(parent, parity, x):
    # no path compression: state stays cheap to copy at branch points
    par = 0
    while parent[x] != x:
        par ^= parity[x]
        x = parent[x]
    return x, par


def exact_estimator_moments(block: Block, edge_order=None) -> EstimatorDistribution:
    """Exact law of the cycle-chord sampler on a block.

    Recursively branches on each tree edge's presence with weights
    (p, 1 - p); chord edges contribute their deterministic penalty factor.
    The mean equals the block's exact balance rate for any edge order.
    """
    nv = block.local_vertex_count
    m = block.edge_count
    if min(m, max(nv - 1, 0)) > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"estimator-law enumeration limited to {ENUMERATION_GUARD} "
            f"tree-edge branch points"
        )
    order = list(range(m)) if edge_order is None else list(edge_order)
    if sorted(order) != list(range(m)):
        raise ValueError("edge_order must be a permutation of the block edges")

    atoms: dict[float, float] = {}

    def walk(pos, parent, parity, weight, r):
        if pos == len(order):
            atoms[r] = atoms.get(r, 0.0) + weight
            return
        e = block.edges[order[pos]]
        ru, pu = _find_plain(parent, parity, e.u)
        rv, pv = _find_plain(parent, parity, e.v)
        if ru != rv:
            if e.prob > 0.0:
                p2 = list(parent)
                q2 = list(parity)
                p2[rv] = ru
                q2[rv] = pu ^ pv ^ e.sign
                walk(pos + 1, p2, q2, weight * e.prob, r)
            if e.prob < 1.0:
                walk(pos + 1, parent, parity, weight * (1.0 - e.prob), r)
        else:
            if (pu ^ pv) != e.sign:
                r *= 1.0 - e.prob
            walk(pos + 1, parent, parity, weight, r)

    walk(0, list(range(nv)), [0] * nv, 1.0, 1.0)

    pairs = sorted(atoms.items())
    mean = math.fsum(v * p for v, p in pairs)
    variance = math.fsum((v - mean) ** 2 * p for v, p in pairs)
    return EstimatorDistribution(atoms=tuple(pairs), mean=mean, variance=variance)
