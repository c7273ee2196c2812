"""Synthetic instances and the balance-rate experiment protocols.

Covers: the sparse generator (spanning tree backbone + random edges +
triadic closure to |E| = 5n, with density-adaptive probabilities), balanced
base graphs built constructively from a hidden bipartition, conflict-edge
injection, global probability scaling, (eta, p_mul) sweeps, and greedy
recovery of critical edges by balance-rate maximization.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Sequence

from .graph import NEGATIVE, POSITIVE, SignedEdge, UncertainSignedGraph
from .paritydsu import ParityDSU
from .sampler import SamplePlan, estimate


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    negative_ratio: float = 0.15
    prob_scale: float = 1.0  # free constant in the probability heuristic
    seed: int = 0


@dataclass(frozen=True)
class CriticalGroundTruth:
    bipartition: tuple  # side bit per vertex
    injected: frozenset  # edge indices violating the bipartition


@dataclass(frozen=True)
class SweepRow:
    eta: float
    p_mul: float
    estimate: float
    lo: float
    hi: float


def _uniform_spanning_tree(n: int, rnd: random.Random) -> list[tuple[int, int]]:
    """Uniform random labelled tree via a random Pruefer sequence."""
    if n == 2:
        return [(0, 1)]
    prufer = [rnd.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in prufer:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapify(leaves)
    edges = []
    for x in prufer:
        leaf = heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heappush(leaves, x)
    u = heappop(leaves)
    v = heappop(leaves)
    edges.append((u, v))
    return edges


def gen_sparse(config: GeneratorConfig) -> UncertainSignedGraph:
    """Connected sparse instance with |E| = 5n.

    Construction: uniform spanning tree; uniformly random extra edges up to
    floor(3n/2); then repeated triadic closure (adding the missing edge of a
    random length-two path) up to 5n.  Signs are independent
    Bernoulli(negative_ratio).  Probabilities are u_e * min(1, c*sqrt(n)/dbar)
    with dbar = |E|/n and u_e ~ Uniform(0, 1).
    """
    n = config.n
    if n < 3:
        raise ValueError("gen_sparse requires n >= 3")
    rnd = random.Random(config.seed)
    pairs = []
    seen = set()
    adj = [[] for _ in range(n)]

    def add_pair(u, v):
        key = (u, v) if u < v else (v, u)
        if u == v or key in seen:
            return False
        seen.add(key)
        pairs.append(key)
        adj[u].append(v)
        adj[v].append(u)
        return True

    for u, v in _uniform_spanning_tree(n, rnd):
        add_pair(u, v)

    target_random = (3 * n) // 2
    attempts = 0
    limit = 200 * target_random + 1000
    while len(pairs) < target_random:
        attempts += 1
        if attempts > limit:
            raise GenerationError("random densification target unreachable")
        add_pair(rnd.randrange(n), rnd.randrange(n))

    target = 5 * n
    attempts = 0
    limit = 200 * target + 1000
    while len(pairs) < target:
        attempts += 1
        if attempts > limit:
            raise GenerationError("triadic closure target unreachable")
        w = rnd.randrange(n)
        if len(adj[w]) < 2:
            continue
        u, v = rnd.sample(adj[w], 2)
        add_pair(u, v)

    m = len(pairs)
    scale = min(1.0, config.prob_scale * math.sqrt(n) / (m / n))
    edges = []
    for u, v in pairs:
        sign = NEGATIVE if rnd.random() < config.negative_ratio else POSITIVE
        edges.append(SignedEdge(u, v, sign, rnd.random() * scale))
    return UncertainSignedGraph(n, edges)


def gen_balanced(n: int, m: int, negative_ratio: float = 0.15,
                 seed: int = 0) -> tuple[UncertainSignedGraph, tuple]:
    """Structurally balanced connected graph with m edges, plus its bipartition.

    Signs are forced consistent with a random bipartition (within-side
    positive, cross-side negative); the side sizes are chosen so the expected
    negative fraction approximates negative_ratio.  All probabilities are 1;
    rescale or redraw them for experiments.  No sub-realization contains a
    negative cycle, so the exact balance rate is 1 for any probabilities.
    """
    if m < n - 1:
        raise ValueError("need m >= n - 1 for a connected graph")
    if m > n * (n - 1) // 2:
        raise GenerationError("m exceeds simple-graph capacity")
    rnd = random.Random(seed)
    # side size a with cross-pair fraction a(n-a)/C(n,2) ~ negative_ratio
    disc = n * n - 2.0 * negative_ratio * n * (n - 1)
    if disc >= 0:
        a = int(round((n - math.sqrt(disc)) / 2.0))
    else:
        a = n // 2
    a = min(max(a, 0), n)
    order = list(range(n))
    rnd.shuffle(order)
    side = [0] * n
    for i in range(a):
        side[order[i]] = 1

    pairs = []
    seen = set()

    def add_pair(u, v):
        key = (u, v) if u < v else (v, u)
        if u == v or key in seen:
            return False
        seen.add(key)
        pairs.append(key)
        return True

    for v in range(1, n):
        add_pair(v, rnd.randrange(v))
    attempts = 0
    limit = 400 * m + 1000
    while len(pairs) < m:
        attempts += 1
        if attempts > limit:
            raise GenerationError("edge target unreachable")
        add_pair(rnd.randrange(n), rnd.randrange(n))

    edges = [
        SignedEdge(u, v, NEGATIVE if side[u] != side[v] else POSITIVE, 1.0)
        for u, v in pairs
    ]
    return UncertainSignedGraph(n, edges), tuple(side)


def recover_bipartition(graph: UncertainSignedGraph) -> tuple:
    """Two-coloring of a balanced graph from its signs (per component).

    Raises ValueError if the all-present realization is unbalanced.
    """
    n = graph.vertex_count
    adj = [[] for _ in range(n)]
    for e in graph.edges:
        if e.u == e.v:
            if e.sign == NEGATIVE:
                raise ValueError("negative self-loop: graph is not balanced")
            continue
        adj[e.u].append((e.v, e.sign))
        adj[e.v].append((e.u, e.sign))
    side = [-1] * n
    for root in range(n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = [root]
        while queue:
            u = queue.pop()
            for v, sign in adj[u]:
                want = side[u] ^ sign
                if side[v] == -1:
                    side[v] = want
                    queue.append(v)
                elif side[v] != want:
                    raise ValueError("graph is not balanced: no consistent "
                                     "bipartition exists")
    return tuple(side)


def inject_critical_edges(graph: UncertainSignedGraph, bipartition: Sequence[int],
                          count: int, seed: int = 0
                          ) -> tuple[UncertainSignedGraph, CriticalGroundTruth]:
    """Add `count` new edges that each violate the bipartition.

    Each injected edge joins two vertices of the same connected component
    (so a violating cycle exists) and gets sign flipped relative to the
    balanced rule; its probability is drawn uniformly from [0.5, 1].
    """
    n = graph.vertex_count
    rnd = random.Random(seed)
    dsu = ParityDSU(n)
    seen = set()
    for e in graph.edges:
        dsu.union(e.u, e.v, 0)
        seen.add((e.u, e.v) if e.u < e.v else (e.v, e.u))
    new_edges = []
    attempts = 0
    limit = 2000 * max(count, 1) + 1000
    while len(new_edges) < count:
        attempts += 1
        if attempts > limit:
            raise GenerationError("injection capacity exhausted")
        u = rnd.randrange(n)
        v = rnd.randrange(n)
        key = (u, v) if u < v else (v, u)
        if u == v or key in seen or not dsu.same_set(u, v):
            continue
        seen.add(key)
        sign = NEGATIVE if bipartition[u] == bipartition[v] else POSITIVE
        new_edges.append(SignedEdge(u, v, sign, 0.5 + 0.5 * rnd.random()))
    injected = frozenset(range(graph.edge_count, graph.edge_count + count))
    return (graph.add_edges(new_edges),
            CriticalGroundTruth(tuple(bipartition), injected))


def scale_probabilities(graph: UncertainSignedGraph,
                        p_mul: float) -> UncertainSignedGraph:
    """p_e <- min(1, p_mul * p_e) for every edge."""
    if p_mul < 0:
        raise ValueError("p_mul must be non-negative")
    return graph.with_probs([min(1.0, p_mul * e.prob) for e in graph.edges])


def sweep(graph: UncertainSignedGraph, bipartition: Sequence[int],
          etas: Sequence[float], p_muls: Sequence[float],
          plan: SamplePlan) -> list[SweepRow]:
    """Estimate the balance rate over an (eta, p_mul) grid.

    eta is the fraction of injected critical edges: ceil(eta * |E|) new
    violations.  Injection sets are nested across eta values, so rows are
    monotone comparable; rows are emitted in the given (eta, p_mul) order.
    """
    for eta in etas:
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"eta {eta} outside [0, 1]")
    m = graph.edge_count
    max_count = max(math.ceil(eta * m) for eta in etas) if etas else 0
    if max_count:
        full, _ = inject_critical_edges(graph, bipartition, max_count,
                                        seed=plan.seed)
    else:
        full = graph
    rows = []
    for eta in etas:
        count = math.ceil(eta * m)
        g_eta = UncertainSignedGraph(
            graph.vertex_count, full.edges[: m + count])
        for p_mul in p_muls:
            report = estimate(scale_probabilities(g_eta, p_mul), plan)
            rows.append(SweepRow(eta=eta, p_mul=p_mul, estimate=report.point,
                                 lo=report.lo, hi=report.hi))
    return rows


def greedy_critical(graph: UncertainSignedGraph, candidates: Sequence[int],
                    k: int, plan: SamplePlan) -> list[int]:
    """Greedy erasure: k rounds, each removing the candidate whose removal
    maximizes the estimated balance rate.

    Every evaluation within a round shares the plan's seed schedule (common
    random numbers), so candidate comparisons are far less noisy.  Ties break
    toward the lowest edge index.  Returned indices refer to the input graph.
    """
    remaining = sorted(set(candidates))
    if k > len(remaining):
        raise ValueError("k exceeds the candidate set size")
    for c in remaining:
        if not 0 <= c < graph.edge_count:
            raise ValueError(f"candidate {c} is not an edge index")
    removed: list[int] = []
    for _ in range(k):
        best = None
        best_rate = -1.0
        for c in remaining:
            g = graph.without_edges(set(removed) | {c})
            rate = estimate(g, plan).point
            if rate > best_rate:
                best_rate = rate
                best = c
        removed.append(best)
        remaining.remove(best)
    return removed


def hidden_conflict_instance(n: int, m: int, n_critical: int = 5,
                             n_benign: int = 95, negative_ratio: float = 0.15,
                             seed: int = 0):
    """The hidden-conflict recovery setup.

    Builds a balanced base, injects n_critical violating edges, and masks
    them among n_benign randomly chosen base edges.  Every candidate edge
    gets an existence probability drawn uniformly from [0.5, 1]; all other
    edges are deterministic.  Returns (graph, sorted candidate edge indices,
    frozenset of injected indices).
    """
    base, side = gen_balanced(n, m, negative_ratio, seed=seed)
    g, truth = inject_critical_edges(base, side, n_critical, seed=seed + 1)
    rnd = random.Random(seed + 2)
    benign = rnd.sample(range(base.edge_count), n_benign)
    candidates = sorted(set(benign) | truth.injected)
    probs = [1.0] * g.edge_count
    for c in candidates:
        probs[c] = 0.5 + 0.5 * rnd.random()
    return g.with_probs(probs), candidates, truth.injected
