"""Balance-rate estimation: cycle-chord sampling, MC baseline, framework.

The per-sample estimator processes a block's edges in a fixed order with a
fresh parity DSU.  Edges joining two different sets ("tree edges") are drawn
Bernoulli(p); edges closing a cycle ("chords") are integrated analytically,
multiplying the estimate by (1 - p) when the cycle they close is negative.
The global estimate is the product of per-block sample means, with a
Delta-method confidence interval.

Randomness contract: block j of a run consumes a dedicated counter-based
stream keyed by (master seed, j), so results are bit-identical for a fixed
seed regardless of thread budget or chunking.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

import numba
import numpy as np

from . import _kernels
from .decompose import Block, decompose_blocks
from .graph import UncertainSignedGraph, check_balanced, realize
from .stats import BlockStats, delta_interval, mean_and_unbiased_variance

NAIVE_MC = "naive_mc"
RAO_BLACKWELL = "rao_blackwell"

_CHUNK_ELEMS = 4_000_000
_U64 = 0xFFFFFFFFFFFFFFFF
_MC_STREAM_INDEX = _U64  # whole-graph MC stream; never collides with a block


class InvalidPlanError(ValueError):
    pass


@dataclass(frozen=True)
class SamplePlan:
    method: str = RAO_BLACKWELL
    samples: int = 1000
    confidence: float = 0.95
    seed: int = 0
    threads: int = 1
    edge_order: str = "input"  # or "shuffled_per_sample"

    def __post_init__(self):
        if self.method not in (NAIVE_MC, RAO_BLACKWELL):
            raise InvalidPlanError(f"unknown method {self.method!r}")
        if self.samples < 1:
            raise InvalidPlanError("samples must be >= 1")
        if not 0.0 < self.confidence < 1.0:
            raise InvalidPlanError("confidence must be in (0, 1)")
        if self.threads < 1:
            raise InvalidPlanError("threads must be >= 1")
        if self.edge_order not in ("input", "shuffled_per_sample"):
            raise InvalidPlanError(f"unknown edge_order {self.edge_order!r}")


@dataclass(frozen=True)
class EstimateReport:
    point: float
    se: Optional[float]
    lo: Optional[float]
    hi: Optional[float]
    confidence: float
    method: str
    samples: int
    block_stats: tuple = field(default_factory=tuple)  # BlockStats per block
    seed: int = 0
    millis: float = 0.0

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "point": self.point,
            "se": self.se,
            "lo": self.lo,
            "hi": self.hi,
            "confidence": self.confidence,
            "method": self.method,
            "samples": self.samples,
            "blocks": [
                {"mean": s.mean, "var": s.var, "n": s.count} for s in self.block_stats
            ],
            "seed": self.seed,
        }
        if include_timing:
            d["millis"] = self.millis
        return d

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing))


@dataclass(frozen=True)
class PrefixRow:
    n: int
    estimate: float
    lo: Optional[float]
    hi: Optional[float]
    se: Optional[float]


def _stream(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed & _U64, index & _U64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _apply_threads(threads: int):
    numba.set_num_threads(min(max(threads, 1), numba.config.NUMBA_NUM_THREADS))


def cci_sample(block: Block, rng: np.random.Generator) -> float:
    """One Rao-Blackwellized sample for a block, edges in input order."""
    sub = UncertainSignedGraph(block.local_vertex_count, block.edges)
    us, vs, signs, probs = sub.arrays()
    out = np.empty(1)
    uniforms = rng.random((1, block.edge_count))
    _kernels.cci_batch(block.local_vertex_count, us, vs, signs, probs,
                       uniforms, out, 0)
    return float(out[0])


def mc_sample(graph: UncertainSignedGraph, rng: np.random.Generator) -> int:
    """One naive Monte Carlo sample: realize the graph, report balance 0/1."""
    return int(check_balanced(graph, realize(graph, rng)))


def _sample_block(block: Block, index: int, plan: SamplePlan) -> np.ndarray:
    sub = UncertainSignedGraph(block.local_vertex_count, block.edges)
    us, vs, signs, probs = sub.arrays()
    nv = block.local_vertex_count
    m = block.edge_count
    n = plan.samples
    kernel = _kernels.cci_batch if plan.method == RAO_BLACKWELL else _kernels.mc_batch
    rng = _stream(plan.seed, index)
    out = np.empty(n)
    if plan.edge_order == "shuffled_per_sample":
        for k in range(n):
            perm = rng.permutation(m)
            uniforms = rng.random((1, m))
            kernel(nv, us[perm], vs[perm], signs[perm], probs[perm],
                   uniforms, out, k)
        return out
    chunk = max(1, min(n, _CHUNK_ELEMS // max(m, 1)))
    done = 0
    while done < n:
        rows = min(chunk, n - done)
        uniforms = rng.random((rows, m))
        kernel(nv, us, vs, signs, probs, uniforms, out, done)
        done += rows
    return out


def _collect_samples(graph: UncertainSignedGraph, plan: SamplePlan):
    """Decompose and sample every block; returns (blocks, matrices, millis).

    millis covers the sampling phase only.
    """
    blocks = decompose_blocks(graph)
    _apply_threads(plan.threads)
    t0 = time.perf_counter()
    matrices = [_sample_block(b, i, plan) for i, b in enumerate(blocks)]
    millis = (time.perf_counter() - t0) * 1000.0
    return blocks, matrices, millis


def _report(plan: SamplePlan, matrices, millis: float) -> EstimateReport:
    stats = tuple(mean_and_unbiased_variance(x) for x in matrices)
    if not stats:
        return EstimateReport(point=1.0, se=0.0, lo=1.0, hi=1.0,
                              confidence=plan.confidence, method=plan.method,
                              samples=plan.samples, block_stats=(),
                              seed=plan.seed, millis=millis)
    point = float(np.prod([s.mean for s in stats]))
    if plan.samples < 2:
        return EstimateReport(point=point, se=None, lo=None, hi=None,
                              confidence=plan.confidence, method=plan.method,
                              samples=plan.samples, block_stats=stats,
                              seed=plan.seed, millis=millis)
    ci = delta_interval(stats, 1.0 - plan.confidence)
    return EstimateReport(point=ci.point, se=ci.se, lo=ci.lo, hi=ci.hi,
                          confidence=plan.confidence, method=plan.method,
                          samples=plan.samples, block_stats=stats,
                          seed=plan.seed, millis=millis)


def estimate(graph: UncertainSignedGraph, plan: SamplePlan) -> EstimateReport:
    """Blockwise balance-rate estimate with Delta-method interval."""
    _, matrices, millis = _collect_samples(graph, plan)
    return _report(plan, matrices, millis)


def prefix_estimates(graph: UncertainSignedGraph, plan: SamplePlan) -> list[PrefixRow]:
    """Running estimate after each sample index n = 1..N.

    Rows with n < 2 have undefined variance and carry no interval.  The final
    row matches the EstimateReport of estimate() under the same plan.
    """
    _, matrices, _ = _collect_samples(graph, plan)
    rows = []
    if not matrices:
        for n in range(1, plan.samples + 1):
            if n < 2:
                rows.append(PrefixRow(n, 1.0, None, None, None))
            else:
                rows.append(PrefixRow(n, 1.0, 1.0, 1.0, 0.0))
        return rows
    delta = 1.0 - plan.confidence
    for n in range(1, plan.samples + 1):
        stats = [mean_and_unbiased_variance(x[:n]) for x in matrices]
        point = float(np.prod([s.mean for s in stats]))
        if n < 2:
            rows.append(PrefixRow(n, point, None, None, None))
        else:
            ci = delta_interval(stats, delta)
            rows.append(PrefixRow(n, ci.point, ci.lo, ci.hi, ci.se))
    return rows


def joint_samples(graph: UncertainSignedGraph, plan: SamplePlan) -> np.ndarray:
    """Per-sample products across blocks (joint estimator, variance studies).

    Uses the same per-block streams as estimate(), so its mean equals the
    mean of the joint per-sample estimator under the same seed.
    """
    _, matrices, _ = _collect_samples(graph, plan)
    if not matrices:
        return np.ones(plan.samples)
    products = np.ones(plan.samples)
    for x in matrices:
        products *= x
    return products


@dataclass(frozen=True)
class CompareRecord:
    dataset: str
    vertices: int
    edges: int
    blocks: int
    mc_ms: float
    mc_var: float
    rb_ms: float
    rb_var: float
    rate: float

    CSV_HEADER = "dataset,V,E,blocks,mc_ms,mc_var,rb_ms,rb_var,rate"

    def csv_row(self) -> str:
        return (f"{self.dataset},{self.vertices},{self.edges},{self.blocks},"
                f"{self.mc_ms:.3f},{self.mc_var:.6g},{self.rb_ms:.3f},"
                f"{self.rb_var:.6g},{self.rate:.6g}")

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset, "V": self.vertices, "E": self.edges,
            "blocks": self.blocks, "mc_ms": self.mc_ms, "mc_var": self.mc_var,
            "rb_ms": self.rb_ms, "rb_var": self.rb_var, "rate": self.rate,
        }


def run_compare(graph: UncertainSignedGraph, samples: int, seed: int = 0,
                threads: int = 1, dataset: str = "") -> CompareRecord:
    """Head-to-head naive MC vs Rao-Blackwellized sampling.

    MC samples the whole graph and reports the variance of the balance
    indicator; RB reports the variance of the per-sample product of block
    estimates and the blockwise product point estimate.  Timings cover the
    sampling phases only.
    """
    plan = SamplePlan(method=RAO_BLACKWELL, samples=samples, seed=seed,
                      threads=threads)
    blocks, matrices, rb_ms = _collect_samples(graph, plan)
    report = _report(plan, matrices, rb_ms)
    if matrices:
        products = np.ones(samples)
        for x in matrices:
            products *= x
        rb_var = float(np.var(products, ddof=1)) if samples >= 2 else 0.0
    else:
        rb_var = 0.0

    us, vs, signs, probs = graph.arrays()
    m = graph.edge_count
    rng = _stream(seed, _MC_STREAM_INDEX)
    _apply_threads(threads)
    bits = np.empty(samples)
    t0 = time.perf_counter()
    chunk = max(1, min(samples, _CHUNK_ELEMS // max(m, 1)))
    done = 0
    while done < samples:
        rows = min(chunk, samples - done)
        uniforms = rng.random((rows, m))
        _kernels.mc_batch(graph.vertex_count, us, vs, signs, probs,
                          uniforms, bits, done)
        done += rows
    mc_ms = (time.perf_counter() - t0) * 1000.0
    mc_var = float(np.var(bits, ddof=1)) if samples >= 2 else 0.0

    return CompareRecord(dataset=dataset, vertices=graph.vertex_count,
                         edges=m, blocks=len(blocks), mc_ms=mc_ms,
                         mc_var=mc_var, rb_ms=rb_ms, rb_var=rb_var,
                         rate=report.point)
