"""Uncertain signed graphs: data model, edge-list I/O, realizations, balance check.

An uncertain signed graph has a fixed vertex count and an ordered sequence of
edges, each carrying a sign (0 = positive, 1 = negative) and an independent
existence probability.  The edge order is significant: downstream sampling
classifies edges as tree/chord edges by processing them in this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .paritydsu import ParityDSU

POSITIVE = 0
NEGATIVE = 1

_SIGN_TOKENS = {"+": POSITIVE, "+1": POSITIVE, "-": NEGATIVE, "-1": NEGATIVE}
_SIGN_CHARS = {POSITIVE: "+", NEGATIVE: "-"}


class ParseError(ValueError):
    """Malformed edge-list input; message names the offending line."""


@dataclass(frozen=True)
class SignedEdge:
    u: int
    v: int
    sign: int  # 0 positive, 1 negative
    prob: float

    def __post_init__(self):
        if self.u < 0 or self.v < 0:
            raise ValueError("vertex ids must be non-negative")
        if self.sign not in (POSITIVE, NEGATIVE):
            raise ValueError("sign must be 0 (positive) or 1 (negative)")
        if not 0.0 <= self.prob <= 1.0:
            raise ValueError(f"probability {self.prob} out of range [0, 1]")


class UncertainSignedGraph:
    """Immutable vertex count + ordered edge sequence.

    Safe to share across threads; numpy views of the edge data are built
    lazily and cached for the sampling kernels.
    """

    __slots__ = ("vertex_count", "edges", "_arrays")

    def __init__(self, vertex_count: int, edges: Iterable[SignedEdge]):
        edges = tuple(edges)
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        for e in edges:
            if e.u >= vertex_count or e.v >= vertex_count:
                raise ValueError(
                    f"edge ({e.u}, {e.v}) references a vertex outside "
                    f"[0, {vertex_count})"
                )
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_arrays", None)

    def __setattr__(self, name, value):
        raise AttributeError("UncertainSignedGraph is immutable")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def arrays(self):
        """(us, vs, signs, probs) as numpy arrays aligned with edge order."""
        if self._arrays is None:
            us = np.array([e.u for e in self.edges], dtype=np.int64)
            vs = np.array([e.v for e in self.edges], dtype=np.int64)
            signs = np.array([e.sign for e in self.edges], dtype=np.uint8)
            probs = np.array([e.prob for e in self.edges], dtype=np.float64)
            object.__setattr__(self, "_arrays", (us, vs, signs, probs))
        return self._arrays

    def with_probs(self, probs: Sequence[float]) -> "UncertainSignedGraph":
        if len(probs) != self.edge_count:
            raise ValueError("probability vector length mismatch")
        return UncertainSignedGraph(
            self.vertex_count,
            (SignedEdge(e.u, e.v, e.sign, float(p)) for e, p in zip(self.edges, probs)),
        )

    def without_edges(self, drop: Iterable[int]) -> "UncertainSignedGraph":
        """Copy with the given edge indices removed; remaining order preserved."""
        drop = set(drop)
        return UncertainSignedGraph(
            self.vertex_count,
            (e for i, e in enumerate(self.edges) if i not in drop),
        )

    def add_edges(self, new_edges: Iterable[SignedEdge]) -> "UncertainSignedGraph":
        return UncertainSignedGraph(self.vertex_count, self.edges + tuple(new_edges))

    def __eq__(self, other):
        return (
            isinstance(other, UncertainSignedGraph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __repr__(self):
        return (
            f"UncertainSignedGraph(vertex_count={self.vertex_count}, "
            f"edges={self.edge_count})"
        )


def parse_edge_list(text: str) -> UncertainSignedGraph:
    """Parse the `u v sign prob` text format.

    Lines starting with `#` and blank lines are skipped.  An optional
    `vertices N` header fixes the vertex count; otherwise it is one more
    than the largest id seen.  Edge order equals line order.
    """
    edges = []
    header_count = None
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "vertices":
            if len(tokens) != 2:
                raise ParseError(f"malformed header, line {lineno}")
            try:
                header_count = int(tokens[1])
            except ValueError:
                raise ParseError(f"malformed vertex count, line {lineno}") from None
            if header_count < 0:
                raise ParseError(f"negative vertex count, line {lineno}")
            continue
        if len(tokens) != 4:
            raise ParseError(
                f"expected 'u v sign prob' (4 tokens), got {len(tokens)}, "
                f"line {lineno}"
            )
        try:
            u = int(tokens[0])
            v = int(tokens[1])
        except ValueError:
            raise ParseError(f"malformed vertex id, line {lineno}") from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id, line {lineno}")
        if tokens[2] not in _SIGN_TOKENS:
            raise ParseError(f"unknown sign token {tokens[2]!r}, line {lineno}")
        sign = _SIGN_TOKENS[tokens[2]]
        try:
            prob = float(tokens[3])
        except ValueError:
            raise ParseError(f"malformed probability, line {lineno}") from None
        if not 0.0 <= prob <= 1.0:
            raise ParseError(f"probability out of range, line {lineno}")
        edges.append(SignedEdge(u, v, sign, prob))
        max_id = max(max_id, u, v)
    vertex_count = header_count if header_count is not None else max_id + 1
    if header_count is not None and max_id >= header_count:
        raise ParseError(
            f"vertex id {max_id} outside declared range [0, {header_count})"
        )
    return UncertainSignedGraph(vertex_count, edges)


def serialize_edge_list(graph: UncertainSignedGraph) -> str:
    """Inverse of parse_edge_list; probabilities written at full precision."""
    lines = [f"vertices {graph.vertex_count}"]
    for e in graph.edges:
        lines.append(f"{e.u} {e.v} {_SIGN_CHARS[e.sign]} {e.prob!r}")
    return "\n".join(lines) + "\n"


def realize(graph: UncertainSignedGraph, rng: np.random.Generator) -> np.ndarray:
    """Draw a realization: boolean presence bit per edge, Bernoulli(prob)."""
    _, _, _, probs = graph.arrays()
    return rng.random(graph.edge_count) < probs


def check_balanced(graph: UncertainSignedGraph, present: Sequence[bool]) -> bool:
    """True iff no component of the realized graph contains a negative cycle.

    Forests are balanced.  A negative self-loop is a length-1 negative cycle;
    positive self-loops are ignored.
    """
    if len(present) != graph.edge_count:
        raise ValueError("realization length does not match edge count")
    dsu = ParityDSU(graph.vertex_count)
    for i, e in enumerate(graph.edges):
        if not present[i]:
            continue
        if not dsu.union(e.u, e.v, e.sign):
            _, pu = dsu.find(e.u)
            _, pv = dsu.find(e.v)
            if (pu ^ pv) != e.sign:
                return False
    return True
