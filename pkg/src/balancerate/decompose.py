"""Bridges, articulation points and 2-edge-connected blocks.

A single iterative DFS (Tarjan) finds all bridges and articulation points of
the underlying undirected multigraph and, via an edge stack, the biconnected
components.  Blocks that consist of a single bridge edge lie on no cycle and
are dropped: their balance factor is 1, so they never enter the product.
Self-loops are length-1 cycles and become single-edge blocks of their own.

Signs and probabilities play no role here; they are carried through to the
blocks unchanged.  Within a block, edge order preserves global edge order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import SignedEdge, UncertainSignedGraph


@dataclass(frozen=True)
class CutStructure:
    bridges: frozenset  # edge indices
    articulation_points: frozenset  # vertex ids
    disc: tuple  # DFS discovery index per vertex (-1 if isolated graph-free)
    low: tuple  # low-link value per vertex


@dataclass(frozen=True)
class Block:
    """A biconnected piece with locally re-indexed vertices.

    origin_map[local vertex id] -> global vertex id
    origin_edges[local edge index] -> global edge index
    """

    local_vertex_count: int
    edges: tuple  # SignedEdge with local endpoints
    origin_map: tuple
    origin_edges: tuple

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _dfs(graph: UncertainSignedGraph):
    """Shared DFS pass: returns (bridges, articulation points, disc, low,
    biconnected edge groups as lists of global edge indices)."""
    n = graph.vertex_count
    adj = [[] for _ in range(n)]
    self_loops = []
    for i, e in enumerate(graph.edges):
        if e.u == e.v:
            self_loops.append(i)
            continue
        adj[e.u].append((e.v, i))
        adj[e.v].append((e.u, i))

    disc = [-1] * n
    low = [0] * n
    bridges = set()
    articulation = set()
    groups = []
    edge_stack = []
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = timer
        low[root] = timer
        timer += 1
        root_children = 0
        # frame: (vertex, entering edge index, position in adjacency list)
        stack = [(root, -1, 0)]
        while stack:
            v, in_edge, ptr = stack[-1]
            if ptr < len(adj[v]):
                stack[-1] = (v, in_edge, ptr + 1)
                w, ei = adj[v][ptr]
                if ei == in_edge:
                    continue
                if disc[w] == -1:
                    edge_stack.append(ei)
                    disc[w] = timer
                    low[w] = timer
                    timer += 1
                    stack.append((w, ei, 0))
                elif disc[w] < disc[v]:
                    # back edge; pushed once, from the deeper endpoint
                    edge_stack.append(ei)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                stack.pop()
                if not stack:
                    continue
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if u == root:
                    root_children += 1
                if low[v] > disc[u]:
                    bridges.add(in_edge)
                if low[v] >= disc[u]:
                    if u != root:
                        articulation.add(u)
                    # pop the biconnected component rooted at edge in_edge
                    group = []
                    while True:
                        ei = edge_stack.pop()
                        group.append(ei)
                        if ei == in_edge:
                            break
                    groups.append(group)
        if root_children >= 2:
            articulation.add(root)

    for i in self_loops:
        groups.append([i])
    return bridges, articulation, disc, low, groups


def find_cut_structure(graph: UncertainSignedGraph) -> CutStructure:
    """All bridges and articulation points of the undirected multigraph."""
    bridges, articulation, disc, low, _ = _dfs(graph)
    return CutStructure(frozenset(bridges), frozenset(articulation),
                        tuple(disc), tuple(low))


def decompose_blocks(graph: UncertainSignedGraph) -> list[Block]:
    """Biconnected blocks containing at least one cycle.

    Bridge-only blocks are omitted (balance factor 1).  Each non-bridge edge
    appears in exactly one block; articulation vertices appear as copies in
    every block touching them.  Blocks are returned in a deterministic order
    keyed by their smallest global edge index.
    """
    bridges, _, _, _, groups = _dfs(graph)
    blocks = []
    for group in groups:
        if len(group) == 1 and group[0] in bridges:
            continue
        group.sort()
        local_of = {}
        origin_map = []
        local_edges = []
        for gi in group:
            e = graph.edges[gi]
            for g in (e.u, e.v):
                if g not in local_of:
                    local_of[g] = len(origin_map)
                    origin_map.append(g)
            local_edges.append(
                SignedEdge(local_of[e.u], local_of[e.v], e.sign, e.prob)
            )
        blocks.append(
            Block(
                local_vertex_count=len(origin_map),
                edges=tuple(local_edges),
                origin_map=tuple(origin_map),
                origin_edges=tuple(group),
            )
        )
    blocks.sort(key=lambda b: b.origin_edges[0])
    return blocks


def block_subgraph(block: Block) -> UncertainSignedGraph:
    """The block as a standalone graph over its local vertex ids."""
    return UncertainSignedGraph(block.local_vertex_count, block.edges)
