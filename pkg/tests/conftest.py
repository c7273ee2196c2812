import itertools
import random

import pytest

from balancerate import SignedEdge, UncertainSignedGraph


def random_usg(rnd: random.Random, n_max=8, m_max=12, p_lo=0.1, p_hi=0.9,
               allow_self_loops=False) -> UncertainSignedGraph:
    n = rnd.randint(2, n_max)
    m = rnd.randint(1, m_max)
    edges = []
    for _ in range(m):
        u = rnd.randrange(n)
        if allow_self_loops and rnd.random() < 0.1:
            v = u
        else:
            v = rnd.randrange(n)
            while v == u:
                v = rnd.randrange(n)
        sign = rnd.randint(0, 1)
        prob = p_lo + (p_hi - p_lo) * rnd.random()
        edges.append(SignedEdge(u, v, sign, prob))
    return UncertainSignedGraph(n, edges)


def glue_at_vertex(g1: UncertainSignedGraph,
                   g2: UncertainSignedGraph) -> UncertainSignedGraph:
    """Join two graphs by identifying vertex 0 of g2 with vertex 0 of g1;
    guarantees an articulation point when both sides contain cycles."""
    offset = g1.vertex_count - 1

    def remap(v):
        return 0 if v == 0 else v + offset

    edges = list(g1.edges) + [
        SignedEdge(remap(e.u), remap(e.v), e.sign, e.prob) for e in g2.edges
    ]
    return UncertainSignedGraph(g1.vertex_count + g2.vertex_count - 1, edges)


def balanced_by_bipartition(graph: UncertainSignedGraph,
                            present) -> bool:
    """Exhaustive oracle: exists a global vertex 2-coloring satisfying every
    present edge (side_u XOR side_v == sign).  Valid componentwise because a
    global assignment combines independent per-component choices."""
    n = graph.vertex_count
    active = [e for i, e in enumerate(graph.edges) if present[i]]
    for bits in itertools.product((0, 1), repeat=n):
        if all((bits[e.u] ^ bits[e.v]) == e.sign for e in active):
            return True
    return False


@pytest.fixture
def triangle_ppn():
    """The (+, +, -) triangle with p = 0.5 on every edge."""
    return UncertainSignedGraph(3, [
        SignedEdge(0, 1, 0, 0.5),
        SignedEdge(1, 2, 0, 0.5),
        SignedEdge(2, 0, 1, 0.5),
    ])
