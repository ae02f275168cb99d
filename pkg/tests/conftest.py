import random

import pytest
from hypothesis import strategies as st

from sscvc import Graph, bfs_distances, compose_layers, generate_random_connected, run
from sscvc.state import NodeState


def converge(g, c0, daemon="synchronous", use_bfs=False, variant="repaired", **kw):
    """Run the composition to completion; fail loudly on divergence."""
    dist = None if use_bfs else bfs_distances(g)
    res = run(g, c0, daemon, program=compose_layers(use_bfs, variant), distances=dist, **kw)
    assert res.terminal, "run hit the step cap"
    return res


def random_graphs(count, n_lo=2, n_hi=10, seed=0):
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(n_lo, n_hi)
        p = rng.choice([0.2, 0.3, 0.5, 0.7])
        yield generate_random_connected(n, p, seed * 100_003 + i)


@st.composite
def graphs(draw, max_n=8):
    """Connected graphs: a random spanning tree plus random chords, random root."""
    n = draw(st.integers(1, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and draw(st.booleans()):
                edges.add((u, v))
    root = draw(st.integers(0, n - 1))
    return Graph.from_edges(sorted(edges), nodes=range(n), root=root)


def settled(**kw):
    return NodeState(**kw)


@pytest.fixture
def rng():
    return random.Random(1234)


def make_view(states, node, neighbors, dist=None, is_root=False, bound=100):
    """A hand-built local view; ``states`` maps node ids to NodeState."""
    from sscvc.program import View

    own = states[node]
    return View(node=node, neighbors=sorted(neighbors), config=states,
                dist=own.d if dist is None else dist, is_root=is_root, bound=bound)
