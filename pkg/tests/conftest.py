from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx
import pytest

from dismantle.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(pos[u], pos[v]) for u, v in h.edges()])


def reference_dk(g: Graph, k: int) -> bool:
    """Membership in D_k straight from the definition, on frozensets of vertices."""
    adj = {v: frozenset(u for u in range(g.n) if g.adj(u, v)) for v in range(g.n)}

    @lru_cache(maxsize=None)
    def member(s: frozenset, level: int) -> bool:
        if len(s) == 1:
            return True
        if level == -1:
            return any(s - {v} <= adj[v] for v in s)
        for x in sorted(s):
            nb = adj[x] & s
            if nb and member(nb, level - 1) and member(s - {x}, level):
                return True
        return False

    return member(frozenset(range(g.n)), k)


def reference_non_evasive(g: Graph) -> bool:
    return any(reference_dk(g, k) for k in range(-1, max(g.n - 1, 0)))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)
