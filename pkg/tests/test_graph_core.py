from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dismantle.generators import complete, cubion, cycle, path, wheel
from dismantle.graph import (
    Graph,
    GraphError,
    VertexPartition,
    VertexSet,
    closed_neighbourhood,
    dominated_vertices,
    is_cone,
    open_neighbourhood,
    twin_quotient,
)
from dismantle.iso import MAX_VERTICES, are_isomorphic, canonical_form, canonical_key, is_isomorphism

from conftest import random_graph, to_nx


@st.composite
def graphs(draw, max_n: int = 9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, c in zip(pairs, chosen) if c])


def test_graph_invariants_rejected():
    with pytest.raises(GraphError):
        Graph(2, (0b01, 0b00))  # loop
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1)], ["a", "a"])


def test_open_neighbourhood_complete():
    assert sorted(open_neighbourhood(complete(4), 0)) == [1, 2, 3]
    assert sorted(closed_neighbourhood(complete(4), 0)) == [0, 1, 2, 3]


def test_open_neighbourhood_cubion_alpha_is_q1():
    q2 = cubion(2)
    nb = open_neighbourhood(q2, q2.index("alpha_1_0"))
    assert sorted(nb.labels()) == ["00", "01", "alpha_2_0", "alpha_2_1"]
    assert are_isomorphic(nb.graph(), cubion(1)) is not None
    assert are_isomorphic(nb.graph(), path(4)) is not None


def test_open_neighbourhood_cycle_and_range():
    nb = open_neighbourhood(cycle(5), 2)
    assert len(nb) == 2 and nb.graph().num_edges() == 0
    with pytest.raises(GraphError):
        open_neighbourhood(cycle(5), 5)


def test_is_cone():
    assert sorted(is_cone(Graph(1, (0,)))) == [0]
    w = wheel(12)
    assert is_cone(w).labels() == ["z"]
    assert len(is_cone(cycle(4))) == 0


def test_dominated_vertices():
    assert dominated_vertices(cubion(2)) == {}
    # u-x-v path plus y joined to all three: x is dominated by y
    y_graph = Graph.from_edges(4, [(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)])
    dom = dominated_vertices(y_graph)
    assert dom[1] == 3
    assert dominated_vertices(complete(5)) == {v: (0 if v else 1) for v in range(5)}


@given(graphs())
@settings(max_examples=150, deadline=None)
def test_domination_witness_contains_closed_neighbourhood(g):
    for x, a in dominated_vertices(g).items():
        assert set(closed_neighbourhood(g, x)) <= set(closed_neighbourhood(g, a))
        assert x != a


def test_twin_quotient_examples():
    q, part = twin_quotient(complete(5))
    assert q.n == 1 and len(part.blocks) == 1 and len(part.blocks[0]) == 5
    q, part = twin_quotient(cycle(4))
    assert q.n == 4 and all(len(b) == 1 for b in part.blocks)


def test_twin_quotient_properties_random():
    rng = random.Random(5)
    for _ in range(200):
        g = random_graph(rng.randint(1, 9), rng.choice([0.3, 0.6, 0.9]), rng)
        q, part = twin_quotient(g)
        qq, part2 = twin_quotient(q)
        assert qq.rows == q.rows and all(len(b) == 1 for b in part2.blocks)
        reps = sum(1 << min(b) for b in part.blocks)
        assert are_isomorphic(g.induced(reps), q) is not None
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert are_isomorphic(twin_quotient(h)[0], q) is not None


def test_partition_validation():
    g = cycle(4)
    with pytest.raises(GraphError):
        VertexPartition(g, (VertexSet(g, 0b0011),))
    with pytest.raises(GraphError):
        VertexPartition(g, (VertexSet(g, 0b0011), VertexSet(g, 0b0110), VertexSet(g, 0b1000)))
    with pytest.raises(GraphError):
        VertexSet(g, 0b10000)


def test_vertex_set_identity():
    g, h = cycle(4), cycle(4)
    assert VertexSet(g, 3) == VertexSet(g, 3)
    assert VertexSet(g, 3) != VertexSet(h, 3)
    assert len({VertexSet(g, 3), VertexSet(g, 3)}) == 1


def test_canonical_key_examples():
    c5 = cycle(5)
    relabeled = Graph.from_edges(5, [(1, 3), (3, 0), (0, 2), (2, 4), (4, 1)])
    assert canonical_key(c5) == canonical_key(relabeled)
    assert canonical_key(cycle(4)) != canonical_key(path(4))


def test_four_vertex_classes():
    pairs = list(itertools.combinations(range(4), 2))
    keys = set()
    for code in range(64):
        keys.add(canonical_key(Graph.from_edges(4, [e for i, e in enumerate(pairs) if code >> i & 1])))
    assert len(keys) == 11


def test_canonical_key_size_limit():
    big = Graph.from_edges(MAX_VERTICES + 1, [])
    with pytest.raises(GraphError):
        canonical_key(big)
    assert canonical_key(Graph.from_edges(16, [(i, i + 1) for i in range(15)]))


@given(graphs(8), st.randoms(use_true_random=False))
@settings(max_examples=120, deadline=None)
def test_isomorphism_matches_networkx(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    h = g.relabel(perm)
    f = are_isomorphic(g, h)
    assert f is not None and is_isomorphism(g, h, f)
    assert canonical_form(g).rows == canonical_form(h).rows
    other = random_graph(g.n, 0.5, random.Random(r.random()))
    assert (are_isomorphic(g, other) is not None) == nx.is_isomorphic(to_nx(g), to_nx(other))
