from __future__ import annotations

import itertools

import networkx as nx
import pytest

from dismantle.engine import Status, is_k_dismantlable
from dismantle.generators import circulant, complete, cycle, kneser, path
from dismantle.graph import components, dominated_vertices, twin_quotient
from dismantle.transitivity import (
    automorphisms,
    curated_corpus,
    hypercube_skeleton,
    is_i_complete_transitive,
    is_vertex_transitive,
    ordered_cliques,
    rigidity_violations,
)

from conftest import to_nx


def brute_aut_count(g) -> int:
    return sum(1 for p in itertools.permutations(range(g.n)) if all(g.adj(p[u], p[v]) for u, v in g.edges()))


def test_automorphism_orders():
    assert automorphisms(cycle(5)).order == 10
    assert automorphisms(complete(4)).order == 24
    pet = kneser(5, 2)
    nxc = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(to_nx(pet), to_nx(pet)).isomorphisms_iter())
    assert automorphisms(pet).order == nxc == 120


@pytest.mark.parametrize("g", [cycle(6), path(5), circulant(7, [1, 3]), hypercube_skeleton(2)])
def test_automorphism_elements_brute_force(g):
    aut = automorphisms(g)
    els = aut.elements()
    assert len(els) == aut.order == brute_aut_count(g)
    assert all(p in aut for p in els)
    assert [1, 0, 2, 3, 4, 5] not in automorphisms(path(6))


def test_vertex_transitivity_examples():
    assert is_vertex_transitive(cycle(9))
    assert not is_vertex_transitive(path(4))
    assert is_vertex_transitive(kneser(5, 2))


def test_complete_transitivity_examples():
    for n in range(1, 6):
        assert is_i_complete_transitive(complete(n), n)
    assert is_i_complete_transitive(kneser(5, 2), 2)
    assert is_i_complete_transitive(cycle(6), 2)
    # the octahedron is arc-transitive, the 7-vertex square of a cycle is not
    assert is_i_complete_transitive(circulant(6, [1, 2]), 2)
    c712 = circulant(7, [1, 2])
    assert is_i_complete_transitive(c712, 1)
    assert not is_i_complete_transitive(c712, 2)
    with pytest.raises(ValueError):
        is_i_complete_transitive(cycle(5), 0)


def test_ordered_cliques_counts():
    assert len(list(ordered_cliques(complete(4), 3))) == 24
    assert len(list(ordered_cliques(cycle(5), 2))) == 10


def test_corpus_is_vertex_transitive_and_consistent():
    corpus = curated_corpus(10)
    assert len(corpus) > 40
    for _, g in corpus:
        aut = automorphisms(g)
        vt = is_vertex_transitive(g, aut)
        assert vt
        assert is_i_complete_transitive(g, 1, aut) == vt
        assert nx.is_isomorphic(to_nx(g), to_nx(g))


def test_twins_are_dominated_vertices_when_transitive():
    for _, g in curated_corpus(12):
        twins = {x for x in range(g.n) for y in range(g.n) if x != y and (g.rows[x] | 1 << x) == (g.rows[y] | 1 << y)}
        assert set(dominated_vertices(g)) == twins


def test_quotient_stays_transitive():
    for _, g in curated_corpus(12):
        q, _ = twin_quotient(g)
        assert is_vertex_transitive(q)


def test_clique_neighbourhood_is_a_component():
    for _, g in curated_corpus(12):
        closed = g.rows[0] | 1
        if all((g.rows[v] | 1 << v) & closed == closed for v in range(g.n) if closed >> v & 1):
            assert closed in components(g.rows, g.full_mask)


def test_rigidity_harness():
    corpus = curated_corpus(12)
    checked0, bad0 = rigidity_violations(corpus, 0)
    checked1, bad1 = rigidity_violations(corpus, 1)
    assert checked0 == len(corpus) and bad0 == []
    assert 0 < checked1 < checked0 and bad1 == []
    # the hypothesis is not vacuous: complete graphs are in D_0
    assert is_k_dismantlable(complete(6), 0).status is Status.YES
