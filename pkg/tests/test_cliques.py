from __future__ import annotations

import random

import networkx as nx
import pytest

from dismantle.certificates import verify_move_sequence
from dismantle.cliques import (
    CliqueReport,
    clique_number,
    dismantle_to_star_clique,
    is_star_cluster,
    maximal_cliques,
    plant_star_cluster,
    star_cluster_clique,
)
from dismantle.engine import Status, is_k_dismantlable, min_dismantling_index
from dismantle.generators import complete, cubion, cycle, wheel
from dismantle.graph import Graph, GraphError, bits, mask_of
from dismantle.oracles import iso_classes

from conftest import random_graph, to_nx


def brute_maximal(g: Graph) -> set[int]:
    cliques = [m for m in range(1, 1 << g.n) if all((g.rows[v] | 1 << v) & m == m for v in bits(m))]
    cs = set(cliques)
    return {m for m in cliques if not any(m | 1 << v in cs for v in range(g.n) if not m >> v & 1)}


def test_maximal_cliques_examples():
    assert [sorted(k) for k in maximal_cliques(complete(4))] == [[0, 1, 2, 3]]
    assert len(maximal_cliques(cycle(5))) == 5
    q2 = cubion(2)
    assert {k.members for k in maximal_cliques(q2)} == brute_maximal(q2)


def test_maximal_cliques_against_brute_force():
    rng = random.Random(1)
    for _ in range(150):
        g = random_graph(rng.randint(1, 8), rng.choice([0.2, 0.5, 0.8]), rng)
        got = [k.members for k in maximal_cliques(g)]
        assert len(got) == len(set(got))
        assert set(got) == brute_maximal(g)
        assert clique_number(g) == max(bin(m).count("1") for m in got)
        assert clique_number(g) == max(len(c) for c in nx.find_cliques(to_nx(g)))


def test_clique_number_examples():
    for n in range(1, 5):
        assert clique_number(cubion(n)) >= 2**n
    tree = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert clique_number(tree) == 2


def test_min_index_bounded_by_clique_number():
    for n in range(1, 8):
        for g in iso_classes(n):
            res = min_dismantling_index(g)
            if res.status is Status.YES and res.index >= 0:
                assert clique_number(g) >= res.index + 2


def test_star_cluster_examples():
    w = wheel(6)
    assert star_cluster_clique(w).labels() == ["z"]
    assert star_cluster_clique(cycle(5)) is None
    diamond = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    assert sorted(star_cluster_clique(diamond)) == [1]


def test_dismantle_to_star_clique_examples():
    w = wheel(5)
    z = w.index("z")
    cert = dismantle_to_star_clique(w, [z, 0])
    assert verify_move_sequence(w, cert).valid and cert.final == (0, z)
    assert all(m.k == 0 for m in cert.moves)
    diamond = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    cert = dismantle_to_star_clique(diamond, [1, 2])
    assert sorted(m.v for m in cert.moves) == [0, 3] and all(m.k == 0 for m in cert.moves)
    assert verify_move_sequence(diamond, cert).valid


def test_dismantle_to_star_clique_single_apex():
    w = wheel(4)
    cert = dismantle_to_star_clique(w, [w.index("z")])
    assert cert.final == "point" and verify_move_sequence(w, cert).valid


def test_dismantle_to_star_clique_precondition():
    with pytest.raises(GraphError):
        dismantle_to_star_clique(cycle(5), [0, 1])
    with pytest.raises(GraphError):
        dismantle_to_star_clique(cycle(4), [0, 2])


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_planted_instances(a):
    rng = random.Random(a)
    for _ in range(50):
        g, am = plant_star_cluster(rng.randint(max(a + 2, 6), 12), a, rng.choice([0.2, 0.4]), rng)
        assert is_star_cluster(g, am)
        cert = dismantle_to_star_clique(g, list(bits(am)))
        assert verify_move_sequence(g, cert).valid
        assert is_k_dismantlable(g, max(a - 2, -1)).status is Status.YES
        found = star_cluster_clique(g)
        assert found is not None and len(found) <= a


def test_star_cluster_stable_under_outside_deletions():
    rng = random.Random(17)
    for _ in range(100):
        a = rng.randint(1, 4)
        g, am = plant_star_cluster(rng.randint(a + 2, 10), a, 0.3, rng)
        x = rng.choice([v for v in range(g.n) if not am >> v & 1])
        keep = g.full_mask & ~(1 << x)
        h = g.induced(keep)
        pos = {v: i for i, v in enumerate(bits(keep))}
        assert is_star_cluster(h, mask_of(pos[v] for v in bits(am)))


def test_star_cluster_bound_on_small_classes():
    for n in range(1, 7):
        for g in iso_classes(n):
            a_set = star_cluster_clique(g)
            if a_set is None:
                continue
            a = len(a_set)
            assert is_k_dismantlable(g, max(a - 2, -1)).status is Status.YES
            if a >= 2:
                assert verify_move_sequence(g, dismantle_to_star_clique(g, a_set)).valid


def test_clique_report_json():
    rep = CliqueReport.of(Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]))
    assert rep.to_json() == {"maximal_cliques": [[0, 1, 2], [1, 2, 3]], "omega": 3, "star_cluster": [1]}
