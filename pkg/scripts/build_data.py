"""Regenerate the bundled graphs and certificates in src/dismantle/data.

The Dunce Hat and Bing's House graphs are 1-skeletons of flag
triangulations, written down here as explicit triangle lists.  Every
structural claim the package relies on is asserted before anything is
written.  Run from the repository root:

    python3 scripts/build_data.py
"""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

from dismantle.certificates import Certificate, Move, graph_hash, verify_move_sequence
from dismantle.cliques import clique_number
from dismantle.engine import Engine
from dismantle.generators import parasol_constructed, write_graph
from dismantle.graph import Graph, bits

DATA = Path(__file__).resolve().parent.parent / "src" / "dismantle" / "data"


def triangles_of(g: Graph) -> set[frozenset[int]]:
    out = set()
    for u, v in g.edges():
        for w in bits(g.rows[u] & g.rows[v]):
            out.add(frozenset((u, v, w)))
    return out


def graph_from_triangles(names: list[str], tris: list[tuple[str, ...]], extra=()) -> Graph:
    edges = set()
    for t in tris:
        for a, b in combinations(t, 2):
            edges.add(tuple(sorted((a, b), key=names.index)))
    for a, b in extra:
        edges.add(tuple(sorted((a, b), key=names.index)))
    return Graph.from_labeled_edges(names, sorted(edges, key=lambda e: (names.index(e[0]), names.index(e[1]))))


def check_flag(g: Graph, tris: list[tuple[str, ...]]) -> None:
    want = {frozenset(g.index(x) for x in t) for t in tris}
    assert len(want) == len(tris), "duplicate triangle"
    assert triangles_of(g) == want, "graph has triangles outside the triangulation"
    assert clique_number(g) == 3


def link_min_degree(g: Graph) -> int:
    """Smallest vertex degree inside any vertex neighbourhood."""
    return min(bin(g.rows[u] & g.rows[v]).count("1") for v in range(g.n) for u in bits(g.rows[v]))


# -- Dunce Hat --------------------------------------------------------------------

RING = list("abcdefghijkl")
DH_NAMES = ["1", "2", "3", "4"] + RING + ["z"]
DH_TRIS = [
    ("1", "l", "a"), ("1", "a", "b"), ("1", "3", "l"), ("1", "b", "2"),
    ("2", "b", "4"), ("4", "b", "c"), ("4", "c", "d"), ("4", "d", "3"),
    ("3", "d", "1"), ("1", "d", "e"), ("1", "e", "f"), ("1", "f", "3"),
    ("3", "f", "4"), ("4", "f", "g"), ("4", "g", "h"), ("4", "h", "2"),
    ("2", "h", "1"), ("1", "h", "i"), ("1", "i", "j"), ("1", "j", "2"),
    ("2", "j", "4"), ("4", "j", "k"), ("4", "k", "l"), ("4", "l", "3"),
] + [("z", RING[i], RING[(i + 1) % 12]) for i in range(12)]


def dunce_hat() -> Graph:
    g = graph_from_triangles(DH_NAMES, DH_TRIS)
    check_flag(g, DH_TRIS)
    assert (g.n, g.num_edges(), len(DH_TRIS)) == (17, 52, 36)
    assert g.n - g.num_edges() + len(DH_TRIS) == 1
    return g


class Builder:
    """Tracks vertex ids while a certificate adds and deletes vertices."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.ids = {g.label(v): v for v in range(g.n)}
        self.next = g.n
        self.moves: list[Move] = []
        self.labels: dict[int, str] = {}

    def add(self, name: str, nbrs: list[str], k: int = 0) -> None:
        self.ids[name] = self.next
        self.labels[self.next] = name
        self.moves.append(Move.add(self.next, k, [self.ids[x] for x in nbrs]))
        self.next += 1

    def delete(self, name: str, k: int) -> None:
        self.moves.append(Move.delete(self.ids[name], k))

    def cert(self) -> Certificate:
        return Certificate(graph_hash(self.g), self.moves, "point", self.labels)


def dh_certificate(g: Graph) -> Certificate:
    b = Builder(g)
    b.add("1'", ["1", "2", "j", "i", "h"])
    b.add("1''", ["1", "3", "d", "e", "f"])
    b.delete("1", 1)
    b.add("2'", ["2", "1'", "h", "4", "j"])
    b.delete("2", 1)
    b.add("3'", ["3", "1''", "d", "4", "f"])
    b.delete("3", 1)
    for x in ["4", "2'", "3'", "1'", "1''"]:
        b.delete(x, 1)
    for x in RING:
        b.delete(x, 0)
    return b.cert()


def dh_remark_graph(g: Graph) -> Graph:
    names = [g.label(v) for v in range(g.n)] + ["1'", "1''"]
    edges = [(g.label(u), g.label(v)) for u, v in g.edges()]
    edges += [("1'", x) for x in ["1", "2", "j", "i", "h"]]
    edges += [("1''", x) for x in ["1", "3", "d", "e", "f"]]
    return Graph.from_labeled_edges(names, edges)


DH_REMARK = ["1"] + RING[:11] + ["z", "l", "1'", "2", "4", "3", "1''"]


def sequence_certificate(g: Graph, names: list[str]) -> Certificate:
    """Deletion certificate for ``names``; each move gets the least level it needs.

    ``names`` lists every vertex; the last one is the surviving point.
    """
    mask = g.full_mask
    eng = Engine(g)
    moves = []
    for x in names[:-1]:
        v = g.index(x)
        idx = eng.min_index(g.rows[v] & mask)
        assert idx is not None, f"N({x}) is outside D_inf"
        moves.append(Move.delete(v, idx + 1))
        mask &= ~(1 << v)
    assert mask == 1 << g.index(names[-1])
    return Certificate(graph_hash(g), moves, "point")


# -- Bing's House -----------------------------------------------------------------

BH_NAMES = [f"{c}{i}" for c in "uvw" for i in range(1, 8)]
G5_PRIMED = ["u1'", "u1''", "v1'", "v1''", "w6'", "w6''", "v6'", "v6''"]
G5_TRIS = [
    ("u7", "u1'", "u2"), ("u1'", "v1'", "u2"), ("v1'", "v2", "u2"),
    ("v2", "v6''", "w2"), ("v6''", "w6''", "w2"), ("w6''", "w7", "w2"),
    ("w5", "w6'", "w4"), ("w6'", "v6'", "w4"), ("v6'", "v4", "w4"),
    ("v4", "v1''", "u4"), ("v1''", "u1''", "u4"), ("u1''", "u5", "u4"),
    ("u5", "u6", "u3"), ("u6", "u7", "u3"), ("w7", "w1", "w3"), ("w1", "w5", "w3"),
    ("u7", "u3", "u2"), ("v2", "u2", "w2"), ("w7", "w2", "w3"), ("w5", "w3", "w4"),
    ("v4", "w4", "u4"), ("u5", "u4", "u3"),
    ("v3", "u2", "w2"), ("v3", "w2", "w3"), ("v3", "w3", "w4"),
    ("v3", "w4", "u4"), ("v3", "u4", "u3"), ("v3", "u3", "u2"),
]
BH_LINKS = {
    "v5": ["w1", "w5", "w6", "v6", "v4", "v1", "u1", "u5", "u6"],
    "v7": ["u6", "u7", "u1", "v1", "v2", "v6", "w6", "w7", "w1"],
    "u1": ["v1", "u2", "u7", "v7", "u4", "u5", "v5"],
    "v1": ["u1", "u2", "v7", "v2", "u4", "v5", "v4", "u6"],
    "w6": ["v6", "v5", "w5", "w4", "w2", "w7", "v7"],
    "v6": ["w6", "v5", "v4", "w4", "w2", "v2", "v7", "w1"],
}
BH_ADDITIONS = [
    ("u1'", ["u1", "v1", "u2", "u7", "v7"]),
    ("u1''", ["u1", "v1", "u4", "u5", "v5"]),
    ("v1'", ["v1", "u1'", "u2", "v2", "v7"]),
    ("v1''", ["v1", "u1''", "u4", "v4", "v5"]),
    ("w6'", ["w6", "v6", "v5", "w5", "w4"]),
    ("w6''", ["w6", "v6", "w2", "w7", "v7"]),
    ("v6'", ["v6", "w6'", "v5", "v4", "w4"]),
    ("v6''", ["v6", "w6''", "w2", "v2", "v7"]),
]


def g5() -> Graph:
    names = [x for x in BH_NAMES if x not in BH_LINKS] + G5_PRIMED
    g = graph_from_triangles(names, G5_TRIS)
    check_flag(g, G5_TRIS)
    assert g.n == 23 and g.n - g.num_edges() + len(G5_TRIS) == 1
    return g


def bings_house() -> Graph:
    disk = g5()
    edges = [(disk.label(u), disk.label(v)) for u, v in disk.edges() if "'" not in disk.label(u) + disk.label(v)]
    for x, nb in BH_LINKS.items():
        edges += [(x, y) for y in nb]
    g = Graph.from_labeled_edges(BH_NAMES, sorted({tuple(sorted(e)) for e in edges}))
    assert clique_number(g) == 3
    return g


def bh_certificate(g: Graph, disk: Graph) -> Certificate:
    b = Builder(g)
    adds = dict(BH_ADDITIONS)
    for hub, (p, q) in [("u1", ("u1'", "u1''")), ("v1", ("v1'", "v1''")), ("w6", ("w6'", "w6''")), ("v6", ("v6'", "v6''"))]:
        b.add(p, adds[p])
        b.add(q, adds[q])
        b.delete(hub, 1)
    b.delete("v5", 1)
    b.delete("v7", 1)
    eng = Engine(disk)
    assert eng.in_dk(disk.full_mask, 0)
    seq = eng.sequence(disk.full_mask, 0)
    assert len(seq) == 22
    for v in seq:
        b.delete(disk.label(v), 0)
    return b.cert()


def write(name: str, text: str) -> None:
    (DATA / name).write_text(text)
    print("wrote", name)


def main() -> None:
    DATA.mkdir(exist_ok=True)

    par = parasol_constructed()
    write("parasol.txt", write_graph(par, header="parasol: 15 vertices, D_k-stiff for every k, outside D_inf"))

    dh = dunce_hat()
    assert link_min_degree(dh) >= 2
    cert = dh_certificate(dh)
    rep = verify_move_sequence(dh, cert)
    assert rep.valid, rep
    write("dunce_hat.txt", write_graph(dh, header="1-skeleton of a 17-vertex flag triangulation of the Dunce Hat"))
    write("dunce_hat_cert.json", cert.dumps() + "\n")

    dh2 = dh_remark_graph(dh)
    cert2 = sequence_certificate(dh2, DH_REMARK)
    assert verify_move_sequence(dh2, cert2).valid
    levels = [m.k for m in cert2.moves]
    print("DH+1'+1'' levels:", levels)
    write("dunce_hat_plus.txt", write_graph(dh2, header="Dunce Hat graph plus the two 0-added vertices 1' and 1''"))
    write("dunce_hat_plus_cert.json", cert2.dumps() + "\n")

    disk = g5()
    bh = bings_house()
    assert link_min_degree(bh) >= 2
    cert3 = bh_certificate(bh, disk)
    rep = verify_move_sequence(bh, cert3)
    assert rep.valid, rep
    write("bings_house.txt", write_graph(bh, header="1-skeleton of a 21-vertex flag triangulation of Bing's House"))
    write("bings_house_cert.json", cert3.dumps() + "\n")

    print(json.dumps({"dh": [dh.n, dh.num_edges()], "bh": [bh.n, bh.num_edges()]}))


if __name__ == "__main__":
    main()
