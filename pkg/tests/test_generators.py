from __future__ import annotations

import pytest

from dismantle.generators import (
    FamilySpec,
    FormatError,
    cubion,
    cubion_iterative,
    data_dir,
    generate,
    kneser,
    octahedron,
    parasol_constructed,
    parasol_plus,
    parse_graph,
    read_graph,
    write_graph,
)
from dismantle.graph import GraphError, bits, open_neighbourhood
from dismantle.iso import are_isomorphic
from dismantle.generators import cycle, path


def test_family_sizes():
    assert generate("complete:5").num_edges() == 10
    assert generate("cycle:7").num_edges() == 7
    assert generate("path:4").num_edges() == 3
    assert generate("wheel:12").n == 13
    assert generate(FamilySpec("kneser", (5, 2))).num_edges() == 15
    assert generate("circulant:6,1,2").num_edges() == 12
    assert octahedron(3).num_edges() == 12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cubion_shape(n):
    q = cubion(n)
    assert q.n == 2**n + 2 * n
    assert are_isomorphic(q, cubion_iterative(n)) is not None
    # the binary tuples form a clique
    tuples = [v for v in range(q.n) if not q.label(v).startswith("alpha")]
    assert all(q.adj(a, b) for a in tuples for b in tuples if a < b)


def test_cubion_two_edge_count():
    assert cubion(2).num_edges() == 18


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cubion_alpha_neighbourhood_is_smaller_cubion(n):
    q = cubion(n)
    nb = open_neighbourhood(q, q.index("alpha_1_0")).graph()
    assert are_isomorphic(nb, cubion(n - 1)) is not None


def test_parasol_neighbourhoods():
    p = parasol_constructed()
    assert p.n == 15
    assert are_isomorphic(open_neighbourhood(p, p.index("I")).graph(), cycle(7)) is not None
    for i in range(1, 8):
        assert are_isomorphic(open_neighbourhood(p, p.index(f"A{i}")).graph(), cycle(5)) is not None
        nb = open_neighbourhood(p, p.index(f"B{i}")).graph()
        degs = sorted(nb.degree(v) for v in range(nb.n))
        assert degs == [1, 1, 2, 2, 3, 3]
        core = nb.induced(sum(1 << v for v in range(nb.n) if nb.degree(v) > 1))
        assert are_isomorphic(core, cycle(4)) is not None
        pend = [v for v in range(nb.n) if nb.degree(v) == 1]
        anchors = [next(bits(nb.rows[v])) for v in pend]
        assert anchors[0] != anchors[1] and nb.adj(*anchors)


def test_parasol_bundled_matches_construction():
    assert generate("parasol").rows == parasol_constructed().rows


def test_parasol_plus_b_prime():
    pb = parasol_plus(parasol_constructed())
    nb = sorted(pb.label(v) for v in bits(pb.rows[pb.index("B'")]))
    assert nb == ["A1", "A7", "B1", "B2", "B7"]


def test_bundled_graphs():
    dh = generate("dunce_hat")
    bh = generate("bings_house")
    assert (dh.n, dh.num_edges()) == (17, 52)
    assert (bh.n, bh.num_edges()) == (21, 68)
    assert generate("dunce_hat").labels[-1] == "z"


def test_kneser_is_petersen():
    import networkx as nx

    from conftest import to_nx

    assert nx.is_isomorphic(to_nx(kneser(5, 2)), nx.petersen_graph())


def test_bad_family_specs():
    with pytest.raises(GraphError):
        generate("nonsense:3")
    with pytest.raises(GraphError):
        generate("cubion")
    with pytest.raises(GraphError):
        generate("complete:0")


def test_roundtrip_edgelist():
    g = cubion(2)
    h = read_graph(write_graph(g, header="two lines\nof header"))
    assert h.rows == g.rows and h.labels == g.labels


def test_read_from_path(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text(write_graph(path(3)))
    assert read_graph(f).rows == path(3).rows
    assert read_graph(str(f)).rows == path(3).rows


def test_dot_output():
    text = write_graph(path(3), "dot")
    assert text.startswith("graph G {") and "0 -- 1;" in text
    with pytest.raises(GraphError):
        write_graph(path(3), "svg")


@pytest.mark.parametrize(
    "text, line",
    [
        ("2 1\n0 0\n", 2),
        ("2 2\n0 1\n1 0\n", 3),
        ("2 1\n0 5\n", 2),
        ("2 1\n0 x\n", 2),
        ("3 1\n0 1\n1 2 3\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_parse_count_mismatch_and_missing_header():
    with pytest.raises(FormatError):
        parse_graph("3 2\n0 1\n")
    with pytest.raises(FormatError):
        parse_graph("# nothing\n")


def test_empty_graph_io_allowed():
    g = parse_graph("0 0\n")
    assert g.n == 0


def test_data_dir_override(tmp_path, monkeypatch):
    (tmp_path / "parasol.txt").write_text(write_graph(path(2)))
    monkeypatch.setenv("DISMANTLE_DATA_DIR", str(tmp_path))
    assert data_dir() == tmp_path
    assert generate("parasol").n == 2
    monkeypatch.setenv("DISMANTLE_DATA_DIR", str(tmp_path / "missing"))
    with pytest.raises(FileNotFoundError):
        generate("dunce_hat")
