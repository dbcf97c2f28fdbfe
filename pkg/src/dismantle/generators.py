"""Named graphs, standard families and the edge-list file format."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .graph import Graph, GraphError

FAMILIES = (
    "complete",
    "cycle",
    "path",
    "octahedron",
    "cubion",
    "parasol",
    "parasol_plus",
    "dunce_hat",
    "bings_house",
    "kneser",
    "wheel",
    "hypercube_clique",
    "circulant",
)


class FormatError(GraphError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = field(default_factory=tuple)

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``"cubion:3"`` or ``"kneser:5,2"`` or ``"parasol"``."""
        name, _, rest = text.partition(":")
        params = tuple(int(p) for p in rest.split(",") if p.strip()) if rest else ()
        return cls(name.strip(), params)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    """The path on ``n`` vertices."""
    if n < 1:
        raise GraphError("a path needs at least 1 vertex")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def circulant(n: int, distances) -> Graph:
    edges = set()
    for i in range(n):
        for d in distances:
            j = (i + d) % n
            if j != i:
                edges.add((min(i, j), max(i, j)))
    return Graph.from_edges(n, sorted(edges))


def octahedron(n: int) -> Graph:
    """The complement of ``n`` disjoint edges (2n vertices)."""
    if n < 1:
        raise GraphError("octahedron needs n >= 1")
    edges = [(u, v) for u, v in itertools.combinations(range(2 * n), 2) if u // 2 != v // 2]
    return Graph.from_edges(2 * n, edges)


def wheel(m: int) -> Graph:
    """An m-cycle ``0..m-1`` plus the hub ``m`` (labeled ``z``)."""
    if m < 3:
        raise GraphError("a wheel needs a rim of length >= 3")
    edges = [(i, (i + 1) % m) for i in range(m)] + [(i, m) for i in range(m)]
    return Graph.from_edges(m + 1, edges, [str(i) for i in range(m)] + ["z"])


def kneser(n: int, k: int) -> Graph:
    if not (k >= 1 and n > 2 * k - 1):
        raise GraphError("kneser(n, k) needs k >= 1 and n >= 2k")
    subsets = list(itertools.combinations(range(n), k))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    labels = ["{" + ",".join(map(str, s)) + "}" for s in subsets]
    return Graph.from_edges(len(subsets), edges, labels)


def _tuple_label(x: tuple[int, ...]) -> str:
    return "".join(map(str, x))


def _alpha_label(i: int, eps: int) -> str:
    return f"alpha_{i}_{eps}"


def hypercube_clique(n: int) -> Graph:
    """The complete graph on the binary n-tuples, labeled by their bit strings."""
    if n < 1:
        raise GraphError("hypercube_clique needs n >= 1")
    tuples = list(itertools.product((0, 1), repeat=n))
    return Graph.from_edges(
        len(tuples), itertools.combinations(range(len(tuples)), 2), [_tuple_label(x) for x in tuples]
    )


def cubion(n: int) -> Graph:
    """The n-cubion: an n-octahedron of alpha vertices over a 2^n clique of tuples.

    ``alpha_{i,eps}`` is adjacent to every ``alpha_{j,*}`` with ``j != i`` and to
    every tuple whose ``i``-th entry equals ``eps``.
    """
    if n < 1:
        raise GraphError("cubion needs n >= 1")
    alphas = [(i, e) for i in range(1, n + 1) for e in (0, 1)]
    tuples = list(itertools.product((0, 1), repeat=n))
    labels = [_alpha_label(i, e) for i, e in alphas] + [_tuple_label(x) for x in tuples]
    na = len(alphas)
    edges = []
    for a, b in itertools.combinations(range(na), 2):
        if alphas[a][0] != alphas[b][0]:
            edges.append((a, b))
    for a, b in itertools.combinations(range(len(tuples)), 2):
        edges.append((na + a, na + b))
    for a, (i, e) in enumerate(alphas):
        for t, x in enumerate(tuples):
            if x[i - 1] == e:
                edges.append((a, na + t))
    return Graph.from_edges(na + len(tuples), edges, labels)


def cubion_iterative(n: int) -> Graph:
    """Build the n-cubion from the path on four vertices by repeated doubling.

    Each step splits every tuple ``x`` into the twins ``x0``/``x1`` and adds
    ``alpha_{m+1,eps}`` over the previous alphas and the tuples ending in ``eps``.
    """
    if n < 1:
        raise GraphError("cubion needs n >= 1")
    # Q_1: alpha_1_0 - 0 - 1 - alpha_1_1
    names = [_alpha_label(1, 0), _alpha_label(1, 1), "0", "1"]
    adj = {names[0]: {"0"}, names[1]: {"1"}, "0": {names[0], "1"}, "1": {names[1], "0"}}
    for m in range(1, n):
        base = hypercube_clique(m)
        old_tuples = [base.label(v) for v in range(base.n)]
        new_adj: dict[str, set[str]] = {}
        alphas = [v for v in adj if v.startswith("alpha")]

        def split(v: str) -> list[str]:
            return [v] if v.startswith("alpha") else [v + "0", v + "1"]

        for v in adj:
            for w in split(v):
                new_adj.setdefault(w, set())
        for v, nbrs in adj.items():
            for w in split(v):
                for u in nbrs:
                    new_adj[w].update(split(u))
        for t in old_tuples:
            new_adj[t + "0"].add(t + "1")
            new_adj[t + "1"].add(t + "0")
        for eps in (0, 1):
            a = _alpha_label(m + 1, eps)
            new_adj[a] = set(alphas) | {t + str(eps) for t in old_tuples}
            for u in new_adj[a]:
                new_adj[u].add(a)
        adj = new_adj
    names = sorted(adj, key=lambda s: (not s.startswith("alpha"), s))
    edges = {(min(a, b), max(a, b)) for a in adj for b in adj[a]}
    return Graph.from_labeled_edges(names, sorted(edges))


def _parasol_edges() -> tuple[list[str], list[tuple[str, str]]]:
    names = ["I"] + [f"A{i}" for i in range(1, 8)] + [f"B{i}" for i in range(1, 8)]
    edges = []
    for i in range(1, 8):
        nxt = i % 7 + 1
        edges.append(("I", f"A{i}"))
        edges.append((f"A{i}", f"A{nxt}"))
        edges.append((f"B{i}", f"B{nxt}"))
        edges.append((f"B{i}", f"B{(i + 1) % 7 + 1}"))
        edges.append((f"A{i}", f"B{i}"))
        edges.append((f"A{i}", f"B{nxt}"))
    return names, edges


def parasol_constructed() -> Graph:
    """The parasol built from its rule: A-ring on I, B circulant {1,2}, A_i ~ B_i, B_{i+1}."""
    names, edges = _parasol_edges()
    return Graph.from_labeled_edges(names, edges)


def add_vertex(g: Graph, name: str, nbrs) -> Graph:
    """``g`` plus a new last vertex ``name`` adjacent to ``nbrs`` (indices or labels)."""
    idx = [g.index(x) if isinstance(x, str) else x for x in nbrs]
    labels = [g.label(v) for v in range(g.n)] + [name]
    return Graph.from_edges(g.n + 1, g.edges() + [(v, g.n) for v in idx], labels)


def parasol_plus(parasol: Graph | None = None) -> Graph:
    """The parasol plus ``B'`` adjacent to ``B1`` and ``N(B1)`` minus ``B3``, ``B6``."""
    p = parasol if parasol is not None else generate(FamilySpec("parasol"))
    b1 = p.index("B1")
    nbrs = {b1} | {u for u in range(p.n) if p.adj(b1, u)}
    nbrs -= {p.index("B3"), p.index("B6")}
    return add_vertex(p, "B'", sorted(nbrs))


# -- bundled data -------------------------------------------------------------

def data_dir() -> Path:
    override = os.environ.get("DISMANTLE_DATA_DIR")
    if override:
        return Path(override)
    return Path(str(resources.files("dismantle") / "data"))


def data_path(name: str) -> Path:
    p = data_dir() / name
    if not p.exists():
        raise FileNotFoundError(f"bundled data file {name!r} not found in {data_dir()}")
    return p


_BUNDLED = {"parasol": "parasol.txt", "dunce_hat": "dunce_hat.txt", "bings_house": "bings_house.txt"}


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    f, p = spec.family, spec.params

    def need(k: int) -> None:
        if len(p) != k:
            raise GraphError(f"{f} takes {k} integer parameter(s), got {len(p)}")

    if f in _BUNDLED:
        need(0)
        return read_graph(data_path(_BUNDLED[f]))
    if f == "parasol_plus":
        need(0)
        return parasol_plus()
    if f == "complete":
        need(1)
        if p[0] < 1:
            raise GraphError("complete graph needs n >= 1")
        return complete(p[0])
    if f == "cycle":
        need(1)
        return cycle(p[0])
    if f == "path":
        need(1)
        return path(p[0])
    if f == "octahedron":
        need(1)
        return octahedron(p[0])
    if f == "cubion":
        need(1)
        return cubion(p[0])
    if f == "kneser":
        need(2)
        return kneser(p[0], p[1])
    if f == "wheel":
        need(1)
        return wheel(p[0])
    if f == "hypercube_clique":
        need(1)
        return hypercube_clique(p[0])
    if f == "circulant":
        if len(p) < 2:
            raise GraphError("circulant takes n followed by at least one distance")
        return circulant(p[0], p[1:])
    raise GraphError(f"unknown family {f!r}; known: {', '.join(FAMILIES)}")


# -- edge-list I/O ------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the native edge list: ``n m``, then ``m`` lines ``u v``, then ``# label v name``."""
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 2)
            if parts and parts[0] == "label":
                if len(parts) != 3:
                    raise FormatError("label line needs a vertex and a name", lineno)
                try:
                    v = int(parts[1])
                except ValueError:
                    raise FormatError(f"bad label vertex {parts[1]!r}", lineno) from None
                if v in labels:
                    raise FormatError(f"vertex {v} labeled twice", lineno)
                labels[v] = parts[2].strip()
            continue
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise FormatError("negative header values", lineno)
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise FormatError(f"loop at vertex {a}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise FormatError(f"edge ({a}, {b}) out of range for n={n}", lineno)
        e = (min(a, b), max(a, b))
        if e in seen:
            raise FormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise FormatError("missing header line 'n m'")
    n, m = header
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    names = None
    if labels:
        if set(labels) != set(range(n)):
            raise FormatError("labels must cover every vertex")
        names = [labels[v] for v in range(n)]
    return Graph.from_edges(n, edges, names)


def read_graph(source: str | os.PathLike) -> Graph:
    """Read a graph from a path, or parse ``source`` directly if it is edge-list text."""
    if isinstance(source, str) and ("\n" in source or not os.path.exists(source)):
        return parse_graph(source)
    return parse_graph(Path(source).read_text(encoding="utf-8"))


def write_graph(g: Graph, fmt: str = "edgelist", header: str | None = None) -> str:
    if fmt == "edgelist":
        lines = []
        if header:
            lines += [f"# {ln}" if ln else "#" for ln in header.splitlines()]
        edges = g.edges()
        lines.append(f"{g.n} {len(edges)}")
        lines += [f"{u} {v}" for u, v in edges]
        if g.labels is not None:
            lines += [f"# label {v} {g.labels[v]}" for v in range(g.n)]
        return "\n".join(lines) + "\n"
    if fmt == "dot":
        lines = ["graph G {"]
        for v in range(g.n):
            lines.append(f'  {v} [label="{g.label(v)}"];')
        for u, v in g.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise GraphError(f"unknown output format {fmt!r}")
