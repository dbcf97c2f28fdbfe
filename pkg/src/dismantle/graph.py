"""Finite simple graphs stored as per-vertex adjacency bit rows.

A graph on ``n`` vertices is the tuple ``rows`` where bit ``j`` of ``rows[i]``
is set iff ``i ~ j``.  Vertex subsets of a fixed root graph are plain ``int``
masks; every search in the package works on masks over one root so that
memo keys stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertices."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise GraphError("row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            if row & ~full:
                raise GraphError(f"vertex {v} adjacent to a vertex out of range")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency {v}-{u}")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise GraphError("labels must name every vertex")
            if len(set(self.labels)) != self.n:
                raise GraphError("labels must be unique")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def from_labeled_edges(cls, names: Sequence[str], edges: Iterable[tuple[str, str]]) -> Graph:
        index = {name: i for i, name in enumerate(names)}
        return cls.from_edges(len(names), ((index[a], index[b]) for a, b in edges), names)

    # -- queries ----------------------------------------------------------
    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adj(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def index(self, name: str) -> int:
        if self.labels is None:
            return int(name)
        try:
            return self.labels.index(name)
        except ValueError:
            raise GraphError(f"no vertex labeled {name!r}") from None

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def induced(self, mask: int) -> Graph:
        """The induced subgraph on ``mask``, relabeled to ``0..k-1`` in ascending order."""
        verts = list(bits(mask))
        pos = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            r = 0
            for u in bits(self.rows[v] & mask):
                r |= 1 << pos[u]
            rows.append(r)
        labels = tuple(self.label(v) for v in verts) if self.labels is not None else None
        return Graph(len(verts), tuple(rows), labels)

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(self.rows)), self.labels)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for u in bits(self.rows[v]):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        labels = None
        if self.labels is not None:
            tmp = [""] * self.n
            for v in range(self.n):
                tmp[perm[v]] = self.labels[v]
            labels = tuple(tmp)
        return Graph(self.n, tuple(rows), labels)

    def without_labels(self) -> Graph:
        return Graph(self.n, self.rows)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"


@dataclass(frozen=True, eq=False)
class VertexSet:
    """A subset of the vertices of a fixed root graph."""

    root: Graph
    members: int

    def __post_init__(self) -> None:
        if self.members & ~self.root.full_mask:
            raise GraphError("vertex set not contained in root")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.root is other.root and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.root), self.members))

    def __iter__(self) -> Iterator[int]:
        return bits(self.members)

    def __len__(self) -> int:
        return popcount(self.members)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.members >> v & 1)

    def graph(self) -> Graph:
        return self.root.induced(self.members)

    def labels(self) -> list[str]:
        return [self.root.label(v) for v in self]

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"


@dataclass(frozen=True)
class VertexPartition:
    root: Graph
    blocks: tuple[VertexSet, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        seen = 0
        for b in self.blocks:
            if not b.members or b.members & seen:
                raise GraphError("partition blocks must be nonempty and disjoint")
            seen |= b.members
        if seen != self.root.full_mask:
            raise GraphError("partition blocks must cover the root")

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise GraphError(f"vertex {v} out of range")


# -- neighbourhoods and domination ------------------------------------------

def open_neighbourhood(g: Graph, v: int) -> VertexSet:
    g.check_vertex(v)
    return VertexSet(g, g.rows[v])


def closed_neighbourhood(g: Graph, v: int) -> VertexSet:
    g.check_vertex(v)
    return VertexSet(g, g.rows[v] | 1 << v)


def cone_apexes(rows: Sequence[int], mask: int) -> int:
    """Mask of the vertices of ``mask`` adjacent to every other vertex of ``mask``."""
    out = 0
    for v in bits(mask):
        if (rows[v] | 1 << v) & mask == mask:
            out |= 1 << v
    return out


def is_cone(g: Graph) -> VertexSet:
    """All apexes of ``g``; empty iff ``g`` is not a cone."""
    if g.n < 1:
        raise GraphError("the empty graph has no apex")
    return VertexSet(g, cone_apexes(g.rows, g.full_mask))


def dominator(rows: Sequence[int], mask: int, x: int) -> int:
    """Smallest vertex of ``mask`` dominating ``x`` inside ``mask``, or -1."""
    closed = (rows[x] | 1 << x) & mask
    for a in bits(rows[x] & mask):
        if closed & ~(rows[a] | 1 << a) == 0:
            return a
    return -1


def dominated_vertices(g: Graph) -> dict[int, int]:
    """Map each dominated vertex to its smallest dominating witness."""
    if g.n < 1:
        raise GraphError("the empty graph has no vertices")
    out = {}
    for x in range(g.n):
        a = dominator(g.rows, g.full_mask, x)
        if a >= 0:
            out[x] = a
    return out


def is_connected(rows: Sequence[int], mask: int) -> bool:
    if not mask:
        return True
    seen = mask & -mask
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def components(rows: Sequence[int], mask: int) -> list[int]:
    out = []
    rest = mask
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v]
            nxt &= rest & ~seen
            seen |= nxt
            frontier = nxt
        out.append(seen)
        rest &= ~seen
    return out


def edge_count(rows: Sequence[int], mask: int) -> int:
    return sum(popcount(rows[v] & mask) for v in bits(mask)) // 2


def has_triangle(rows: Sequence[int], mask: int) -> bool:
    for v in bits(mask):
        nb = rows[v] & mask
        for u in bits(nb):
            if u > v and rows[u] & nb:
                return True
    return False


def twin_quotient(g: Graph) -> tuple[Graph, VertexPartition]:
    """Quotient of ``g`` by equality of closed neighbourhoods.

    Blocks are ordered by their smallest vertex; quotient vertex ``i``
    stands for block ``i``.
    """
    if g.n < 1:
        raise GraphError("the empty graph has no quotient")
    closed = [g.rows[v] | 1 << v for v in range(g.n)]
    block_masks: list[int] = []
    owner = [-1] * g.n
    for v in range(g.n):
        if owner[v] >= 0:
            continue
        m = 0
        for u in range(v, g.n):
            if closed[u] == closed[v]:
                m |= 1 << u
                owner[u] = len(block_masks)
        block_masks.append(m)
    reps = [b & -b for b in block_masks]
    rows = []
    for i, b in enumerate(block_masks):
        v = reps[i].bit_length() - 1
        r = 0
        for j, c in enumerate(block_masks):
            if j != i and g.rows[v] & c:
                r |= 1 << j
        rows.append(r)
    labels = None
    if g.labels is not None:
        labels = tuple("|".join(g.label(v) for v in bits(b)) for b in block_masks)
    quotient = Graph(len(block_masks), tuple(rows), labels)
    partition = VertexPartition(g, tuple(VertexSet(g, b) for b in block_masks))
    return quotient, partition
