"""Maximal cliques, clique number, star-cluster cliques.

A star-cluster clique is a clique meeting every maximal clique.  If it has
``a >= 2`` vertices the graph dismantles onto it at level ``a - 2``, and
:func:`dismantle_to_star_clique` writes that dismantling down explicitly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .certificates import Certificate, Move, graph_hash
from .graph import Graph, GraphError, VertexSet, bits, cone_apexes, mask_of, popcount


def _bk(rows: Sequence[int], r: int, p: int, x: int, out: list[int]) -> None:
    if not p and not x:
        out.append(r)
        return
    # pivot: the vertex of P | X with the most neighbours in P
    pivot = max(bits(p | x), key=lambda u: popcount(rows[u] & p))
    for v in bits(p & ~rows[pivot]):
        _bk(rows, r | 1 << v, p & rows[v], x & rows[v], out)
        p &= ~(1 << v)
        x |= 1 << v


def maximal_clique_masks(rows: Sequence[int], mask: int) -> list[int]:
    out: list[int] = []
    if mask:
        _bk(rows, 0, mask, 0, out)
    out.sort(key=lambda m: sorted(bits(m)))
    return out


def maximal_cliques(g: Graph) -> list[VertexSet]:
    """All maximal cliques, each once, in lexicographic order of sorted members."""
    if g.n < 1:
        raise GraphError("the empty graph has no cliques")
    return [VertexSet(g, m) for m in maximal_clique_masks(g.rows, g.full_mask)]


def clique_number_mask(rows: Sequence[int], mask: int) -> int:
    best = 0

    def grow(size: int, p: int) -> None:
        nonlocal best
        if not p:
            best = max(best, size)
            return
        if size + popcount(p) <= best:
            return
        for v in bits(p):
            if size + popcount(p) <= best:
                return
            grow(size + 1, p & rows[v])
            p &= ~(1 << v)

    grow(0, mask)
    return best


def clique_number(g: Graph) -> int:
    return clique_number_mask(g.rows, g.full_mask)


def is_clique(rows: Sequence[int], mask: int) -> bool:
    return all((rows[v] | 1 << v) & mask == mask for v in bits(mask))


def is_star_cluster(g: Graph, a_mask: int) -> bool:
    return (
        a_mask != 0
        and is_clique(g.rows, a_mask)
        and all(k & a_mask for k in maximal_clique_masks(g.rows, g.full_mask))
    )


def star_cluster_clique(g: Graph) -> VertexSet | None:
    """A smallest clique meeting every maximal clique (lexicographically least), or ``None``."""
    if g.n < 1:
        raise GraphError("the empty graph has no cliques")
    maxi = maximal_clique_masks(g.rows, g.full_mask)
    omega = max(popcount(k) for k in maxi)
    for size in range(1, omega + 1):
        for combo in combinations(range(g.n), size):
            m = mask_of(combo)
            if is_clique(g.rows, m) and all(k & m for k in maxi):
                return VertexSet(g, m)
    return None


def dismantle_to_star_clique(g: Graph, A: VertexSet | Sequence[int]) -> Certificate:
    """Explicit dismantling of ``g`` onto the star-cluster clique ``A``.

    Vertices ``x`` outside ``A`` with ``A`` not inside ``N(x)`` are deleted at
    level ``a - 2``: their neighbourhood has the smaller star-cluster clique
    ``A & N(x)``.  Once every vertex of ``A`` is an apex, the rest goes by
    0-deletions.  For ``a = 1`` the graph is a cone and the certificate ends
    at the point ``A``.
    """
    a_mask = A.members if isinstance(A, VertexSet) else mask_of(A)
    if not is_star_cluster(g, a_mask):
        raise GraphError("A is not a clique meeting every maximal clique")
    a = popcount(a_mask)
    level = max(a - 2, 0)
    rows = g.rows
    mask = g.full_mask
    moves: list[Move] = []
    while mask & ~a_mask:
        outside = mask & ~a_mask
        if cone_apexes(rows, mask) & a_mask == a_mask:
            for v in bits(outside):
                moves.append(Move.delete(v, 0))
            mask = a_mask
            break
        x = next(v for v in bits(outside) if rows[v] & a_mask != a_mask)
        moves.append(Move.delete(x, level))
        mask &= ~(1 << x)
    final: str | tuple[int, ...] = "point" if a == 1 else tuple(bits(a_mask))
    return Certificate(graph_hash(g), moves, final)


def plant_star_cluster(n: int, a: int, p: float, rng: random.Random) -> tuple[Graph, int]:
    """Random graph on ``n`` vertices in which ``{0..a-1}`` is a star-cluster clique.

    Starts from G(n, p) with ``A`` made complete and repairs every maximal
    clique missing ``A`` by joining it to a random vertex of ``A``.
    """
    if not 1 <= a <= n:
        raise GraphError("need 1 <= a <= n")
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if (u < a and v < a) or rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    a_mask = (1 << a) - 1
    while True:
        bad = [k for k in maximal_clique_masks(rows, (1 << n) - 1) if not k & a_mask]
        if not bad:
            break
        hub = rng.randrange(a)
        for v in bits(bad[0]):
            rows[hub] |= 1 << v
            rows[v] |= 1 << hub
    return Graph(n, tuple(rows)), a_mask


@dataclass
class CliqueReport:
    cliques: list[VertexSet]
    omega: int
    star_cluster: VertexSet | None

    @classmethod
    def of(cls, g: Graph) -> CliqueReport:
        cl = maximal_cliques(g)
        return cls(cl, max(len(k) for k in cl), star_cluster_clique(g))

    def to_json(self) -> dict:
        return {
            "maximal_cliques": [sorted(k) for k in self.cliques],
            "omega": self.omega,
            "star_cluster": sorted(self.star_cluster) if self.star_cluster is not None else None,
        }
