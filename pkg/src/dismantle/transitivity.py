"""Automorphism groups, vertex-transitivity and complete-transitivity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .engine import Status, is_k_dismantlable
from .generators import circulant, complete, cycle, kneser, octahedron
from .graph import Graph, bits, is_connected
from .iso import automorphism_generators, canonical_key, is_isomorphism, orbit_of

ELEMENT_LIMIT = 100_000


@dataclass(frozen=True)
class AutomorphismSet:
    """Aut(root) as generators plus a base with its basic orbit sizes."""

    root: Graph
    generators: tuple[tuple[int, ...], ...]
    base: tuple[int, ...]
    orbit_sizes: tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.orbit_sizes)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, perm: object) -> bool:
        return isinstance(perm, (list, tuple)) and is_isomorphism(self.root, self.root, list(perm))

    def elements(self) -> list[tuple[int, ...]]:
        """The whole group; refuses groups above :data:`ELEMENT_LIMIT`."""
        if self.order > ELEMENT_LIMIT:
            raise ValueError(f"group of order {self.order} too large to list")
        ident = tuple(range(self.root.n))
        return sorted(orbit_of(ident, list(self.generators), lambda p, q: tuple(p[x] for x in q)))

    def orbit(self, v: int) -> set[int]:
        return orbit_of(v, list(self.generators), lambda p, x: p[x])

    def vertex_orbits(self) -> list[set[int]]:
        out: list[set[int]] = []
        seen = 0
        for v in range(self.root.n):
            if not seen >> v & 1:
                o = self.orbit(v)
                out.append(o)
                for u in o:
                    seen |= 1 << u
        return out


def automorphisms(g: Graph) -> AutomorphismSet:
    gens, base, sizes = automorphism_generators(g)
    return AutomorphismSet(g, tuple(tuple(p) for p in gens), tuple(base), tuple(sizes))


def is_vertex_transitive(g: Graph, aut: AutomorphismSet | None = None) -> bool:
    aut = aut or automorphisms(g)
    return len(aut.orbit(0)) == g.n


def ordered_cliques(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered k-tuples of distinct pairwise adjacent vertices."""

    def grow(prefix: tuple[int, ...], cand: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == k:
            yield prefix
            return
        for v in bits(cand):
            yield from grow(prefix + (v,), cand & g.rows[v])

    yield from grow((), g.full_mask)


def is_i_complete_transitive(g: Graph, i: int, aut: AutomorphismSet | None = None) -> bool:
    """Aut(g) is transitive on ordered k-cliques for every ``1 <= k <= i``."""
    if i < 1:
        raise ValueError("i must be >= 1")
    aut = aut or automorphisms(g)
    gens = list(aut.generators)
    for k in range(1, i + 1):
        tuples = list(ordered_cliques(g, k))
        if not tuples:
            break
        if len(orbit_of(tuples[0], gens, lambda p, t: tuple(p[x] for x in t))) != len(tuples):
            return False
    return True


def hypercube_skeleton(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(v, v ^ 1 << b) for v in range(n) for b in range(d) if v < v ^ 1 << b])


def curated_corpus(max_n: int = 12) -> list[tuple[str, Graph]]:
    """Vertex-transitive test graphs: cycles, connected circulants, Kneser, cubes, octahedra, complete graphs."""
    out: list[tuple[str, Graph]] = []
    seen: set[bytes] = set()

    def push(name: str, g: Graph) -> None:
        key = canonical_key(g)
        if key not in seen:
            seen.add(key)
            out.append((name, g))

    for n in range(1, max_n + 1):
        push(f"complete:{n}", complete(n))
    for n in range(3, max_n + 1):
        push(f"cycle:{n}", cycle(n))
    for n in range(4, max_n + 1):
        top = n // 2
        for s in range(1, 1 << top):
            dists = [d + 1 for d in range(top) if s >> d & 1]
            g = circulant(n, dists)
            if is_connected(g.rows, g.full_mask):
                push(f"circulant:{n}:{','.join(map(str, dists))}", g)
    push("kneser:5:2", kneser(5, 2))
    for d in (2, 3):
        push(f"hypercube:{d}", hypercube_skeleton(d))
    for m in range(2, max_n // 2 + 1):
        push(f"octahedron:{m}", octahedron(m))
    return out


@dataclass
class Violation:
    name: str
    k: int
    reason: str


def rigidity_violations(corpus: list[tuple[str, Graph]], k: int) -> tuple[int, list[Violation]]:
    """Check that (k+1)-complete-transitive members of ``D_k`` are complete.

    Returns the number of graphs the hypothesis applied to and any violations.
    """
    checked = 0
    bad: list[Violation] = []
    for name, g in corpus:
        aut = automorphisms(g)
        if not is_i_complete_transitive(g, k + 1, aut):
            continue
        checked += 1
        res = is_k_dismantlable(g, k)
        if res.status is Status.INDETERMINATE:  # pragma: no cover - no budget given
            bad.append(Violation(name, k, "undecided"))
        elif res.status is Status.YES and g.num_edges() != g.n * (g.n - 1) // 2:
            bad.append(Violation(name, k, "in D_k but not complete"))
    return checked, bad
