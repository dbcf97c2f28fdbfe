"""Ground truth that does not go through the dismantling engine.

* the clique query game, solved by plain minimax;
* exhaustive and sampled graph enumeration, labeled or up to isomorphism;
* a search for a graph whose 1-dismantlings end in different stiff graphs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .certificates import Certificate, Move, graph_hash
from .engine import Engine
from .graph import Graph, GraphError, bits, is_connected, popcount
from .iso import automorphism_generators, canonical_key

GAME_LIMIT = 14
EXHAUSTIVE_LIMIT = 7


@dataclass(frozen=True)
class GameState:
    positives: int
    negatives: int

    def __post_init__(self) -> None:
        if self.positives & self.negatives:
            raise GraphError("a vertex cannot be answered both ways")


def evasiveness_game_depth(g: Graph, state: GameState | None = None) -> int:
    """Worst-case number of membership queries needed to decide whether a hidden set is a clique.

    The empty set counts as a clique.  A position is settled once the
    positives contain a non-edge or every completion is a clique.
    """
    if g.n > GAME_LIMIT:
        raise GraphError(f"game solver limited to {GAME_LIMIT} vertices, got {g.n}")
    rows = g.rows
    closed = [r | 1 << v for v, r in enumerate(rows)]
    memo: dict[tuple[int, int], int] = {}

    def clique(mask: int) -> bool:
        return all(closed[v] & mask == mask for v in bits(mask))

    def depth(p: int, r: int) -> int:
        key = (p, r)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if clique(p | r):
            memo[key] = 0
            return 0
        best = g.n + 1
        for x in bits(r):
            rest = r & ~(1 << x)
            yes = depth(p | 1 << x, rest) if rows[x] & p == p else 0
            if 1 + yes >= best:
                continue
            no = depth(p, rest)
            best = min(best, 1 + max(yes, no))
        memo[key] = best
        return best

    p = state.positives if state else 0
    n_mask = state.negatives if state else 0
    if p and not clique(p):
        return 0
    return depth(p, g.full_mask & ~p & ~n_mask)


# -- enumeration --------------------------------------------------------------------

def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def graph_from_code(n: int, code: int) -> Graph:
    """The labeled graph whose edge set is bit ``i`` of ``code`` for the ``i``-th pair."""
    rows = [0] * n
    for i, (u, v) in enumerate(_pairs(n)):
        if code >> i & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    rows = [0] * n
    for u, v in _pairs(n):
        if rng.random() < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def enumerate_labeled_graphs(n: int, sample: int | None = None, seed: int = 0) -> Iterator[Graph]:
    """All ``2^(n choose 2)`` labeled graphs, or ``sample`` uniform ones from a seeded RNG."""
    if n < 0:
        raise GraphError("n must be nonnegative")
    if sample is not None:
        rng = random.Random(seed)
        for _ in range(sample):
            yield random_graph(n, rng)
        return
    if n > EXHAUSTIVE_LIMIT:
        raise GraphError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_LIMIT}")
    for code in range(1 << len(_pairs(n))):
        yield graph_from_code(n, code)


def _independent(rows: tuple[int, ...], mask: int) -> bool:
    return all(not rows[v] & mask for v in bits(mask))


def iso_classes(n: int, triangle_free: bool = False) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices.

    Classes on ``n`` vertices are grown from classes on ``n - 1`` by adding a
    vertex in every possible way; with ``triangle_free`` only independent
    neighbourhoods are used, which still reaches every triangle-free class.
    """
    if n < 1:
        raise GraphError("n must be >= 1")
    level = [Graph(1, (0,))]
    for m in range(2, n + 1):
        seen: dict[bytes, Graph] = {}
        for h in level:
            for nb in range(1 << (m - 1)):
                if triangle_free and not _independent(h.rows, nb):
                    continue
                rows = list(h.rows) + [nb]
                for u in bits(nb):
                    rows[u] |= 1 << (m - 1)
                g = Graph(m, tuple(rows))
                key = canonical_key(g)
                if key not in seen:
                    seen[key] = g
        level = sorted(seen.values(), key=lambda g: (g.num_edges(), canonical_key(g)))
    return level


def labeled_copies(g: Graph) -> int:
    """Number of labeled graphs isomorphic to ``g``: ``n! / |Aut(g)|``."""
    _, _, orbits = automorphism_generators(g)
    return math.factorial(g.n) // math.prod(orbits)


# -- order sensitivity ------------------------------------------------------------------

@dataclass
class OrderWitness:
    graph: Graph
    certificates: tuple[Certificate, Certificate]
    cores: tuple[Graph, Graph]


def reachable_stiff_cores(g: Graph, k: int = 1) -> dict[bytes, list[int]]:
    """Every k-stiff graph reachable by k-deletions, keyed by canonical key, with one deletion path each."""
    eng = Engine(g)
    found: dict[bytes, list[int]] = {}
    parent: dict[int, tuple[int, int]] = {g.full_mask: (-1, -1)}
    stack = [g.full_mask]
    while stack:
        mask = stack.pop()
        cand = eng.dk_vertices(mask, k) if mask & (mask - 1) else 0
        if not cand:
            key = canonical_key(g.induced(mask))
            if key not in found:
                path = []
                m = mask
                while parent[m][0] >= 0:
                    prev, v = parent[m]
                    path.append(v)
                    m = prev
                found[key] = path[::-1]
            continue
        for v in bits(cand):
            nxt = mask & ~(1 << v)
            if nxt not in parent:
                parent[nxt] = (mask, v)
                stack.append(nxt)
    return found


def find_order_sensitivity_witness(max_n: int, allow_point: bool = False) -> OrderWitness | None:
    """Smallest graph (by order, then size) whose 1-dismantlings reach two non-isomorphic 1-stiff graphs.

    With ``allow_point`` false both stiff graphs must have at least two vertices.
    """
    if max_n > 9:
        raise GraphError("witness search is limited to max_n <= 9")
    for n in range(1, max_n + 1):
        for g in iso_classes(n):
            if not is_connected(g.rows, g.full_mask):
                continue
            cores = reachable_stiff_cores(g, 1)
            paths = [p for p in cores.values() if allow_point or len(p) < n - 1]
            if len(paths) < 2:
                continue
            paths.sort(key=lambda p: (-len(p), p))
            chosen = paths[:2]
            certs = []
            finals = []
            for p in chosen:
                rest = g.full_mask
                for v in p:
                    rest &= ~(1 << v)
                final: str | tuple[int, ...] = "point" if popcount(rest) == 1 else tuple(bits(rest))
                certs.append(Certificate(graph_hash(g), [Move.delete(v, 1) for v in p], final))
                finals.append(g.induced(rest))
            return OrderWitness(g, (certs[0], certs[1]), (finals[0], finals[1]))
    return None
