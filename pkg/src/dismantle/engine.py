"""Exact decision procedures for the k-dismantlability hierarchy.

All searches work on vertex masks of one root graph.  A vertex ``x`` of the
induced subgraph on ``S`` is k-dismantlable iff its neighbourhood mask
``rows[x] & S`` induces a graph of ``D_{k-1}``; since that mask is again a
subset of the root, the neighbourhood subproblems share the memo with the
main search.

Budgets count node expansions.  Running out never produces a "no": the
caller gets ``Status.INDETERMINATE``.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .certificates import Certificate, Move, graph_hash
from .graph import (
    Graph,
    GraphError,
    VertexSet,
    bits,
    cone_apexes,
    dominator,
    edge_count,
    has_triangle,
    is_connected,
    popcount,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Status(str, Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "memo_hits": self.memo_hits, "elapsed": round(self.elapsed, 6)}


class BudgetExhausted(RuntimeError):
    def __init__(self, stats: SearchStats) -> None:
        super().__init__(f"search budget exhausted after {stats.nodes} node expansions")
        self.stats = stats


@dataclass
class DismantleResult:
    status: Status
    certificate: Certificate | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    budget: int | None = None
    level: int | None = None

    @property
    def yes(self) -> bool:
        return self.status is Status.YES

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "level": self.level,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "stats": self.stats.to_json(),
            "budget": self.budget,
        }


def _check_nonempty(g: Graph) -> None:
    if g.n < 1:
        raise GraphError("dismantlability is undefined for the empty graph")


class Engine:
    """Memoized search over the induced subgraphs of one root graph.

    ``order`` is ``"index"`` (deterministic, ascending vertices) or
    ``"degree"`` (highest degree first; still sound).  ``prune`` enables the
    connectivity and triangle-free shortcuts.
    """

    def __init__(
        self,
        g: Graph,
        budget: int | None = None,
        order: str = "index",
        prune: bool = True,
    ) -> None:
        _check_nonempty(g)
        self.g = g
        self.rows = g.rows
        self.budget = budget
        self.order = order
        self.prune = prune
        self.stats = SearchStats()
        self._memo: dict[tuple[int, int], bool] = {}
        self._choice: dict[tuple[int, int], int] = {}
        self._ne: dict[int, bool] = {}
        self._ne_choice: dict[int, int] = {}

    # -- bookkeeping ------------------------------------------------------
    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.budget is not None and self.stats.nodes > self.budget:
            raise BudgetExhausted(self.stats)

    def _candidates(self, mask: int) -> list[int]:
        vs = list(bits(mask))
        if self.order == "degree":
            vs.sort(key=lambda v: (-popcount(self.rows[v] & mask), v))
        return vs

    def _easy(self, mask: int) -> tuple[bool | None, int]:
        """Shortcuts shared by every level >= 0: cones, disconnection, triangle-free."""
        rows = self.rows
        apex = cone_apexes(rows, mask)
        if apex:
            rest = mask & ~apex
            x = (rest & -rest) if rest else (mask & -mask)
            return True, x.bit_length() - 1
        if not self.prune:
            return None, -1
        if not is_connected(rows, mask):
            return False, -1
        if not has_triangle(rows, mask):
            if edge_count(rows, mask) != popcount(mask) - 1:
                return False, -1
            for v in bits(mask):
                if popcount(rows[v] & mask) == 1:
                    return True, v
        return None, -1

    # -- D_k ----------------------------------------------------------------
    def in_dk(self, mask: int, k: int) -> bool:
        """Whether the subgraph induced on ``mask`` lies in ``D_k`` (``k >= -1``)."""
        if mask & (mask - 1) == 0:
            if not mask:
                raise GraphError("empty vertex set")
            return True
        key = (mask, k)
        hit = self._memo.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        if k == -1:
            res = cone_apexes(self.rows, mask) != 0
            self._memo[key] = res
            return res
        self._tick()
        easy, x = self._easy(mask)
        if easy is not None:
            if easy:
                self._choice[key] = x
            self._memo[key] = easy
            return easy
        res = False
        if k == 0:
            # Domination-deletions commute, so one greedy run decides D_0.
            for v in bits(mask):
                if dominator(self.rows, mask, v) >= 0:
                    res = self.in_dk(mask & ~(1 << v), 0)
                    if res:
                        self._choice[key] = v
                    break
        else:
            for v in self._candidates(mask):
                nb = self.rows[v] & mask
                if nb and self.in_dk(nb, k - 1) and self.in_dk(mask & ~(1 << v), k):
                    self._choice[key] = v
                    res = True
                    break
        self._memo[key] = res
        return res

    def is_k_vertex(self, mask: int, v: int, k: int) -> bool:
        nb = self.rows[v] & mask
        return bool(nb) and self.in_dk(nb, k - 1)

    def dk_vertices(self, mask: int, k: int) -> int:
        out = 0
        for v in bits(mask):
            if self.is_k_vertex(mask, v, k):
                out |= 1 << v
        return out

    def sequence(self, mask: int, k: int) -> list[int]:
        """Deletion order witnessing ``in_dk(mask, k)``; call only after a yes."""
        out = []
        while mask & (mask - 1):
            key = (mask, k)
            if key not in self._choice:
                if not self.in_dk(mask, k):
                    raise RuntimeError("sequence requested for a graph outside D_k")
            v = self._choice[key]
            out.append(v)
            mask &= ~(1 << v)
        return out

    # -- D_infinity ---------------------------------------------------------
    def non_evasive(self, mask: int) -> bool:
        if mask & (mask - 1) == 0:
            if not mask:
                raise GraphError("empty vertex set")
            return True
        hit = self._ne.get(mask)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        self._tick()
        easy, x = self._easy(mask)
        if easy is not None:
            if easy:
                self._ne_choice[mask] = x
            self._ne[mask] = easy
            return easy
        res = False
        for v in self._candidates(mask):
            nb = self.rows[v] & mask
            if nb and self.non_evasive(nb) and self.non_evasive(mask & ~(1 << v)):
                self._ne_choice[mask] = v
                res = True
                break
        self._ne[mask] = res
        return res

    def ne_sequence(self, mask: int) -> list[int]:
        out = []
        while mask & (mask - 1):
            if mask not in self._ne_choice and not self.non_evasive(mask):
                raise RuntimeError("sequence requested for an evasive graph")
            v = self._ne_choice[mask]
            out.append(v)
            mask &= ~(1 << v)
        return out

    def min_index(self, mask: int) -> int | None:
        """Smallest ``k`` with the induced graph in ``D_k``; ``None`` outside ``D_inf``."""
        if mask & (mask - 1) == 0 or cone_apexes(self.rows, mask):
            return -1
        if not self.non_evasive(mask):
            return None
        from .cliques import clique_number_mask

        cap = min(popcount(mask) - 2, clique_number_mask(self.rows, mask) - 2)
        for k in range(0, cap + 1):
            if self.in_dk(mask, k):
                return k
        raise AssertionError("non-evasive graph above its clique-number cap")  # pragma: no cover


# -- public operations ------------------------------------------------------------

def _result(
    eng: Engine, status: Status, t0: float, cert: Certificate | None = None, level: int | None = None
) -> DismantleResult:
    eng.stats.elapsed = time.perf_counter() - t0
    return DismantleResult(status, cert, eng.stats, eng.budget, level)


def _deletion_cert(g: Graph, seq: list[int], levels: list[int]) -> Certificate:
    return Certificate(graph_hash(g), [Move.delete(v, k) for v, k in zip(seq, levels)], "point")


def k_dismantlable_vertices(g: Graph, k: int, budget: int | None = None) -> VertexSet:
    """``D_k(g)``.  Raises :class:`BudgetExhausted` when the budget runs out."""
    if k < 0:
        raise GraphError("vertex dismantlability needs k >= 0")
    eng = Engine(g, budget)
    return VertexSet(g, eng.dk_vertices(g.full_mask, k))


def is_k_dismantlable(
    g: Graph, k: int, budget: int | None = None, order: str = "index", engine: Engine | None = None
) -> DismantleResult:
    if k < -1:
        raise GraphError("k must be >= -1")
    _check_nonempty(g)
    eng = engine or Engine(g, budget, order)
    t0 = time.perf_counter()
    try:
        ok = eng.in_dk(g.full_mask, k)
    except BudgetExhausted:
        return _result(eng, Status.INDETERMINATE, t0, level=k)
    if not ok:
        return _result(eng, Status.NO, t0, level=k)
    if k == -1:
        # A cone: every non-apex vertex is dominated by an apex.
        apex = cone_apexes(g.rows, g.full_mask)
        a = (apex & -apex).bit_length() - 1
        seq = [v for v in range(g.n) if v != a]
        cert = _deletion_cert(g, seq, [0] * len(seq))
    else:
        seq = eng.sequence(g.full_mask, k)
        cert = _deletion_cert(g, seq, [k] * len(seq))
    return _result(eng, Status.YES, t0, cert, k)


@dataclass
class MinIndexResult:
    status: Status  # YES: decided index; NO: outside D_infinity
    index: int | None
    certificate: Certificate | None
    stats: SearchStats
    budget: int | None

    @property
    def not_in_d_infinity(self) -> bool:
        return self.status is Status.NO

    def to_json(self) -> dict:
        return {
            "status": {Status.YES: "decided", Status.NO: "not_in_d_infinity", Status.INDETERMINATE: "indeterminate"}[
                self.status
            ],
            "index": self.index,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "stats": self.stats.to_json(),
            "budget": self.budget,
        }


def min_dismantling_index(g: Graph, budget: int | None = None) -> MinIndexResult:
    """Smallest ``k`` with ``g`` in ``D_k``, searching ``k <= min(n-2, omega-2)``."""
    from .cliques import clique_number

    _check_nonempty(g)
    eng = Engine(g, budget)
    t0 = time.perf_counter()
    full = g.full_mask
    try:
        if g.n == 1 or cone_apexes(g.rows, full):
            res = is_k_dismantlable(g, -1, engine=eng)
            return MinIndexResult(Status.YES, -1, res.certificate, eng.stats, budget)
        cap = min(g.n - 2, clique_number(g) - 2)
        for k in range(0, cap + 1):
            if eng.in_dk(full, k):
                seq = eng.sequence(full, k)
                eng.stats.elapsed = time.perf_counter() - t0
                return MinIndexResult(Status.YES, k, _deletion_cert(g, seq, [k] * len(seq)), eng.stats, budget)
    except BudgetExhausted:
        eng.stats.elapsed = time.perf_counter() - t0
        return MinIndexResult(Status.INDETERMINATE, None, None, eng.stats, budget)
    eng.stats.elapsed = time.perf_counter() - t0
    return MinIndexResult(Status.NO, None, None, eng.stats, budget)


def is_non_evasive(g: Graph, budget: int | None = None, prune: bool = True) -> DismantleResult:
    """Membership in ``D_infinity`` through the link/deletion recursion.

    A yes carries a deletion certificate whose per-move level is the minimal
    index of the deleted vertex's neighbourhood plus one.
    """
    _check_nonempty(g)
    eng = Engine(g, budget, prune=prune)
    t0 = time.perf_counter()
    try:
        ok = eng.non_evasive(g.full_mask)
        if not ok:
            return _result(eng, Status.NO, t0)
        seq = eng.ne_sequence(g.full_mask)
        levels = []
        mask = g.full_mask
        for v in seq:
            idx = eng.min_index(g.rows[v] & mask)
            assert idx is not None
            levels.append(max(idx + 1, 0))
            mask &= ~(1 << v)
    except BudgetExhausted:
        return _result(eng, Status.INDETERMINATE, t0)
    return _result(eng, Status.YES, t0, _deletion_cert(g, seq, levels), max(levels, default=-1))


def stiff_core(
    g: Graph, k: int, rng: random.Random | None = None, budget: int | None = None
) -> tuple[Graph, Certificate]:
    """Greedily delete k-dismantlable vertices until none is left.

    Deterministic (smallest vertex first) unless ``rng`` is given, in which
    case each step deletes a uniformly chosen k-dismantlable vertex.
    """
    if k < 0:
        raise GraphError("stiff cores need k >= 0")
    eng = Engine(g, budget)
    mask = g.full_mask
    moves = []
    while mask & (mask - 1):
        cand = eng.dk_vertices(mask, k)
        if not cand:
            break
        vs = list(bits(cand))
        v = rng.choice(vs) if rng is not None else vs[0]
        moves.append(Move.delete(v, k))
        mask &= ~(1 << v)
    final: str | tuple[int, ...] = "point" if popcount(mask) == 1 else tuple(bits(mask))
    return g.induced(mask), Certificate(graph_hash(g), moves, final)


def derivable(
    g: Graph,
    pred: Callable[[Graph], bool],
    budget: int | None = None,
    level: int | None = None,
) -> DismantleResult:
    """Local derivability: ``g`` is a point, or some ``x`` has ``pred(N(x))`` and ``g - x`` derivable.

    ``level`` only labels the moves of the returned certificate.
    """
    _check_nonempty(g)
    rows = g.rows
    stats = SearchStats()
    memo: dict[int, bool] = {}
    choice: dict[int, int] = {}
    pred_cache: dict[int, bool] = {}
    t0 = time.perf_counter()

    def p(mask: int) -> bool:
        hit = pred_cache.get(mask)
        if hit is None:
            hit = pred_cache[mask] = bool(pred(g.induced(mask)))
        return hit

    def rec(mask: int) -> bool:
        if mask & (mask - 1) == 0:
            return True
        hit = memo.get(mask)
        if hit is not None:
            stats.memo_hits += 1
            return hit
        stats.nodes += 1
        if budget is not None and stats.nodes > budget:
            raise BudgetExhausted(stats)
        res = False
        for v in bits(mask):
            nb = rows[v] & mask
            if nb and p(nb) and rec(mask & ~(1 << v)):
                choice[mask] = v
                res = True
                break
        memo[mask] = res
        return res

    try:
        ok = rec(g.full_mask)
    except BudgetExhausted:
        stats.elapsed = time.perf_counter() - t0
        return DismantleResult(Status.INDETERMINATE, None, stats, budget, level)
    stats.elapsed = time.perf_counter() - t0
    if not ok:
        return DismantleResult(Status.NO, None, stats, budget, level)
    cert = None
    if level is not None:
        seq = []
        mask = g.full_mask
        while mask & (mask - 1):
            seq.append(choice[mask])
            mask &= ~(1 << choice[mask])
        cert = _deletion_cert(g, seq, [level] * len(seq))
    return DismantleResult(Status.YES, cert, stats, budget, level)


# -- ws-dismantlability -----------------------------------------------------------

def _state_rows(rows: tuple[int, ...], removed: dict[int, int]) -> tuple[int, ...]:
    if not removed:
        return rows
    return tuple(r & ~removed.get(v, 0) for v, r in enumerate(rows))


def ws_dismantlable(
    g: Graph, budget: int | None = None, prefix: list[tuple[int, int]] | None = None
) -> DismantleResult:
    """Reduce ``g`` to a point by 1-dismantlable vertex and edge deletions.

    An edge ``{a, b}`` is 1-dismantlable when ``N(a) & N(b)`` lies in ``D_0``.
    ``prefix`` optionally forces the first moves to be the given edge deletions.
    """
    _check_nonempty(g)
    stats = SearchStats()
    t0 = time.perf_counter()
    dead: set[tuple[int, frozenset]] = set()
    base_rows = g.rows

    def tick() -> None:
        stats.nodes += 1
        if budget is not None and stats.nodes > budget:
            raise BudgetExhausted(stats)

    def edge_ok(rows: tuple[int, ...], mask: int, a: int, b: int) -> bool:
        common = rows[a] & rows[b] & mask
        return bool(common) and _d0(rows, common)

    def search(mask: int, removed: frozenset) -> list[Move] | None:
        if mask & (mask - 1) == 0:
            return []
        key = (mask, removed)
        if key in dead:
            stats.memo_hits += 1
            return None
        tick()
        rem: dict[int, int] = {}
        for a, b in removed:
            rem[a] = rem.get(a, 0) | 1 << b
            rem[b] = rem.get(b, 0) | 1 << a
        rows = _state_rows(base_rows, rem)
        if not is_connected(rows, mask):
            dead.add(key)
            return None
        sub = Engine(Graph(g.n, rows), None)
        if sub.in_dk(mask, 1):
            return [Move.delete(v, 1) for v in sub.sequence(mask, 1)]
        for v in bits(mask):
            nb = rows[v] & mask
            if nb and _d0(rows, nb):
                lvl = 0 if cone_apexes(rows, nb) else 1
                rest = search(mask & ~(1 << v), removed)
                if rest is not None:
                    return [Move.delete(v, lvl)] + rest
        for a in bits(mask):
            for b in bits(rows[a] & mask):
                if b > a and edge_ok(rows, mask, a, b):
                    rest = search(mask, removed | {(a, b)})
                    if rest is not None:
                        return [Move.delete_edge(a, b)] + rest
        dead.add(key)
        return None

    start: frozenset = frozenset()
    pre_moves: list[Move] = []
    try:
        for a, b in prefix or ():
            a, b = min(a, b), max(a, b)
            rem: dict[int, int] = {}
            for x, y in start:
                rem[x] = rem.get(x, 0) | 1 << y
                rem[y] = rem.get(y, 0) | 1 << x
            rows = _state_rows(base_rows, rem)
            if not (rows[a] >> b & 1 and edge_ok(rows, g.full_mask, a, b)):
                raise GraphError(f"forced edge {{{a}, {b}}} is not 1-dismantlable")
            start = start | {(a, b)}
            pre_moves.append(Move.delete_edge(a, b))
        moves = search(g.full_mask, start)
    except BudgetExhausted:
        stats.elapsed = time.perf_counter() - t0
        return DismantleResult(Status.INDETERMINATE, None, stats, budget)
    stats.elapsed = time.perf_counter() - t0
    if moves is None:
        return DismantleResult(Status.NO, None, stats, budget)
    cert = Certificate(graph_hash(g), pre_moves + moves, "point")
    return DismantleResult(Status.YES, cert, stats, budget, 1)


def _d0(rows: tuple[int, ...], mask: int) -> bool:
    """Greedy domination test on an arbitrary row table."""
    while mask & (mask - 1):
        for v in bits(mask):
            if dominator(rows, mask, v) >= 0:
                mask &= ~(1 << v)
                break
        else:
            return False
    return bool(mask)
