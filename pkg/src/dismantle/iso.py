"""Isomorphism, canonical keys and automorphism generators.

Everything here is individualization-refinement: an ordered partition is
refined to an equitable one by neighbour counts, a non-singleton cell is
split by individualizing one vertex, and the search backtracks.  Exact for
all inputs; practical up to :data:`MAX_VERTICES` vertices.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, GraphError, bits

MAX_VERTICES = 32

Cells = list[list[int]]


def _check_size(g: Graph) -> None:
    if g.n > MAX_VERTICES:
        raise GraphError(f"graph has {g.n} vertices; isomorphism tools support at most {MAX_VERTICES}")


def _cell_masks(cells: Cells) -> list[int]:
    out = []
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        out.append(m)
    return out


def refine(rows: Sequence[int], cells: Cells) -> tuple[Cells, tuple]:
    """Refine ``cells`` to an equitable ordered partition.

    Returns the refined cells and a trace; two refinements of isomorphic
    inputs give equal traces and corresponding cells.
    """
    trace = []
    while True:
        masks = _cell_masks(cells)
        new: Cells = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sig = {v: tuple(bin(rows[v] & m).count("1") for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new.append(c)
                continue
            changed = True
            trace.append((len(new), tuple((k, sum(1 for v in c if sig[v] == k)) for k in keys)))
            for k in keys:
                new.append([v for v in c if sig[v] == k])
        cells = new
        if not changed:
            trace.append(tuple(len(c) for c in cells))
            return cells, tuple(trace)


def _initial(g: Graph) -> Cells:
    by_deg: dict[int, list[int]] = {}
    for v in range(g.n):
        by_deg.setdefault(g.degree(v), []).append(v)
    return [by_deg[d] for d in sorted(by_deg)]


def _individualize(cells: Cells, idx: int, v: int) -> Cells:
    c = cells[idx]
    return cells[:idx] + [[v], [u for u in c if u != v]] + cells[idx + 1 :]


def _target_cell(cells: Cells) -> int:
    for i, c in enumerate(cells):
        if len(c) > 1:
            return i
    return -1


def _orbit_partition(n: int, perms: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for v in range(n):
            a, b = find(v), find(p[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_labeling(g: Graph) -> tuple[bytes, list[int]]:
    """Return ``(key, order)`` where ``order[p]`` is the vertex put at position ``p``.

    ``key`` is equal for two graphs iff they are isomorphic.
    """
    _check_size(g)
    rows = g.rows
    n = g.n
    best: list = [None, None]  # cert, order
    autos: list[list[int]] = []

    def certificate(order: list[int]) -> tuple[int, ...]:
        pos = [0] * n
        for p, v in enumerate(order):
            pos[v] = p
        out = []
        for v in order:
            r = 0
            for u in bits(rows[v]):
                r |= 1 << pos[u]
            out.append(r)
        return tuple(out)

    def search(cells: Cells, prefix: list[int]) -> None:
        cells, _ = refine(rows, cells)
        idx = _target_cell(cells)
        if idx < 0:
            order = [c[0] for c in cells]
            cert = certificate(order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            elif cert == best[0]:
                perm = [0] * n
                for a, b in zip(best[1], order):
                    perm[a] = b
                autos.append(perm)
            return
        tried: list[int] = []
        for v in cells[idx]:
            if tried:
                fixing = [p for p in autos if all(p[x] == x for x in prefix)]
                if fixing:
                    orb = _orbit_partition(n, fixing)
                    if any(orb[t] == orb[v] for t in tried):
                        continue
            search(_individualize(cells, idx, v), prefix + [v])
            tried.append(v)

    if n == 0:
        return b"\x00", []
    search(_initial(g), [])
    cert, order = best
    width = (n + 7) // 8
    key = bytes([n]) + b"".join(r.to_bytes(width, "little") for r in cert)
    return key, order


def canonical_key(g: Graph) -> bytes:
    return canonical_labeling(g)[0]


def canonical_form(g: Graph) -> Graph:
    _, order = canonical_labeling(g)
    perm = [0] * g.n
    for p, v in enumerate(order):
        perm[v] = p
    return g.without_labels().relabel(perm)


def are_isomorphic(g: Graph, h: Graph) -> dict[int, int] | None:
    """An edge-preserving bijection ``g -> h`` as a dict, or ``None``."""
    if g.n != h.n or g.num_edges() != h.num_edges():
        return None
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return None
    kg, og = canonical_labeling(g)
    kh, oh = canonical_labeling(h)
    if kg != kh:
        return None
    return {a: b for a, b in zip(og, oh)}


def is_isomorphism(g: Graph, h: Graph, f: dict[int, int] | Sequence[int]) -> bool:
    if g.n != h.n:
        return False
    m = [f[v] for v in range(g.n)]
    if sorted(m) != list(range(h.n)):
        return False
    for v in range(g.n):
        img = 0
        for u in bits(g.rows[v]):
            img |= 1 << m[u]
        if img != h.rows[m[v]]:
            return False
    return True


# -- automorphisms ------------------------------------------------------------

def _individualize_seq(rows: Sequence[int], cells: Cells, seq: Sequence[int]) -> tuple[Cells, tuple]:
    trace: list = []
    cells, t = refine(rows, cells)
    trace.append(t)
    for v in seq:
        idx = next(i for i, c in enumerate(cells) if v in c)
        cells, t = refine(rows, _individualize(cells, idx, v))
        trace.append((idx, t))
    return cells, tuple(trace)


def extend_isomorphism(
    g: Graph, h: Graph, seq_g: Sequence[int], seq_h: Sequence[int]
) -> list[int] | None:
    """Find an isomorphism ``g -> h`` mapping ``seq_g[i]`` to ``seq_h[i]``, or ``None``."""
    if g.n != h.n:
        return None
    cg, tg = _individualize_seq(g.rows, _initial(g), seq_g)
    ch, th = _individualize_seq(h.rows, _initial(h), seq_h)
    if tg != th or [len(c) for c in cg] != [len(c) for c in ch]:
        return None
    if [g.degree(v) for v in seq_g] != [h.degree(v) for v in seq_h]:
        return None

    def search(cg: Cells, ch: Cells) -> list[int] | None:
        idx = _target_cell(cg)
        if idx < 0:
            perm = [0] * g.n
            for a, b in zip(cg, ch):
                perm[a[0]] = b[0]
            return perm if is_isomorphism(g, h, perm) else None
        u = cg[idx][0]
        ng, tg = refine(g.rows, _individualize(cg, idx, u))
        for v in ch[idx]:
            nh, th = refine(h.rows, _individualize(ch, idx, v))
            if tg != th:
                continue
            found = search(ng, nh)
            if found is not None:
                return found
        return None

    return search(cg, ch)


def automorphism_generators(g: Graph) -> tuple[list[list[int]], list[int], list[int]]:
    """Generators of Aut(g) with a base and the basic orbit sizes.

    ``len(Aut(g))`` is the product of the orbit sizes.
    """
    _check_size(g)
    base: list[int] = []
    cells, _ = refine(g.rows, _initial(g))
    while True:
        idx = _target_cell(cells)
        if idx < 0:
            break
        b = cells[idx][0]
        base.append(b)
        cells, _ = refine(g.rows, _individualize(cells, idx, b))

    gens: list[list[int]] = []
    orbit_sizes = [1] * len(base)
    for level in range(len(base) - 1, -1, -1):
        prefix = base[:level]
        b = base[level]
        cells, _ = _individualize_seq(g.rows, _initial(g), prefix)
        cell = next(c for c in cells if b in c)
        orbit = {b}
        for y in cell:
            fixing = [p for p in gens if all(p[x] == x for x in prefix)]
            orbit = _closure_orbit(b, fixing)
            if y in orbit:
                continue
            p = extend_isomorphism(g, g, base[: level + 1], prefix + [y])
            if p is not None:
                gens.append(p)
        fixing = [p for p in gens if all(p[x] == x for x in prefix)]
        orbit_sizes[level] = len(_closure_orbit(b, fixing))
    return gens, base, orbit_sizes


def _closure_orbit(v: int, perms: list[list[int]]) -> set[int]:
    orbit = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for p in perms:
            y = p[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def orbit_of(item, perms: list[list[int]], act) -> set:
    """Orbit of ``item`` under the group generated by ``perms``; ``act(p, item)`` applies one."""
    orbit = {item}
    frontier = [item]
    while frontier:
        x = frontier.pop()
        for p in perms:
            y = act(p, x)
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit
