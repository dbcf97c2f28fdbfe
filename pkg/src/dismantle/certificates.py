"""Move sequences, their JSON form, and the replay verifier."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .graph import Graph, bits, popcount

CERT_VERSION = "cert_v1"
EDGE_LEVEL = "edge1"


class CertificateError(ValueError):
    """Raised for structurally malformed certificates."""


@dataclass(frozen=True)
class Move:
    op: str  # "delete" | "add" | "delete_edge"
    v: int
    k: int | None = None
    nbrs: tuple[int, ...] | None = None
    u: int | None = None

    @classmethod
    def delete(cls, v: int, k: int) -> Move:
        return cls("delete", v, k)

    @classmethod
    def add(cls, v: int, k: int, nbrs: Sequence[int]) -> Move:
        return cls("add", v, k, tuple(sorted(nbrs)))

    @classmethod
    def delete_edge(cls, u: int, v: int) -> Move:
        a, b = min(u, v), max(u, v)
        return cls("delete_edge", b, None, None, a)

    def to_json(self) -> dict[str, Any]:
        if self.op == "delete":
            return {"op": "delete", "v": self.v, "k": self.k}
        if self.op == "add":
            return {"op": "add", "v": self.v, "k": self.k, "nbrs": list(self.nbrs or ())}
        return {"op": "delete_edge", "u": self.u, "v": self.v}

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> Move:
        try:
            op = d["op"]
            if op == "delete":
                return cls.delete(int(d["v"]), int(d["k"]))
            if op == "add":
                return cls.add(int(d["v"]), int(d["k"]), [int(x) for x in d["nbrs"]])
            if op == "delete_edge":
                return cls.delete_edge(int(d["u"]), int(d["v"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed move {d!r}: {exc}") from None
        raise CertificateError(f"unknown move op {d.get('op')!r}")


@dataclass
class Certificate:
    graph_hash: str
    moves: list[Move]
    final: str | tuple[int, ...] = "point"
    labels: dict[int, str] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "version": CERT_VERSION,
            "graph_hash": self.graph_hash,
            "moves": [m.to_json() for m in self.moves],
            "final": self.final if self.final == "point" else {"vertices": list(self.final)},
        }
        if self.labels:
            out["labels"] = {str(k): v for k, v in sorted(self.labels.items())}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> Certificate:
        if d.get("version") != CERT_VERSION:
            raise CertificateError(f"unsupported certificate version {d.get('version')!r}")
        try:
            moves = [Move.from_json(m) for m in d["moves"]]
            final_raw = d["final"]
            if final_raw == "point":
                final: str | tuple[int, ...] = "point"
            else:
                final = tuple(int(v) for v in final_raw["vertices"])
            labels = {int(k): str(v) for k, v in d.get("labels", {}).items()}
            return cls(str(d["graph_hash"]), moves, final, labels)
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from None

    @classmethod
    def loads(cls, text: str) -> Certificate:
        return cls.from_json(json.loads(text))

    def deleted(self) -> list[int]:
        return [m.v for m in self.moves if m.op == "delete"]


def graph_hash(g: Graph) -> str:
    text = f"{g.n}\n" + "\n".join(f"{u} {v}" for u, v in g.edges())
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class VerifyReport:
    valid: bool
    failed_move: int | None = None
    reason: str = ""
    final_vertices: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


class ReplayState:
    """A mutable graph over integer vertex ids, used to replay certificates."""

    def __init__(self, g: Graph) -> None:
        self.adj: dict[int, int] = {v: g.rows[v] for v in range(g.n)}
        self.present = g.full_mask

    def nbrs(self, v: int) -> int:
        return self.adj[v] & self.present

    def graph_on(self, mask: int) -> Graph:
        verts = list(bits(mask))
        pos = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            r = 0
            for u in bits(self.adj[v] & mask):
                r |= 1 << pos[u]
            rows.append(r)
        return Graph(len(verts), tuple(rows))


def _decide(h: Graph, level: int, budget: int | None) -> str:
    from .engine import Status, is_k_dismantlable

    res = is_k_dismantlable(h, level, budget=budget)
    return {Status.YES: "yes", Status.NO: "no", Status.INDETERMINATE: "undecided"}[res.status]


def verify_move_sequence(g: Graph, cert: Certificate, budget: int | None = None) -> VerifyReport:
    """Replay ``cert`` on ``g``, re-deciding every side condition."""
    if cert.graph_hash != graph_hash(g):
        return VerifyReport(False, None, "graph hash does not match the certificate")
    st = ReplayState(g)
    for i, m in enumerate(cert.moves):
        if m.op == "delete":
            x = m.v
            if not st.present >> x & 1 if x >= 0 else True:
                return VerifyReport(False, i, f"vertex {x} is not present")
            if m.k is None or m.k < 0:
                return VerifyReport(False, i, f"deletion level must be >= 0, got {m.k}")
            if popcount(st.present) == 1:
                return VerifyReport(False, i, "cannot delete the last vertex")
            nb = st.nbrs(x)
            if not nb:
                return VerifyReport(False, i, f"vertex {x} has an empty neighbourhood")
            verdict = _decide(st.graph_on(nb), m.k - 1, budget)
            if verdict != "yes":
                return VerifyReport(False, i, f"N({x}) is not in D_{m.k - 1} ({verdict})")
            st.present &= ~(1 << x)
        elif m.op == "add":
            y = m.v
            if y < 0 or (y in st.adj and st.present >> y & 1):
                return VerifyReport(False, i, f"vertex {y} is already present")
            nb = 0
            for u in m.nbrs or ():
                if u < 0 or not st.present >> u & 1:
                    return VerifyReport(False, i, f"declared neighbour {u} is not present")
                nb |= 1 << u
            if m.k is None or m.k < 0:
                return VerifyReport(False, i, f"addition level must be >= 0, got {m.k}")
            if not nb:
                return VerifyReport(False, i, "an added vertex needs a nonempty neighbourhood")
            verdict = _decide(st.graph_on(nb), m.k - 1, budget)
            if verdict != "yes":
                return VerifyReport(False, i, f"declared neighbourhood of {y} is not in D_{m.k - 1} ({verdict})")
            st.adj[y] = nb
            for u in bits(nb):
                st.adj[u] |= 1 << y
            st.present |= 1 << y
        elif m.op == "delete_edge":
            a, b = m.u, m.v
            if a is None or a < 0 or b < 0 or not (st.present >> a & 1 and st.present >> b & 1):
                return VerifyReport(False, i, f"edge endpoint {a} or {b} is not present")
            if not st.adj[a] >> b & 1:
                return VerifyReport(False, i, f"{{{a}, {b}}} is not an edge")
            common = st.nbrs(a) & st.nbrs(b)
            if not common:
                return VerifyReport(False, i, f"edge {{{a}, {b}}} has no common neighbours")
            verdict = _decide(st.graph_on(common), 0, budget)
            if verdict != "yes":
                return VerifyReport(False, i, f"N({a}) & N({b}) is not in D_0 ({verdict})")
            st.adj[a] &= ~(1 << b)
            st.adj[b] &= ~(1 << a)
        else:  # pragma: no cover - Move.from_json rejects unknown ops
            return VerifyReport(False, i, f"unknown op {m.op!r}")
    final = tuple(bits(st.present))
    if cert.final == "point":
        if len(final) != 1:
            return VerifyReport(False, None, f"replay ends with {len(final)} vertices, not a point", final)
    elif tuple(sorted(cert.final)) != final:
        return VerifyReport(False, None, "replay does not end at the declared vertex set", final)
    return VerifyReport(True, None, "", final)


def replay(g: Graph, moves: Sequence[Move]) -> ReplayState:
    """Apply moves without checking side conditions."""
    st = ReplayState(g)
    for m in moves:
        if m.op == "delete":
            st.present &= ~(1 << m.v)
        elif m.op == "add":
            nb = 0
            for u in m.nbrs or ():
                nb |= 1 << u
            st.adj[m.v] = nb
            for u in m.nbrs or ():
                st.adj[u] |= 1 << m.v
            st.present |= 1 << m.v
        else:
            assert m.u is not None
            st.adj[m.u] &= ~(1 << m.v)
            st.adj[m.v] &= ~(1 << m.u)
    return st
