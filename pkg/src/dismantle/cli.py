"""Command-line front end.

Exit codes: 0 decided / valid, 1 negative / invalid, 2 budget exhausted,
3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Any

from .certificates import Certificate, CertificateError, verify_move_sequence
from .cliques import CliqueReport
from .engine import (
    DismantleResult,
    Status,
    is_k_dismantlable,
    is_non_evasive,
    min_dismantling_index,
    stiff_core,
    ws_dismantlable,
)
from .generators import FAMILIES, FamilySpec, generate, read_graph, write_graph
from .graph import Graph
from .oracles import evasiveness_game_depth
from .suite import DEFAULT_BUDGET, format_rows, rows_json, run_suite, suite_ok
from .transitivity import automorphisms, is_i_complete_transitive, is_vertex_transitive

EXIT_OK, EXIT_NO, EXIT_INDETERMINATE, EXIT_USAGE = 0, 1, 2, 3
REPORT_VERSION = "report_v1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which here means "indeterminate"
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_graph(source: str) -> Graph:
    """A file path, or a family spec such as ``cubion:3``."""
    if os.path.exists(source):
        return read_graph(Path(source))
    spec = FamilySpec.parse(source)
    if spec.family in FAMILIES:
        return generate(spec)
    raise UsageError(f"{source!r} is neither a file nor a family spec ({', '.join(FAMILIES)})")


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _level(text: str) -> int:
    v = int(text)
    if v < -1:
        raise argparse.ArgumentTypeError("k must be >= -1")
    return v


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    if args.json:
        if getattr(args, "deterministic", False):
            _strip_timing(payload)
        print(json.dumps({"version": REPORT_VERSION, "command": args.command} | payload, indent=1, sort_keys=True))
    else:
        print(text)


def _strip_timing(obj: Any) -> None:
    if isinstance(obj, dict):
        obj.pop("elapsed", None)
        obj.pop("seconds", None)
        for v in obj.values():
            _strip_timing(v)
    elif isinstance(obj, list):
        for v in obj:
            _strip_timing(v)


def _status_code(status: Status) -> int:
    return {Status.YES: EXIT_OK, Status.NO: EXIT_NO, Status.INDETERMINATE: EXIT_INDETERMINATE}[status]


def _save_cert(args: argparse.Namespace, cert: Certificate | None) -> None:
    if args.cert_out and cert is not None:
        Path(args.cert_out).write_text(cert.dumps() + "\n")


# -- commands -----------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    g = generate(FamilySpec.parse(args.spec))
    text = write_graph(g, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_decide(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.min_k:
        res = min_dismantling_index(g, args.budget)
        _save_cert(args, res.certificate)
        text = {
            Status.YES: f"min index: {res.index}",
            Status.NO: "not in D_inf",
            Status.INDETERMINATE: "indeterminate (budget exhausted)",
        }[res.status]
        _emit(args, res.to_json(), f"{text}  [{res.stats.nodes} nodes]")
        return _status_code(res.status)
    result: DismantleResult
    if args.non_evasive:
        result, what = is_non_evasive(g, args.budget), "non-evasive"
    elif args.ws:
        result, what = ws_dismantlable(g, args.budget), "ws-dismantlable"
    else:
        result, what = is_k_dismantlable(g, args.k, args.budget), f"in D_{args.k}"
    _save_cert(args, result.certificate)
    _emit(args, result.to_json(), f"{what}: {result.status.value}  [{result.stats.nodes} nodes]")
    return _status_code(result.status)


def cmd_certify(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    cert = Certificate.loads(Path(args.cert).read_text())
    rep = verify_move_sequence(g, cert, args.budget)
    payload = {"valid": rep.valid, "failed_move": rep.failed_move, "reason": rep.reason, "final_vertices": list(rep.final_vertices)}
    if rep.valid:
        text = f"valid: {len(cert.moves)} moves replayed"
    else:
        where = f"move {rep.failed_move}" if rep.failed_move is not None else "certificate"
        text = f"invalid at {where}: {rep.reason}"
    _emit(args, payload, text)
    if not rep.valid and "undecided" in rep.reason:
        return EXIT_INDETERMINATE
    return EXIT_OK if rep.valid else EXIT_NO


def cmd_stiff(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    rng = random.Random(args.seed) if args.seed is not None else None
    core, cert = stiff_core(g, args.k, rng)
    _save_cert(args, cert)
    kept = list(cert.final) if cert.final != "point" else [v for v in range(g.n) if v not in set(cert.deleted())]
    payload = {"k": args.k, "core_vertices": kept, "core_edges": core.num_edges(), "certificate": cert.to_json()}
    names = " ".join(g.label(v) for v in kept)
    _emit(args, payload, f"{args.k}-stiff core: {core.n} vertices, {core.num_edges()} edges: {names}")
    return EXIT_OK


def cmd_cliques(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    rep = CliqueReport.of(g)
    star = "none" if rep.star_cluster is None else " ".join(g.label(v) for v in rep.star_cluster)
    lines = [f"omega: {rep.omega}", f"maximal cliques: {len(rep.cliques)}", f"star-cluster clique: {star}"]
    lines += ["  " + " ".join(g.label(v) for v in k) for k in rep.cliques]
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_aut(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    aut = automorphisms(g)
    vt = is_vertex_transitive(g, aut)
    payload: dict[str, Any] = {
        "order": aut.order,
        "generators": [list(p) for p in aut.generators],
        "orbits": [sorted(o) for o in aut.vertex_orbits()],
        "vertex_transitive": vt,
    }
    text = f"|Aut| = {aut.order}, {len(payload['orbits'])} vertex orbit(s), vertex-transitive: {vt}"
    code = EXIT_OK
    if args.i is not None:
        ct = is_i_complete_transitive(g, args.i, aut)
        payload["i"] = args.i
        payload["i_complete_transitive"] = ct
        text += f"\n{args.i}-complete-transitive: {ct}"
        code = EXIT_OK if ct else EXIT_NO
    _emit(args, payload, text)
    return code


def cmd_game(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    d = evasiveness_game_depth(g)
    evasive = d == g.n
    _emit(args, {"depth": d, "n": g.n, "evasive": evasive}, f"game depth {d} of {g.n} ({'evasive' if evasive else 'non-evasive'})")
    return EXIT_OK


def cmd_paper_suite(args: argparse.Namespace) -> int:
    rows = run_suite(args.budget, args.extended)
    if args.json:
        text = rows_json(rows)
        if args.deterministic:
            data = json.loads(text)
            _strip_timing(data)
            text = json.dumps(data, indent=1)
        print(text)
    else:
        print(format_rows(rows))
    return EXIT_OK if suite_ok(rows) else EXIT_NO


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="node-expansion budget")
    common.add_argument("--threads", type=_positive, default=1, help="accepted for compatibility; search is single-threaded")
    common.add_argument("--deterministic", action="store_true", help="omit timings so output is byte-identical")

    p = _Parser(prog="dismantle", description="Exact k-dismantlability decisions and certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="write a named graph")
    s.add_argument("spec", help="family spec, e.g. cubion:3, kneser:5,2, parasol")
    s.add_argument("-o", "--out")
    s.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("decide", parents=[common], help="decide D_k, the minimal index, non-evasiveness or ws")
    s.add_argument("graph", help="edge-list file or family spec")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--k", type=_level)
    mode.add_argument("--min-k", action="store_true")
    mode.add_argument("--non-evasive", action="store_true")
    mode.add_argument("--ws", action="store_true", help="vertex and edge 1-deletions")
    s.add_argument("--cert-out", help="write the certificate here on success")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("certify", parents=[common], help="replay and check a certificate")
    s.add_argument("graph")
    s.add_argument("cert")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("stiff", parents=[common], help="greedy k-stiff core")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, help="random deletion order instead of smallest-first")
    s.add_argument("--cert-out")
    s.set_defaults(func=cmd_stiff)

    s = sub.add_parser("cliques", parents=[common], help="maximal cliques, omega, star-cluster clique")
    s.add_argument("graph")
    s.set_defaults(func=cmd_cliques)

    s = sub.add_parser("aut", parents=[common], help="automorphism group and transitivity")
    s.add_argument("graph")
    s.add_argument("--i", type=_positive, help="also test i-complete-transitivity")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("game", parents=[common], help="optimal depth of the clique query game")
    s.add_argument("graph")
    s.set_defaults(func=cmd_game)

    s = sub.add_parser("paper-suite", parents=[common], help="run the reproduction checks")
    s.add_argument("--extended", action="store_true", help="add the Q_4 and Bing's House rows")
    s.set_defaults(func=cmd_paper_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, CertificateError, OSError, json.JSONDecodeError) as exc:
        print(f"dismantle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
