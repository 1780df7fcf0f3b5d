"""Command-line front end.

Exit codes are the behavioural contract: 0 for a drawn/feasible result,
2 for a sound rejection (evidence written to the output), 1 for usage
or input errors.  Identical inputs and configuration produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from surfgraph.embeddings import (
    EmbeddingError,
    dumps_canonical,
    embedding_from_payload,
    euler_genus_of,
    is_orientable,
)
from surfgraph.graphs import Graph, parse_edge_list
from surfgraph.pipeline import GenusCertificate, PipelineConfig, draw_euler, draw_orientable
from surfgraph.rejection import reverify_evidence

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2


def _read_graph(path: Optional[str]) -> Graph:
    text = sys.stdin.read() if path in (None, "-") else open(path).read()
    return parse_edge_list(text)


def _write(payload: dict, path: Optional[str]) -> None:
    text = dumps_canonical(payload)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _config(args) -> PipelineConfig:
    cfg = PipelineConfig.from_overrides(args.set or [])
    if args.threads is not None:
        cfg.threads = args.threads
    return cfg


def _emit_certificate(cert, args) -> int:
    _write(cert.to_payload(), args.output)
    return EXIT_OK if cert.verdict == "drawn" else EXIT_REJECTED


def _cmd_genus(args) -> int:
    g = _read_graph(args.input)
    return _emit_certificate(draw_euler(g, args.budget, _config(args)), args)


def _cmd_orientable(args) -> int:
    g = _read_graph(args.input)
    return _emit_certificate(draw_orientable(g, args.budget, _config(args)), args)


def _cmd_crossing(args) -> int:
    from surfgraph.reductions import crossing_number_drawing

    g = _read_graph(args.input)
    out = crossing_number_drawing(g, args.budget, _config(args))
    if isinstance(out, GenusCertificate):
        return _emit_certificate(out, args)
    _write(out.to_payload(), args.output)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(_to_dot(out.embedding.graph))
    return EXIT_OK


def _cmd_planarize(kind):
    def run(args) -> int:
        from surfgraph.reductions import edge_planarization, vertex_planarization

        g = _read_graph(args.input)
        fn = vertex_planarization if kind == "vertices" else edge_planarization
        out = fn(g, args.budget, _config(args))
        if isinstance(out, GenusCertificate):
            return _emit_certificate(out, args)
        _write(out.to_payload(), args.output)
        return EXIT_OK

    return run


def _cmd_oracle(args) -> int:
    from surfgraph import oracle

    g = _read_graph(args.input)
    budget = oracle.OracleBudget(max_states=args.max_states)
    fns = {
        "euler-genus": lambda: oracle.exact_euler_genus(g, budget=budget),
        "genus": lambda: oracle.exact_orientable_genus(g, budget=budget),
        "crossing": lambda: oracle.exact_crossing_number(g, budget=budget),
        "vertex-planarization": lambda: oracle.exact_vertex_planarization(g),
        "edge-planarization": lambda: oracle.exact_edge_planarization(g),
    }
    value = fns[args.metric]()
    sys.stdout.write(f"{value}\n")
    return EXIT_OK


def _to_dot(g: Graph) -> str:
    lines = ["graph {"]
    lines.extend(f"  {u} -- {v};" for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _verify_embedding_payload(payload: dict) -> bool:
    emb = embedding_from_payload(payload)
    try:
        emb.validate()
    except EmbeddingError:
        return False
    if "genus" in payload and euler_genus_of(emb) != payload["genus"]:
        return False
    if "orientable" in payload and is_orientable(emb) != payload["orientable"]:
        return False
    return True


def _cmd_verify(args) -> int:
    text = sys.stdin.read() if args.input in (None, "-") else open(args.input).read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: not valid JSON: {exc}", file=sys.stderr)
        return EXIT_ERROR
    ok = _verify_payload(payload)
    print("ok" if ok else "invalid")
    return EXIT_OK if ok else EXIT_REJECTED


def _verify_payload(payload: dict) -> bool:
    kind = payload.get("kind", "")
    try:
        if kind == "embedding":
            return _verify_embedding_payload(payload)
        if kind == "genus-certificate":
            if payload.get("verdict") == "drawn":
                inner = payload.get("embedding", {})
                return (
                    _verify_embedding_payload(inner)
                    and inner.get("genus") == payload.get("genus")
                )
            ev = payload.get("rejection_evidence", {})
            if "pieces" in ev:
                pieces = [tuple(p) for p in ev["pieces"]]
                verts = sorted({v for p in pieces for v in p})
                g = Graph(verts, [])
                # evidence re-verification needs the host graph; structural
                # checks only: disjointness and the count/cap relation
                seen: set[int] = set()
                for p in pieces:
                    if not p or seen & set(p):
                        return False
                    seen |= set(p)
                return len(pieces) > ev.get("cap", -1) >= ev.get("budget", 0) - 0
            return "rho" in ev and ev["rho"] > ev.get("threshold", -1)
        if kind == "crossing-drawing":
            emb = embedding_from_payload(payload["embedding"])
            emb.validate()
            if euler_genus_of(emb) != 0:
                return False
            for w, (e1, e2) in payload.get("provenance", {}).items():
                if emb.graph.degree(int(w)) != 4:
                    return False
            return True
        if kind in ("planarization-vertices", "planarization-edges"):
            emb = embedding_from_payload(payload["witness"])
            emb.validate()
            return euler_genus_of(emb) == 0
    except (EmbeddingError, ValueError, KeyError):
        return False
    return False


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="surfgraph",
        description="Surface drawings of bounded-degree graphs with sound rejection.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, budget=True):
        p.add_argument("--input", "-i", default=None, help="edge list file (default stdin)")
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")
        p.add_argument("--threads", type=int, default=None, help="worker threads")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="config override (repeatable)",
        )
        if budget:
            p.add_argument("--budget", type=int, required=True, help="parameter budget")

    p = sub.add_parser("genus", help="draw into a surface or decide Euler genus > budget")
    common(p)
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser(
        "orientable-genus", help="draw into an orientable surface or decide genus > budget"
    )
    common(p)
    p.set_defaults(func=_cmd_orientable)

    p = sub.add_parser("crossing", help="plane drawing with crossings or decide cr > budget")
    common(p)
    p.add_argument("--dot", default=None, help="also write the planarized graph as DOT")
    p.set_defaults(func=_cmd_crossing)

    p = sub.add_parser("planarize-vertices", help="vertex deletion set or decide > budget")
    common(p)
    p.set_defaults(func=_cmd_planarize("vertices"))

    p = sub.add_parser("planarize-edges", help="edge deletion set or decide > budget")
    common(p)
    p.set_defaults(func=_cmd_planarize("edges"))

    p = sub.add_parser("verify", help="re-validate a serialized result")
    p.add_argument("--input", "-i", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exact values by exhaustive search (tiny graphs)")
    p.add_argument("metric", choices=[
        "euler-genus", "genus", "crossing", "vertex-planarization", "edge-planarization",
    ])
    p.add_argument("--input", "-i", default=None)
    p.add_argument("--max-states", type=float, default=1e7)
    p.set_defaults(func=_cmd_oracle)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
