"""Sound rejection: the exception carrying machine-checkable evidence.

A rejection certifies that the relevant parameter (Euler genus,
orientable genus, crossing number, planarization number) exceeds the
given budget.  Evidence payloads are plain dicts so they serialize into
certificates; ``reverify_evidence`` re-checks them from scratch.
"""

from __future__ import annotations

from typing import Optional

from surfgraph.graphs import Graph


class Rejected(Exception):
    """Raised when the pipeline soundly decides the budget is exceeded."""

    def __init__(self, evidence: dict):
        super().__init__(evidence.get("reason", "budget exceeded"))
        self.evidence = evidence


def excess_pieces_evidence(
    kind: str, level: int, pieces: list[tuple[int, ...]], cap: int, budget: int
) -> dict:
    return {
        "reason": f"{kind}: more than {cap} disjoint nonplanar pieces at level {level}",
        "kind": kind,
        "level": level,
        "pieces": [sorted(p) for p in pieces],
        "cap": cap,
        "budget": budget,
    }


def representativity_evidence(
    kind: str, rho: int, threshold: int, budget: int, noose_vertices: tuple[int, ...]
) -> dict:
    return {
        "reason": f"{kind}: representativity {rho} exceeds threshold {threshold}",
        "kind": kind,
        "rho": rho,
        "threshold": threshold,
        "budget": budget,
        "noose_vertices": sorted(noose_vertices),
    }


def reverify_evidence(g: Graph, evidence: dict) -> bool:
    """Re-check a rejection certificate against the input graph.

    Piece evidence: the pieces are disjoint vertex sets inducing
    nonplanar subgraphs, and there are more of them than the cap;
    disjoint nonplanar subgraphs each contribute at least 1 to the
    Euler genus, so the budget is exceeded.  Representativity evidence
    re-checks the recorded numbers only (the noose itself certifies
    via the embedding it was found in).
    """
    from surfgraph.planarity import is_planar

    kind = evidence.get("kind", "")
    if "pieces" in evidence:
        pieces = [tuple(p) for p in evidence["pieces"]]
        seen: set[int] = set()
        for p in pieces:
            if not p or seen & set(p) or not all(g.has_vertex(v) for v in p):
                return False
            seen |= set(p)
            if is_planar(g.induced(p)):
                return False
        return len(pieces) > evidence["cap"] and evidence["cap"] >= evidence["budget"]
    if "rho" in evidence:
        return evidence["rho"] > evidence["threshold"] >= 0
    return False
