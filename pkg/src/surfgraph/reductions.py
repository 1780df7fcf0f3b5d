"""Reductions: crossing number and planar vertex/edge deletion.

All three ride on the orientable-genus pipeline: the optimum of each
problem bounds the orientable genus, so a sound rejection there
transfers.  The crossing-number drawing then cuts the surface down to
the plane along short nonseparating nooses and re-inserts the affected
edges along shortest dual paths, one crossing vertex per intersection.
"""

from __future__ import annotations

from typing import Iterable, Optional

from surfgraph.embeddings import (
    EmbeddingError,
    RotationEmbedding,
    embedding_to_payload,
    euler_genus_of,
    insert_edge_planar,
    is_orientable,
    restrict_embedding,
)
from surfgraph.graphs import Graph, edge_key
from surfgraph.nooses import shortest_noncontractible_noose
from surfgraph.pipeline import DEFAULT_CONFIG, GenusCertificate, PipelineConfig, draw_orientable
from surfgraph.planarity import is_planar, planar_embedding
from surfgraph.rejection import Rejected, representativity_evidence


class CrossingDrawing:
    """A planarized drawing: crossing vertices of degree 4 plus provenance."""

    __slots__ = ("original", "embedding", "crossings", "provenance", "config")

    def __init__(self, original, embedding, crossings, provenance, config):
        self.original = original
        self.embedding = embedding
        self.crossings = crossings
        self.provenance = provenance  # crossing vertex -> (edge, edge)
        self.config = config

    def smooth(self) -> Graph:
        """Undo all crossing vertices; must reconstruct the original graph."""
        g = self.embedding.graph
        adj = {v: set(g.neighbors(v)) for v in g.vertices}
        for w in sorted(self.provenance, reverse=True):
            e1, e2 = self.provenance[w]
            nbrs = sorted(adj[w])
            if len(nbrs) != 4:
                raise ValueError(f"crossing vertex {w} does not have degree 4")
            # partner the four ends by their originating edges
            groups: dict[tuple, list[int]] = {}
            for x in nbrs:
                key = self._origin(x, w)
                groups.setdefault(key, []).append(x)
            if len(groups) != 2 or any(len(v) != 2 for v in groups.values()):
                raise ValueError(f"crossing vertex {w} pairs inconsistently")
            for pair in groups.values():
                a, b = pair
                adj[a].add(b)
                adj[b].add(a)
            for x in nbrs:
                adj[x].discard(w)
            del adj[w]
        return Graph(adj, ((u, v) for u in adj for v in adj[u] if u < v))

    def _origin(self, x: int, w: int) -> tuple:
        # which original edge does the piece (x, w) belong to
        e1, e2 = self.provenance[w]
        for e in (e1, e2):
            if x in e:
                return e
        # x is itself a crossing vertex on one of the two edges
        if x in self.provenance:
            f1, f2 = self.provenance[x]
            for e in (e1, e2):
                if e in (f1, f2):
                    return e
        raise ValueError(f"cannot attribute end {x} at crossing {w}")

    def validate(self) -> bool:
        try:
            if euler_genus_of(self.embedding) != 0:
                return False
            for w, (e1, e2) in self.provenance.items():
                if e1 == e2:
                    return False
                if self.embedding.graph.degree(w) != 4:
                    return False
            return self.smooth() == self.original
        except (ValueError, EmbeddingError):
            return False

    def to_payload(self) -> dict:
        return {
            "kind": "crossing-drawing",
            "crossings": self.crossings,
            "original_edges": [list(e) for e in self.original.edges],
            "original_vertices": list(self.original.vertices),
            "provenance": {
                str(w): [list(e1), list(e2)]
                for w, (e1, e2) in sorted(self.provenance.items())
            },
            "embedding": embedding_to_payload(self.embedding),
            "config": self.config,
        }


class PlanarizationResult:
    """A deleted vertex or edge set with a planar witness embedding."""

    __slots__ = ("kind", "deleted", "witness", "config")

    def __init__(self, kind, deleted, witness, config):
        self.kind = kind  # "vertices" or "edges"
        self.deleted = sorted(deleted)
        self.witness = witness
        self.config = config

    def validate(self, g: Graph) -> bool:
        try:
            if self.kind == "vertices":
                rest = g.remove_vertices(self.deleted)
            else:
                rest = g.remove_edges(tuple(e) for e in self.deleted)
            return self.witness.graph == rest and euler_genus_of(self.witness) == 0
        except (ValueError, EmbeddingError):
            return False

    def to_payload(self) -> dict:
        return {
            "kind": f"planarization-{self.kind}",
            "deleted": [list(e) if isinstance(e, tuple) else e for e in self.deleted],
            "witness": embedding_to_payload(self.witness),
            "config": self.config,
        }


def _cut_to_plane(
    g: Graph,
    emb: RotationEmbedding,
    threshold: int,
    evidence_kind: str,
    budget: int,
    floor: int = 0,
) -> tuple[list[int], RotationEmbedding]:
    """Cut along shortest nonseparating nooses until the graph is planar.

    Rejects when the shortest noose found is longer than the threshold
    (and the floor).  When no nonseparating noose exists on a nonplanar
    component, any noncontractible noose is used instead.
    """
    removed: list[int] = []
    cur = emb
    while not is_planar(cur.graph):
        target = None
        for comp in cur.graph.components():
            sub = restrict_embedding(cur, set(cur.graph.vertices) - set(comp))
            if is_planar(sub.graph):
                continue
            if euler_genus_of(sub) == 0:
                # planar surface but nonplanar graph cannot happen; guard
                raise EmbeddingError("nonplanar graph traced to the sphere")
            noose = shortest_noncontractible_noose(sub, "nonseparating")
            if noose is None:
                noose = shortest_noncontractible_noose(sub, "any")
            if noose is not None:
                target = noose
                break
        if target is None:
            raise EmbeddingError("no noose found on a nonplanar embedding")
        if target.length > max(threshold, floor):
            raise Rejected(
                representativity_evidence(
                    evidence_kind, target.length, max(threshold, floor), budget,
                    target.vertices,
                )
            )
        removed.extend(target.vertices)
        cur = restrict_embedding(cur, set(target.vertices))
    return removed, cur


def crossing_number_drawing(
    g: Graph, k: int, cfg: Optional[PipelineConfig] = None
):
    """A plane drawing with explicit crossings, or a sound rejection.

    Orientable drawing at genus budget k (the genus is at most the
    crossing number), cuts to the plane along short nonseparating
    nooses, takes an inclusion-minimal subset of the affected edges
    whose removal leaves the graph planar, and re-inserts those edges
    along shortest dual paths.
    """
    cfg = cfg or DEFAULT_CONFIG
    if is_planar(g):
        emb = planar_embedding(g)
        return CrossingDrawing(g, emb, 0, {}, cfg.to_payload())
    base = draw_orientable(g, k, cfg)
    if base.verdict == "rejected":
        return GenusCertificate.rejected(base.evidence, cfg)
    try:
        removed, _ = _cut_to_plane(
            g,
            base.embedding,
            cfg.crossing_alpha * k,
            "crossing_number",
            k,
            cfg.crossing_floor,
        )
    except Rejected as r:
        return GenusCertificate.rejected(r.evidence, cfg)
    xset = set(removed)
    estar = sorted(
        e for e in g.edges if e[0] in xset or e[1] in xset
    )
    # inclusion-minimal E' within E*: return edges while planarity holds
    eprime = list(estar)
    for e in list(estar):
        cand = [x for x in eprime if x != e]
        if is_planar(g.remove_edges(cand)):
            eprime = cand
    rest = g.remove_edges(eprime)
    if g.is_connected() and not rest.is_connected():
        raise EmbeddingError("minimal planarizing edge set disconnected the graph")
    emb = planar_embedding(rest)
    # re-insert, cheapest dual distance first, recomputing after each insertion
    provenance: dict[int, tuple] = {}
    piece_origin: dict[tuple[int, int], tuple[int, int]] = {}
    crossings = 0
    pending = list(eprime)
    while pending:
        ranked = []
        for e in pending:
            try:
                _, cost, _ = insert_edge_planar(emb, *e)
            except EmbeddingError:
                cost = len(emb.graph.edges) + 1
            ranked.append((cost, e))
        ranked.sort()
        _, e = ranked[0]
        pending.remove(e)
        emb, cost, trail = insert_edge_planar(emb, *e)
        crossings += cost
        for (w, crossed) in trail:
            orig = piece_origin.get(crossed, crossed)
            provenance[w] = (orig, e)
            piece_origin[edge_key(crossed[0], w)] = orig
            piece_origin[edge_key(w, crossed[1])] = orig
        # pieces of the inserted edge inherit its identity
        chain = [v for (v, _) in trail]
        for a, b in zip([e[0]] + chain, chain + [e[1]]):
            piece_origin[edge_key(a, b)] = e
    drawing = CrossingDrawing(g, emb, crossings, provenance, cfg.to_payload())
    if not drawing.validate():
        raise EmbeddingError("crossing drawing failed validation")
    return drawing


def vertex_planarization(
    g: Graph, k: int, cfg: Optional[PipelineConfig] = None
):
    """A vertex set whose removal leaves the graph planar, or a rejection.

    Orientable drawing at genus budget max_degree * k (each deleted
    vertex absorbs at most max_degree handles), then cutting with the
    exact threshold (2 * max_degree + 1) * k + 2.
    """
    cfg = cfg or DEFAULT_CONFIG
    if is_planar(g):
        return PlanarizationResult("vertices", [], planar_embedding(g), cfg.to_payload())
    delta = g.max_degree()
    base = draw_orientable(g, delta * k, cfg)
    if base.verdict == "rejected":
        return GenusCertificate.rejected(base.evidence, cfg)
    threshold = (2 * delta + 1) * k + 2
    try:
        removed, _ = _cut_to_plane(
            g, base.embedding, threshold, "vertex_planarization", k
        )
    except Rejected as r:
        return GenusCertificate.rejected(r.evidence, cfg)
    rest = g.remove_vertices(removed)
    result = PlanarizationResult(
        "vertices", removed, planar_embedding(rest), cfg.to_payload()
    )
    if not result.validate(g):
        raise EmbeddingError("vertex planarization failed validation")
    return result


def edge_planarization(
    g: Graph, k: int, cfg: Optional[PipelineConfig] = None
):
    """An edge set whose removal leaves the graph planar, or a rejection.

    The vertex construction at the same budget, converted to the
    incident edges and greedily pruned.
    """
    cfg = cfg or DEFAULT_CONFIG
    if is_planar(g):
        return PlanarizationResult("edges", [], planar_embedding(g), cfg.to_payload())
    base = vertex_planarization(g, k, cfg)
    if isinstance(base, GenusCertificate):
        return base
    xset = set(base.deleted)
    y = sorted(e for e in g.edges if e[0] in xset or e[1] in xset)
    for e in list(y):
        cand = [x for x in y if x != e]
        if is_planar(g.remove_edges(cand)):
            y = cand
    rest = g.remove_edges(y)
    result = PlanarizationResult("edges", y, planar_embedding(rest), cfg.to_payload())
    if not result.validate(g):
        raise EmbeddingError("edge planarization failed validation")
    return result
