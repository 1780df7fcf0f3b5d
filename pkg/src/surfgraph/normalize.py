"""Free subgraphs (petals and clumps) and graph normalization.

A vertex-induced subgraph is free when at most two of its vertices (the
portals) have outside neighbours, it is not a bare portal-to-portal
path, and it can be drawn in a disk with the portals on the boundary.
Free pieces can flip in any drawing, so the pipeline removes them up
front: petals are deleted outright, clumps are replaced by an edge
between the portals.  The replay log stores a disk drawing of every
removed piece, which is enough to reinstate it into any embedding of
the normalized graph without changing the surface.
"""

from __future__ import annotations

from typing import Optional

from surfgraph.embeddings import (
    EmbeddingError,
    RotationEmbedding,
    euler_genus_of,
    face_corners,
    euler_genus_of as _genus,
)
from surfgraph.graphs import Graph, edge_key
from surfgraph.planarity import embed_with_shared_face, is_planar


def _is_portal_path(h: Graph, portals: tuple[int, int]) -> bool:
    """True when h is exactly a path whose endpoints are the portals."""
    if h.num_edges() != h.num_vertices() - 1 or not h.is_connected():
        return False
    t1, t2 = portals
    for v in h.vertices:
        want = 1 if v in (t1, t2) else 2
        if h.degree(v) != want:
            return False
    return True


def _candidate(
    comp: Graph, separator: tuple[int, ...], outside: tuple[int, ...]
) -> Optional[tuple[frozenset[int], tuple[int, ...]]]:
    """Check one (separator, outside component) choice for freedom."""
    hverts = frozenset(set(comp.vertices) - set(outside))
    out = set(outside)
    portals = tuple(
        sorted(
            t
            for t in separator
            if any(w in out for w in comp.neighbors(t))
        )
    )
    if not portals or len(portals) > 2:
        return None
    h = comp.induced(hverts)
    if len(portals) == 2:
        if _is_portal_path(h, portals):  # condition (2) before the planarity test
            return None
        test = h if h.has_edge(*portals) else h.add_edges([portals])
        if not is_planar(test):
            return None
    else:
        if not is_planar(h):
            return None
    if len(hverts) <= len(portals):
        return None
    return hverts, portals


def find_free_subgraph(g: Graph) -> Optional[tuple[frozenset[int], tuple[int, ...]]]:
    """A free vertex-induced subgraph with its portals, or None if normalized.

    Candidate portal sets are the articulation points and separation
    pairs of each component; for each, every choice of an outside
    component is tried, largest outside first (so the returned piece is
    as local as possible).  Returns None iff the graph has no free
    subgraph.
    """
    for comp_vertices in g.components():
        if len(comp_vertices) < 2:
            continue
        comp = g.induced(comp_vertices)
        for t in comp.articulation_points():
            rest = comp.remove_vertices([t])
            comps = sorted(rest.components(), key=lambda c: (-len(c), c))
            for outside in comps:
                found = _candidate(comp, (t,), outside)
                if found is not None:
                    return found
        for pair in comp.separation_pairs():
            rest = comp.remove_vertices(pair)
            comps = sorted(rest.components(), key=lambda c: (-len(c), c))
            for outside in comps:
                found = _candidate(comp, pair, outside)
                if found is not None:
                    return found
    return None


class ReplayStep:
    """One normalization step, with the disk drawing needed to undo it."""

    __slots__ = ("piece", "portals", "edge_added", "drawing", "face_index")

    def __init__(self, piece: Graph, portals: tuple[int, ...], edge_added: bool,
                 drawing: RotationEmbedding, face_index: int):
        self.piece = piece
        self.portals = portals
        self.edge_added = edge_added
        self.drawing = drawing
        self.face_index = face_index

    @property
    def is_petal(self) -> bool:
        return len(self.portals) == 1


class ReplayLog:
    __slots__ = ("steps",)

    def __init__(self, steps: list[ReplayStep]):
        self.steps = list(steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __bool__(self) -> bool:
        return bool(self.steps)


def normalize(g: Graph) -> tuple[Graph, ReplayLog]:
    """Remove free subgraphs until none remain.

    Petal steps delete the piece keeping the portal; clump steps delete
    the piece and add the portal edge unless already present.  The
    maximum degree never increases, and the Euler genus is preserved
    (drawings transfer both ways through the replay log).
    """
    steps: list[ReplayStep] = []
    cur = g
    while True:
        found = find_free_subgraph(cur)
        if found is None:
            return cur, ReplayLog(steps)
        hverts, portals = found
        piece = cur.induced(hverts)
        drawing, face_index = embed_with_shared_face(piece, list(portals))
        interior = hverts - set(portals)
        if len(portals) == 1:
            cur = cur.remove_vertices(interior)
            steps.append(ReplayStep(piece, portals, False, drawing, face_index))
        else:
            edge_added = not cur.has_edge(*portals)
            cur = cur.remove_vertices(interior)
            if edge_added:
                cur = cur.add_edges([portals])
            steps.append(ReplayStep(piece, portals, edge_added, drawing, face_index))


def _linearized_rotation(step: ReplayStep, v: int) -> tuple[int, ...]:
    """The piece rotation of v cut open at its disk-boundary corner."""
    rot = step.drawing.rotation[v]
    if len(rot) <= 1:
        return rot
    corners = face_corners(step.drawing)[step.face_index]
    for (x, j) in corners:
        if x == v:
            return rot[j + 1 :] + rot[: j + 1]
    return rot


def _splice(rot: tuple[int, ...], anchor_pos: int, block: tuple[int, ...], before: bool):
    if before:
        return rot[:anchor_pos] + block + rot[anchor_pos:]
    return rot[: anchor_pos + 1] + block + rot[anchor_pos + 1 :]


def _reinstate_petal(e: RotationEmbedding, step: ReplayStep) -> RotationEmbedding:
    t = step.portals[0]
    base = euler_genus_of(e)
    block = _linearized_rotation(step, t)
    g2 = Graph(
        list(e.graph.vertices) + [v for v in step.piece.vertices if v != t],
        list(e.graph.edges) + list(step.piece.edges),
    )
    sgn = dict(e.sign)
    for ek in step.piece.edges:
        sgn.setdefault(ek, step.drawing.sign[ek])
    host_rot = e.rotation[t]
    positions = range(len(host_rot)) if host_rot else [0]
    for pos in positions:
        for blk in (block, block[::-1]):
            rot = dict(e.rotation)
            for v in step.piece.vertices:
                if v != t:
                    rot[v] = step.drawing.rotation[v]
            if host_rot:
                rot[t] = _splice(host_rot, pos, blk, before=False)
            else:
                rot[t] = blk
            cand = RotationEmbedding(g2, rot, sgn)
            try:
                if euler_genus_of(cand) == base:
                    return cand
            except EmbeddingError:
                continue
    raise EmbeddingError("petal reinstatement failed to keep the genus")


def _reinstate_clump(e: RotationEmbedding, step: ReplayStep) -> RotationEmbedding:
    t1, t2 = step.portals
    ek = edge_key(t1, t2)
    if ek not in e.sign:
        raise EmbeddingError("clump replay edge missing from the embedding")
    # gauge: make the portal edge signature positive by flipping t2
    if e.sign[ek] == -1:
        rot = dict(e.rotation)
        rot[t2] = rot[t2][::-1]
        sgn = dict(e.sign)
        for w in e.graph.neighbors(t2):
            sgn[edge_key(t2, w)] = -sgn[edge_key(t2, w)]
        e = RotationEmbedding(e.graph, rot, sgn)
    base = euler_genus_of(e)
    interior = [v for v in step.piece.vertices if v not in step.portals]
    piece_edges = [x for x in step.piece.edges if x != ek]
    g2 = Graph(
        list(e.graph.vertices) + interior,
        list(e.graph.edges) + piece_edges,
    )
    blk1 = tuple(w for w in _linearized_rotation(step, t1) if w != t2)
    blk2 = tuple(w for w in _linearized_rotation(step, t2) if w != t1)
    p1 = e.rotation[t1].index(t2)
    p2 = e.rotation[t2].index(t1)
    sgn = dict(e.sign)
    for x in piece_edges:
        sgn.setdefault(x, step.drawing.sign[x])
    for mirror in (False, True):
        b1 = blk1[::-1] if mirror else blk1
        b2 = blk2[::-1] if mirror else blk2
        for before1 in (False, True):
            for before2 in (False, True):
                rot = dict(e.rotation)
                for v in interior:
                    rot[v] = (
                        step.drawing.rotation[v][::-1]
                        if mirror
                        else step.drawing.rotation[v]
                    )
                rot[t1] = _splice(rot[t1], p1, b1, before1)
                rot[t2] = _splice(rot[t2], p2, b2, before2)
                cand = RotationEmbedding(g2, rot, sgn)
                try:
                    got = euler_genus_of(cand)
                except EmbeddingError:
                    continue
                if got != base:
                    continue
                if step.edge_added:
                    final = _drop_edge(cand, t1, t2)
                    if final is not None and euler_genus_of(final) == base:
                        return final
                else:
                    return cand
    raise EmbeddingError("clump reinstatement failed to keep the genus")


def _drop_edge(e: RotationEmbedding, u: int, v: int) -> Optional[RotationEmbedding]:
    ek = edge_key(u, v)
    rot = dict(e.rotation)
    rot[u] = tuple(w for w in rot[u] if w != v)
    rot[v] = tuple(w for w in rot[v] if w != u)
    g2 = e.graph.remove_edges([ek])
    sgn = {x: s for x, s in e.sign.items() if x != ek}
    return RotationEmbedding(g2, rot, sgn)


def denormalize_embedding(log: ReplayLog, e: RotationEmbedding) -> RotationEmbedding:
    """Replay the normalization steps backwards onto an embedding.

    Each petal is drawn in a disk at its portal and each clump in a
    disk alongside the portal edge, so the Euler genus is unchanged:
    the step-by-step trace assertions enforce exactly that.
    """
    cur = e
    for step in reversed(log.steps):
        if step.is_petal:
            cur = _reinstate_petal(cur, step)
        else:
            cur = _reinstate_clump(cur, step)
    return cur
