"""Planarity testing, planar embeddings, and disk embeddings with a forced face.

The boolean test and the embedding witness come from networkx
(left-right planarity); results are cached since the pipeline asks the
same questions repeatedly.  On top of that sit two constructions used
throughout: an embedding in which a prescribed set of vertices shares a
face, and an embedding in which a prescribed cycle bounds a face (the
drawing of a patch into a disk).
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import networkx as nx

from surfgraph.embeddings import (
    EmbeddingError,
    RotationEmbedding,
    euler_genus_of,
    face_corners,
    trace_faces,
)
from surfgraph.graphs import Graph, edge_key

_PLANAR_CACHE: dict[Graph, bool] = {}


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def is_planar(g: Graph) -> bool:
    hit = _PLANAR_CACHE.get(g)
    if hit is not None:
        return hit
    ok = bool(nx.check_planarity(_to_nx(g), counterexample=False)[0])
    _PLANAR_CACHE[g] = ok
    return ok


def kuratowski_subgraph(g: Graph) -> Graph:
    """A nonplanar witness subgraph (a K5 or K3,3 subdivision)."""
    ok, cert = nx.check_planarity(_to_nx(g), counterexample=True)
    if ok:
        raise ValueError("graph is planar")
    return Graph(cert.nodes, cert.edges)


def planar_embedding(g: Graph) -> RotationEmbedding:
    """A planar rotation embedding (all signatures +1); raises if nonplanar."""
    if g.num_edges() == 0:
        return RotationEmbedding(g, {v: () for v in g.vertices})
    ok, emb = nx.check_planarity(_to_nx(g), counterexample=False)
    if not ok:
        raise ValueError("graph is not planar")
    rotation = {
        v: tuple(emb.neighbors_cw_order(v)) if g.degree(v) else ()
        for v in g.vertices
    }
    out = RotationEmbedding(g, rotation)
    if euler_genus_of(out) != 0:
        raise EmbeddingError("planar embedding extraction failed")
    _PLANAR_CACHE[g] = True
    return out


def _fresh_vertex(g: Graph) -> int:
    return (max(g.vertices) + 1) if g.num_vertices() else 0


def embed_with_shared_face(
    g: Graph, anchors: Sequence[int]
) -> tuple[RotationEmbedding, int]:
    """A planar embedding of g in which all anchors lie on one face.

    Existence is equivalent to planarity of g plus an apex joined to the
    anchors; raises ValueError when impossible.  Returns the embedding
    and the index of the witnessing face.
    """
    anchors = list(dict.fromkeys(anchors))
    if not all(g.has_vertex(a) for a in anchors):
        raise ValueError("anchors must be vertices of g")
    apex = _fresh_vertex(g)
    test = g.add_vertices([apex]).add_edges((apex, a) for a in anchors)
    if not is_planar(test):
        raise ValueError("no planar embedding puts the anchors on one face")
    emb = planar_embedding(test)
    rot = {
        v: tuple(w for w in emb.rotation[v] if w != apex)
        for v in g.vertices
    }
    out = RotationEmbedding(g, rot)
    if euler_genus_of(out) != 0:
        raise EmbeddingError("apex removal broke planarity")
    for fi, f in enumerate(trace_faces(out)):
        if all(a in f.vertices for a in anchors):
            return out, fi
    raise EmbeddingError("apex removal lost the shared face")


def find_cycle_face(e: RotationEmbedding, cycle: Sequence[int]) -> Optional[int]:
    """Index of a face whose boundary walk is exactly the given cycle."""
    want = sorted(edge_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))
    for fi, f in enumerate(trace_faces(e)):
        if len(f) == len(cycle) and sorted(f.edges()) == want:
            return fi
    return None


def _move_sector(rot: tuple[int, ...], sector: list[int], anchor: int, side: int):
    """Remove ``sector`` darts and reinsert them next to ``anchor``.

    side 0: immediately after the anchor; side 1: immediately before,
    with the sector reversed (mirror placement).
    """
    base = [x for x in rot if x not in sector]
    k = base.index(anchor)
    if side == 0:
        return tuple(base[: k + 1] + sector + base[k + 1 :])
    return tuple(base[:k] + sector[::-1] + base[k:])


def embed_patch_in_disk(x: Graph, cycle: Sequence[int]) -> RotationEmbedding:
    """A planar embedding of x in which the cycle bounds a face.

    The existence test adds an apex adjacent to every cycle vertex: any
    piece drawn in a wheel pocket is attached to the two endpoints of a
    single cycle edge only, so it can be flipped to the other side of
    that edge.  Raises EmbeddingError("not a disk patch") when no such
    embedding exists.
    """
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise ValueError("cycle must list distinct vertices")
    for i in range(k):
        if not x.has_edge(cycle[i], cycle[(i + 1) % k]):
            raise ValueError("boundary is not a cycle of the patch")
    apex = _fresh_vertex(x)
    test = x.add_vertices([apex]).add_edges((apex, c) for c in cycle)
    if not is_planar(test):
        raise EmbeddingError("not a disk patch")
    emb = planar_embedding(test)

    nxt_on_cycle = {cycle[i]: cycle[(i + 1) % k] for i in range(k)}
    for _ in range(4 * k + 4):
        cur = RotationEmbedding(
            x, {v: tuple(w for w in emb.rotation[v] if w != apex) for v in x.vertices}
        )
        fi = find_cycle_face(cur, list(cycle))
        if fi is not None:
            return cur
        # some wheel pocket is inhabited: find a non-triangular apex face
        faces = trace_faces(emb)
        pocket = None
        for f in faces:
            if apex not in f.vertices:
                continue
            cyc_verts = [v for v in f.vertices if v in nxt_on_cycle]
            if len(f) > 3 and len(cyc_verts) >= 1:
                pocket = f
                break
        if pocket is None:
            raise EmbeddingError("disk cleanup failed to locate a pocket")
        # locate the consecutive cycle pair (u, v) whose pocket this is
        pocket_cycle = [v for v in pocket.vertices if v in nxt_on_cycle]
        pair = None
        for u in pocket_cycle:
            if nxt_on_cycle[u] in pocket_cycle:
                pair = (u, nxt_on_cycle[u])
                break
        if pair is None:
            raise EmbeddingError("disk cleanup found a malformed pocket")
        u, v = pair
        moved = _relocate_pocket(emb, apex, u, v)
        if moved is None:
            raise EmbeddingError("disk cleanup could not flip a pocket bridge")
        emb = moved
    raise EmbeddingError("disk cleanup did not converge")


def _nontriangular_apex_faces(e: RotationEmbedding, apex: int) -> int:
    return sum(1 for f in trace_faces(e) if apex in f.vertices and len(f) > 3)


def _relocate_pocket(
    e: RotationEmbedding, apex: int, u: int, v: int
) -> Optional[RotationEmbedding]:
    """Flip the pocket content between spokes (apex,u),(apex,v) across edge uv.

    The content attaches only to u and v, so moving its darts to the far
    side of the edge keeps the embedding planar.  Both rotation arcs and
    both insertion sides are tried; the first combination that stays
    planar and reduces the number of inhabited pockets is returned.
    """
    before = _nontriangular_apex_faces(e, apex)

    def arcs(w: int, from_d: int, to_d: int) -> list[list[int]]:
        rot = e.rotation[w]
        i, j = rot.index(from_d), rot.index(to_d)
        n = len(rot)
        fwd = [rot[(i + t) % n] for t in range(1, (j - i) % n)]
        bwd = [rot[(j + t) % n] for t in range(1, (i - j) % n)]
        return [fwd, bwd]

    for sec_u in arcs(u, apex, v):
        for sec_v in arcs(v, u, apex):
            for side_u in (0, 1):
                for side_v in (0, 1):
                    rot = dict(e.rotation)
                    rot[u] = _move_sector(rot[u], sec_u, v, side_u)
                    rot[v] = _move_sector(rot[v], sec_v, u, side_v)
                    cand = RotationEmbedding(e.graph, rot, e.sign)
                    try:
                        if euler_genus_of(cand) != 0:
                            continue
                    except EmbeddingError:
                        continue
                    if _nontriangular_apex_faces(cand, apex) < before:
                        return cand
    return None
