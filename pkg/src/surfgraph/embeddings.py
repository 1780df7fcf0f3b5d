"""Combinatorial surface embeddings: signed rotation systems.

An embedding assigns every vertex a cyclic order of its neighbours and
every edge a signature in {+1, -1}.  Faces are recovered by the
standard trace that flips sides on negative edges; the Euler genus of
the embedded surface is ``sum over components of (2 - n + m - f)``.
All operations are pure; surgery returns new embeddings.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional, Sequence

from surfgraph import core
from surfgraph.graphs import Graph, edge_key


class EmbeddingError(ValueError):
    """Raised for malformed rotation systems or invalid surgery."""


class RotationEmbedding:
    """A graph together with per-vertex rotations and edge signatures."""

    __slots__ = ("graph", "rotation", "sign", "_tables", "_validated", "_faces")

    def __init__(
        self,
        graph: Graph,
        rotation: dict[int, tuple[int, ...]],
        sign: Optional[dict[tuple[int, int], int]] = None,
    ):
        self.graph = graph
        self.rotation = {v: tuple(rotation.get(v, ())) for v in graph.vertices}
        if sign is None:
            sign = {}
        self.sign = {e: int(sign.get(e, 1)) for e in graph.edges}
        self._tables = None
        self._validated = False
        self._faces = None

    def validate(self) -> None:
        if self._validated:
            return
        g = self.graph
        for v in g.vertices:
            rot = self.rotation.get(v)
            if rot is None or tuple(sorted(rot)) != g.neighbors(v):
                raise EmbeddingError(f"rotation at {v} does not list each edge end once")
        for e, s in self.sign.items():
            if s not in (1, -1):
                raise EmbeddingError(f"sign of {e} must be +1 or -1")
        if set(self.sign) != set(g.edges):
            raise EmbeddingError("signs must cover exactly the edge set")
        self._validated = True

    # -- dart tables shared with the kernels ------------------------------

    def tables(self):
        """(edges, edge index, sigma_next, sigma_prev, neg, tails, heads).

        Darts ``2e`` and ``2e+1`` are edge ``e`` directed low-to-high and
        high-to-low respectively.
        """
        if self._tables is not None:
            return self._tables
        edges = self.graph.edges
        eidx = {e: i for i, e in enumerate(edges)}
        ndarts = 2 * len(edges)
        sigma_next = [0] * ndarts
        sigma_prev = [0] * ndarts
        for v in self.graph.vertices:
            rot = self.rotation[v]
            if not rot:
                continue
            darts = [
                2 * eidx[edge_key(v, w)] + (0 if v < w else 1) for w in rot
            ]
            k = len(darts)
            for i, d in enumerate(darts):
                sigma_next[d] = darts[(i + 1) % k]
                sigma_prev[d] = darts[(i - 1) % k]
        neg = [0 if self.sign[e] == 1 else 1 for e in edges]
        tails = [0] * ndarts
        heads = [0] * ndarts
        for (u, v), i in eidx.items():
            tails[2 * i], heads[2 * i] = u, v
            tails[2 * i + 1], heads[2 * i + 1] = v, u
        self._tables = (edges, eidx, sigma_next, sigma_prev, neg, tails, heads)
        return self._tables

    def __repr__(self) -> str:
        return f"RotationEmbedding(n={self.graph.num_vertices()}, m={self.graph.num_edges()})"


class Face:
    """A face, stored as the closed walk of its directed edge ends."""

    __slots__ = ("walk", "_vertex_set")

    def __init__(self, walk: tuple[tuple[int, int], ...]):
        self.walk = walk
        self._vertex_set: Optional[frozenset[int]] = None

    def __len__(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> frozenset[int]:
        if self._vertex_set is None:
            self._vertex_set = frozenset(v for _, v in self.walk)
        return self._vertex_set

    def edges(self) -> list[tuple[int, int]]:
        return [edge_key(u, v) for u, v in self.walk]

    def __repr__(self) -> str:
        return f"Face{self.walk!r}"


def _orbit(start: int, sigma_next, sigma_prev, neg) -> list[int]:
    """The face-trace orbit of a (dart, side) state, as a list of states."""
    out = []
    st = start
    while True:
        out.append(st)
        d = st >> 1
        s2 = (st & 1) ^ neg[d >> 1]
        t = d ^ 1
        nd = sigma_next[t] if s2 == 0 else sigma_prev[t]
        st = (nd << 1) | s2
        if st == start:
            return out


def _face_orbits(e: RotationEmbedding) -> list[list[int]]:
    """One canonical state orbit per face, deterministically ordered.

    Every face is traced twice by the state walk (once per side); the
    orbit with the smaller starting state is kept and its mirror orbit
    is consumed without producing a face.
    """
    e.validate()
    if e._faces is not None:
        return e._faces
    edges, eidx, sigma_next, sigma_prev, neg, tails, heads = e.tables()
    ndarts = 2 * len(edges)
    visited = bytearray(2 * ndarts)
    orbits = []
    for start in range(2 * ndarts):
        if visited[start]:
            continue
        orbit = _orbit(start, sigma_next, sigma_prev, neg)
        for st in orbit:
            visited[st] = 1
        # mirror of a passage: twin dart, flipped traversal side
        d0, s0 = start >> 1, start & 1
        mstart = ((d0 ^ 1) << 1) | (s0 ^ neg[d0 >> 1] ^ 1)
        if visited[mstart]:
            raise EmbeddingError("face trace produced a self-paired orbit")
        for st in _orbit(mstart, sigma_next, sigma_prev, neg):
            visited[st] = 1
        orbits.append(orbit)
    e._faces = orbits
    return orbits


def trace_faces(e: RotationEmbedding) -> list[Face]:
    """All faces as closed walks of directed edge ends, deterministic order."""
    edges, eidx, sigma_next, sigma_prev, neg, tails, heads = e.tables()
    return [
        Face(tuple((tails[st >> 1], heads[st >> 1]) for st in orbit))
        for orbit in _face_orbits(e)
    ]


def face_corners(e: RotationEmbedding) -> list[list[tuple[int, int]]]:
    """For each face, the corners it crosses, in walk order.

    A corner ``(v, j)`` sits between ``rotation[v][j]`` and
    ``rotation[v][j + 1]``; each corner belongs to exactly one face.
    """
    edges, eidx, sigma_next, sigma_prev, neg, tails, heads = e.tables()
    pos: dict[tuple[int, int], int] = {}
    for v in e.graph.vertices:
        for j, w in enumerate(e.rotation[v]):
            pos[(v, w)] = j
    out = []
    for orbit in _face_orbits(e):
        corners = []
        for st in orbit:
            d, s = st >> 1, st & 1
            s2 = s ^ neg[d >> 1]
            t = d ^ 1
            v = heads[d]
            if s2 == 0:
                corners.append((v, pos[(v, heads[t])]))
            else:
                nd = sigma_prev[t]
                corners.append((v, pos[(v, heads[nd])]))
        out.append(corners)
    return out


def _isolated_count(g: Graph) -> int:
    return sum(1 for v in g.vertices if g.degree(v) == 0)


def euler_genus_of(e: RotationEmbedding) -> int:
    """Euler genus summed over connected components."""
    e.validate()
    g = e.graph
    if g.num_edges() == 0:
        return 0
    edges, eidx, sigma_next, sigma_prev, neg, tails, heads = e.tables()
    f = core.face_count(sigma_next, sigma_prev, neg) + _isolated_count(g)
    c = len(g.components())
    eg = 2 * c - g.num_vertices() + g.num_edges() - f
    if eg < 0:
        raise EmbeddingError(f"inconsistent face trace (eg={eg})")
    return eg


def flip_parities(e: RotationEmbedding) -> dict[int, int]:
    """Per-vertex flip parity normalising all spanning-tree signs to +1.

    BFS per component from the smallest vertex; the parity of a vertex
    is the signature product along its tree path.
    """
    g = e.graph
    flip: dict[int, int] = {}
    for comp in g.components():
        root = comp[0]
        flip[root] = 0
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w in g.neighbors(u):
                if w not in flip:
                    flip[w] = flip[u] ^ (0 if e.sign[edge_key(u, w)] == 1 else 1)
                    queue.append(w)
    return flip


def is_orientable(e: RotationEmbedding) -> bool:
    """True iff every cycle has positive signature product (per component)."""
    e.validate()
    flip = flip_parities(e)
    for u, v in e.graph.edges:
        s = 0 if e.sign[(u, v)] == 1 else 1
        if s ^ flip[u] ^ flip[v]:
            return False
    return True


def sorted_rotation_embedding(g: Graph) -> RotationEmbedding:
    """The embedding whose rotations are the sorted adjacency lists."""
    return RotationEmbedding(g, {v: g.neighbors(v) for v in g.vertices})


def disjoint_union(parts: Iterable[RotationEmbedding]) -> RotationEmbedding:
    """Union of embeddings on disjoint vertex sets."""
    verts: list[int] = []
    edges: list[tuple[int, int]] = []
    rot: dict[int, tuple[int, ...]] = {}
    sgn: dict[tuple[int, int], int] = {}
    for p in parts:
        if any(v in rot for v in p.graph.vertices):
            raise EmbeddingError("vertex sets are not disjoint")
        verts.extend(p.graph.vertices)
        edges.extend(p.graph.edges)
        rot.update(p.rotation)
        sgn.update(p.sign)
    return RotationEmbedding(Graph(verts, edges), rot, sgn)


def restrict_embedding(e: RotationEmbedding, drop: Iterable[int]) -> RotationEmbedding:
    """Delete vertices and re-trace; punctures become ordinary faces."""
    dropset = set(drop)
    g = e.graph.remove_vertices(dropset)
    rot = {v: tuple(w for w in e.rotation[v] if w not in dropset) for v in g.vertices}
    sgn = {ek: e.sign[ek] for ek in g.edges}
    return RotationEmbedding(g, rot, sgn)


# -- serialization -----------------------------------------------------------


def embedding_to_payload(e: RotationEmbedding) -> dict:
    faces = trace_faces(e)
    return {
        "kind": "embedding",
        "rotation": {str(v): list(e.rotation[v]) for v in e.graph.vertices},
        "signs": {f"{u} {v}": e.sign[(u, v)] for u, v in e.graph.edges},
        "faces": [[list(step) for step in f.walk] for f in faces],
        "genus": euler_genus_of(e),
        "orientable": is_orientable(e),
    }


def embedding_from_payload(payload: dict) -> RotationEmbedding:
    rotation = {int(v): tuple(ns) for v, ns in payload["rotation"].items()}
    signs = {}
    for key, s in payload.get("signs", {}).items():
        u, v = (int(t) for t in key.split())
        signs[edge_key(u, v)] = int(s)
    return RotationEmbedding(Graph(list(rotation), list(signs)), rotation, signs)


def dumps_canonical(payload: dict) -> str:
    """Canonical JSON text; parsing and re-dumping is byte-identical."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


# -- surgery -----------------------------------------------------------------


def _insert_after(rot: tuple[int, ...], anchor_index: int, new: int) -> tuple[int, ...]:
    return rot[: anchor_index + 1] + (new,) + rot[anchor_index + 1 :]


def _try_insert_edge(
    e: RotationEmbedding, u: int, v: int, ju: int, jv: int, sign: int
) -> RotationEmbedding:
    rot = dict(e.rotation)
    rot[u] = _insert_after(rot[u], ju, v) if rot[u] else (v,)
    rot[v] = _insert_after(rot[v], jv, u) if rot[v] else (u,)
    g = e.graph.add_edges([(u, v)])
    sgn = dict(e.sign)
    sgn[edge_key(u, v)] = sign
    return RotationEmbedding(g, rot, sgn)


def add_edge_in_shared_face(
    e: RotationEmbedding, u: int, v: int
) -> Optional[RotationEmbedding]:
    """Insert edge uv inside a common face, leaving the genus unchanged.

    Returns None when u and v share no face.  The corner pair and the
    signature are chosen deterministically among those that keep the
    traced genus fixed.
    """
    if e.graph.has_edge(u, v):
        raise EmbeddingError(f"edge {u},{v} already present")
    if e.graph.degree(u) == 0 or e.graph.degree(v) == 0:
        return None
    base = euler_genus_of(e)
    corners = face_corners(e)
    for cs in corners:
        cu = [j for (x, j) in cs if x == u]
        cv = [j for (x, j) in cs if x == v]
        if not cu or not cv:
            continue
        for ju in cu:
            for jv in cv:
                for sign in (1, -1):
                    cand = _try_insert_edge(e, u, v, ju, jv, sign)
                    if euler_genus_of(cand) == base:
                        return cand
    return None


def add_edge_with_handle(e: RotationEmbedding, u: int, v: int) -> RotationEmbedding:
    """Insert edge uv, preferring a shared face, else a new handle.

    Same face: genus unchanged.  Different faces of one component: a
    handle joins them, raising the Euler genus by exactly 2; the
    signature is chosen so that orientability is preserved.  Different
    components: the spheres merge and the genus is unchanged.
    """
    if u == v or e.graph.has_edge(u, v):
        raise EmbeddingError(f"cannot add edge {u},{v}")
    shared = add_edge_in_shared_face(e, u, v)
    if shared is not None:
        return shared
    flip = flip_parities(e)
    sign = 1 if flip.get(u, 0) == flip.get(v, 0) else -1
    base = euler_genus_of(e)
    cand = _try_insert_edge(e, u, v, 0, 0, sign)
    got = euler_genus_of(cand)
    if got > base + 2:
        raise EmbeddingError("handle insertion raised genus by more than 2")
    return cand


def subdivide_edge(e: RotationEmbedding, a: int, b: int, w: int) -> RotationEmbedding:
    """Replace edge ab by the path a-w-b; a purely local operation."""
    ek = edge_key(a, b)
    if ek not in e.sign:
        raise EmbeddingError(f"edge {a},{b} not present")
    rot = dict(e.rotation)
    rot[a] = tuple(w if x == b else x for x in rot[a])
    rot[b] = tuple(w if x == a else x for x in rot[b])
    rot[w] = (a, b)
    g = Graph(
        list(e.graph.vertices) + [w],
        [x for x in e.graph.edges if x != ek] + [edge_key(a, w), edge_key(w, b)],
    )
    sgn = {x: s for x, s in e.sign.items() if x != ek}
    sgn[edge_key(a, w)] = e.sign[ek]
    sgn[edge_key(w, b)] = 1
    return RotationEmbedding(g, rot, sgn)


def insert_edge_planar(e: RotationEmbedding, u: int, v: int):
    """Insert edge uv into a planar embedding along a shortest dual path.

    Every crossed edge is subdivided by a fresh degree-4 crossing
    vertex.  Returns ``(embedding, crossings, trail)`` where trail
    lists ``(crossing_vertex, crossed_edge)`` in order.  The output
    stays planar and the crossing count equals the dual BFS distance.
    """
    if euler_genus_of(e) != 0:
        raise EmbeddingError("insert_edge_planar requires a planar embedding")
    if e.graph.has_edge(u, v):
        raise EmbeddingError(f"edge {u},{v} already present")
    if e.graph.degree(u) == 0 or e.graph.degree(v) == 0:
        out = add_edge_with_handle(e, u, v)
        if euler_genus_of(out) != 0:
            raise EmbeddingError("edge insertion broke planarity")
        return out, 0, []
    direct = add_edge_in_shared_face(e, u, v)
    if direct is not None:
        return direct, 0, []

    faces = trace_faces(e)
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for fi, f in enumerate(faces):
        for ek in f.edges():
            edge_faces.setdefault(ek, []).append(fi)
    source_set = {fi for fi, f in enumerate(faces) if u in f.vertices}
    targets = {fi for fi, f in enumerate(faces) if v in f.vertices}
    parent: dict[int, tuple[int, tuple[int, int]]] = {}
    dist = {fi: 0 for fi in sorted(source_set)}
    queue = sorted(source_set)
    qi = 0
    goal = None
    while qi < len(queue):
        fi = queue[qi]
        qi += 1
        if fi in targets:
            goal = fi
            break
        for ek in sorted(set(faces[fi].edges())):
            for gi in edge_faces[ek]:
                if gi != fi and gi not in dist:
                    dist[gi] = dist[fi] + 1
                    parent[gi] = (fi, ek)
                    queue.append(gi)
    if goal is None:
        raise EmbeddingError(f"no dual path from {u} to {v}")
    crossed: list[tuple[int, int]] = []
    fi = goal
    while fi not in source_set:
        fi, ek = parent[fi]
        crossed.append(ek)
    crossed.reverse()

    cur = e
    prev = u
    fresh = max(cur.graph.vertices) + 1
    trail = []
    for ek in crossed:
        w = fresh
        fresh += 1
        cur = subdivide_edge(cur, ek[0], ek[1], w)
        nxt = add_edge_in_shared_face(cur, prev, w)
        if nxt is None:
            raise EmbeddingError("dual routing lost the shared face")
        cur = nxt
        trail.append((w, ek))
        prev = w
    final = add_edge_in_shared_face(cur, prev, v)
    if final is None:
        raise EmbeddingError("dual routing lost the shared face at the target")
    if euler_genus_of(final) != 0:
        raise EmbeddingError("edge insertion broke planarity")
    return final, len(crossed), trail
