"""Patches, universal patches, patch merging, skeletons, and framing.

A patch is a subgraph with a distinguished boundary cycle.  A universal
patch sits inside a disk in every minimum-genus drawing and its removal
preserves the genus; it is computed from a planarly nested cycle
sequence by walking the boundary outwards over free pieces until the
region between the second and third cycle is normalized.  The skeleton
loop removes patch interiors until the treewidth certificate drops
below the configured threshold.  Framing glues width-3 collars onto
boundary cycles so that planar drawings of skeleton pieces keep the
cycles one-sided.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from surfgraph.decomp import approx_tree_decomposition
from surfgraph.graphs import Graph, edge_key
from surfgraph.gridminor import NestedCycles, TooSmall, planarly_nested_sequence, validate_nested_cycles
from surfgraph.normalize import find_free_subgraph
from surfgraph.planarity import embed_with_shared_face
from surfgraph.embeddings import trace_faces


class NormalizationViolated(RuntimeError):
    """The patch computation met a structure the construction forbids."""


class Patch:
    """A subgraph with a distinguished boundary cycle strictly inside it."""

    __slots__ = ("vertices", "edges", "boundary")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]],
                 boundary: Sequence[int]):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(edge_key(u, v) for u, v in edges)
        self.boundary = tuple(boundary)
        if len(self.boundary) < 3 or len(set(self.boundary)) != len(self.boundary):
            raise ValueError("boundary must be a simple cycle")
        if not set(self.boundary) <= self.vertices:
            raise ValueError("boundary must lie inside the patch")
        if self.vertices == set(self.boundary) and len(self.edges) == len(self.boundary):
            raise ValueError("patch must strictly contain its boundary")

    @property
    def interior(self) -> frozenset[int]:
        return self.vertices - set(self.boundary)

    def boundary_edges(self) -> list[tuple[int, int]]:
        k = len(self.boundary)
        return [edge_key(self.boundary[i], self.boundary[(i + 1) % k]) for i in range(k)]

    def __repr__(self) -> str:
        return f"Patch(|X|={len(self.vertices)}, |C|={len(self.boundary)})"


class PatchSet:
    """Pairwise non-overlapping patches over one host graph."""

    __slots__ = ("patches",)

    def __init__(self, patches: Iterable[Patch] = ()):
        self.patches = list(patches)

    def __len__(self) -> int:
        return len(self.patches)

    def __iter__(self):
        return iter(self.patches)

    def boundaries(self) -> list[tuple[int, ...]]:
        return [p.boundary for p in self.patches]

    def validate_nonoverlap(self) -> bool:
        """Literal set algebra: X_i and X_j intersect exactly in C_i and C_j."""
        for i in range(len(self.patches)):
            for j in range(i + 1, len(self.patches)):
                a, b = self.patches[i], self.patches[j]
                ca, cb = set(a.boundary), set(b.boundary)
                if a.vertices & b.vertices != ca & cb:
                    return False
                ea = set(a.boundary_edges())
                eb = set(b.boundary_edges())
                if a.edges & b.edges != ea & eb:
                    return False
        return True


def overlapping(a: Patch, b: Patch) -> bool:
    ca, cb = set(a.boundary), set(b.boundary)
    return bool((a.vertices - ca) & b.vertices) or bool((b.vertices - cb) & a.vertices)


def merge_patches(ps: PatchSet, newp: Patch) -> PatchSet:
    """Absorb every member overlapping the new patch into it.

    The new patch was computed on the host minus the old interiors, so
    anything it overlaps can only be swallowed whole: the union keeps
    the new boundary.
    """
    absorbed = [p for p in ps if overlapping(p, newp)]
    untouched = [p for p in ps if not overlapping(p, newp)]
    verts = set(newp.vertices)
    edges = set(newp.edges)
    for p in absorbed:
        verts |= p.vertices
        edges |= p.edges
    merged = Patch(verts, edges, newp.boundary)
    out = PatchSet(untouched + [merged])
    if not out.validate_nonoverlap():
        raise RuntimeError("patch merge produced overlapping patches")
    return out


# -- universal patch -----------------------------------------------------------


def _component_containing(g: Graph, banned: set[int], seed: int) -> set[int]:
    comp = {seed}
    stack = [seed]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w not in banned and w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def _cycle_paths(cycle: Sequence[int], t1: int, t2: int) -> tuple[list[int], list[int]]:
    """The two arcs of a cycle between two of its vertices (both ends included)."""
    k = len(cycle)
    i1, i2 = cycle.index(t1), cycle.index(t2)
    arc1 = [cycle[(i1 + t) % k] for t in range((i2 - i1) % k + 1)]
    arc2 = [cycle[(i2 + t) % k] for t in range((i1 - i2) % k + 1)]
    return arc1, arc2


def _outer_walks(piece: Graph, t1: int, t2: int) -> list[list[int]]:
    """Simple portal-to-portal paths along the disk boundary of a free piece."""
    emb, face_index = embed_with_shared_face(piece, [t1, t2])
    walk = [v for _, v in trace_faces(emb)[face_index].walk]
    # rotate the closed walk to start at t1
    i = walk.index(t1)
    walk = walk[i:] + walk[:i]
    out = []
    segs: list[list[int]] = []
    cur = [t1]
    for v in walk[1:] + [t1]:
        cur.append(v)
        if v == t2 or v == t1:
            segs.append(cur)
            cur = [v]
    for seg in segs:
        if seg[0] != seg[-1] and len(seg) >= 2:
            # shortcut repeats to a simple path
            simple: list[int] = []
            pos: dict[int, int] = {}
            for v in seg:
                if v in pos:
                    del_from = pos[v] + 1
                    for w in simple[del_from:]:
                        del pos[w]
                    simple = simple[:del_from]
                else:
                    pos[v] = len(simple)
                    simple.append(v)
            if simple[0] == t1 and simple[-1] == t2 and len(simple) >= 2:
                out.append(simple)
    # deduplicate
    uniq = []
    for seg in out:
        if seg not in uniq:
            uniq.append(seg)
    return uniq


def compute_universal_patch(
    g: Graph,
    genus_budget: int,
    min_nested: int = 3,
    balance: float = 2 / 3,
    cap_factor: int = 1,
    check_normalized: bool = True,
) -> Patch:
    """A universal patch of a normalized graph.

    Starting from the second innermost nested cycle, the boundary walks
    outwards: while the closed region plus the outside component is not
    normalized, the offending free piece (always a two-portal clump
    with both portals on the boundary) is bypassed along its outer
    walk.  The disk side grows strictly, so the loop terminates; the
    final boundary together with everything inside it is the patch.

    Raises Rejected or TooSmall (propagated), or NormalizationViolated
    when the input was not actually normalized.
    """
    if genus_budget < 1:
        raise ValueError("genus budget must be at least 1")
    if check_normalized and find_free_subgraph(g) is not None:
        raise NormalizationViolated("input graph is not normalized")
    k = max(min_nested, genus_budget + 3)
    nc = planarly_nested_sequence(g, genus_budget, k, balance, cap_factor)
    cycles = nc.cycles
    c1, psi, c3 = cycles[0], list(cycles[1]), cycles[2]
    tail = [tuple(c) for c in cycles[2:]]
    banned_vertices = set(c1) | set(c3)
    marker = nc.marker

    def region_split(boundary: Sequence[int]):
        h = _component_containing(g, set(boundary), c3[0])
        x = set(g.vertices) - h - set(boundary)
        return h, x

    h_cur, x_cur = region_split(psi)
    guard = 0
    while True:
        guard += 1
        if guard > g.num_vertices() + 2:
            raise NormalizationViolated("boundary walk did not terminate")
        w_graph = g.induced(set(psi) | h_cur)
        found = find_free_subgraph(w_graph)
        if found is None:
            break
        qverts, portals = found
        if len(portals) != 2:
            raise NormalizationViolated("free piece with one portal inside the walk region")
        if not set(portals) <= set(psi):
            raise NormalizationViolated("free piece portals leave the boundary cycle")
        if qverts & set(c3):
            raise NormalizationViolated("free piece touches the third nested cycle")
        t1, t2 = portals
        piece = w_graph.induced(qverts)
        walks = _outer_walks(piece, t1, t2)
        k1, k2 = _cycle_paths(psi, t1, t2)
        chosen = None
        for lwalk in walks:
            for karc in (k1, k2):
                if set(lwalk) & set(karc) - {t1, t2}:
                    continue
                # boundary cycle: walk t1 -> t2 through the piece, then the
                # arc t2 -> t1 along the old boundary
                arc = karc if karc[0] == t2 else karc[::-1]
                if arc[0] != t2 or arc[-1] != t1:
                    continue
                cyc = lwalk[:-1] + arc[:-1]
                if len(set(cyc)) != len(cyc) or len(cyc) < 3:
                    continue
                if set(cyc) & banned_vertices:
                    continue
                h_new, x_new = region_split(cyc)
                if marker is not None and marker not in h_new and marker not in set(cyc):
                    continue
                if not (x_new > x_cur):
                    continue
                witness = NestedCycles([list(c1), list(cyc)] + [list(c) for c in tail], marker)
                if not validate_nested_cycles(g, witness):
                    continue
                chosen = (cyc, h_new, x_new)
                break
            if chosen:
                break
        if chosen is None:
            raise NormalizationViolated("no valid boundary replacement for a clump")
        psi, h_cur, x_cur = list(chosen[0]), chosen[1], chosen[2]

    xverts = x_cur | set(psi)
    sub = g.induced(xverts)
    patch = Patch(xverts, sub.edges, psi)
    remainder = g.remove_vertices(patch.interior)
    if find_free_subgraph(remainder) is not None:
        raise NormalizationViolated("patch removal left a free subgraph")
    return patch


# -- skeleton ------------------------------------------------------------------


def compute_skeleton(
    g: Graph,
    genus_budget: int,
    treewidth_threshold: int = 12,
    min_nested: int = 3,
    balance: float = 2 / 3,
    cap_factor: int = 1,
) -> tuple[PatchSet, Graph]:
    """Remove universal patch interiors until the width certificate is small.

    The graph must be normalized.  Each iteration strictly shrinks the
    vertex set and keeps the remainder normalized.  When the patch
    machinery reports the structure is too small to continue, the loop
    stops with the current (wider) skeleton: correctness of later
    stages does not depend on the threshold being reached.
    """
    if find_free_subgraph(g) is not None:
        raise NormalizationViolated("skeleton expects a normalized graph")
    ps = PatchSet()
    cur = g
    while True:
        width = approx_tree_decomposition(cur).width
        if width <= treewidth_threshold:
            return ps, cur
        try:
            patch = compute_universal_patch(
                cur,
                genus_budget,
                min_nested=min_nested,
                balance=balance,
                cap_factor=cap_factor,
                check_normalized=False,
            )
        except TooSmall:
            return ps, cur
        ps = merge_patches(ps, patch)
        nxt = cur.remove_vertices(patch.interior)
        if nxt.num_vertices() >= cur.num_vertices():
            raise RuntimeError("skeleton iteration failed to shrink the graph")
        cur = nxt


# -- framing -------------------------------------------------------------------

FRAME_BASE = 10**9
_FRAME_STRIDE = 10**5


def frame_vertex(cycle_id: int, row: int, col: int) -> int:
    """Deterministic composite label for a frame vertex (row in {2, 3})."""
    return FRAME_BASE + ((cycle_id * _FRAME_STRIDE + col) * 2 + (row - 2))


def is_frame_vertex(v: int) -> bool:
    return v >= FRAME_BASE


def frame(h: Graph, cycles: Sequence[Sequence[int]]) -> Graph:
    """Attach width-3 collars along the given reference cycles.

    A cycle fully contained in h receives a 3 x |C| cylinder identified
    with it along the top; partial cycles receive a 3 x |P| grid per
    maximal segment present in h.  Frame labels are composites of
    (cycle index, row, position along the reference cycle), so the
    framing of a subgraph is literally a subgraph of the framing of the
    whole graph.
    """
    verts: list[int] = list(h.vertices)
    edges: list[tuple[int, int]] = list(h.edges)
    for ci, cyc in enumerate(cycles):
        if ci >= _FRAME_STRIDE:
            raise ValueError("too many cycles to frame")
        k = len(cyc)
        present_edge = [
            h.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)
        ]
        present_vertex = [h.has_vertex(v) for v in cyc]
        if all(present_edge):
            cols = list(range(k))
            _attach_strip(verts, edges, ci, cyc, cols, wrap=True)
            continue
        # maximal runs of consecutive present edges, plus isolated vertices
        used = [False] * k
        for start in range(k):
            if present_edge[start] and not present_edge[(start - 1) % k]:
                run = [start]
                j = start
                while present_edge[(j + 1) % k]:
                    j = (j + 1) % k
                    run.append(j)
                    if len(run) > k:
                        break
                cols = run + [(run[-1] + 1) % k]
                _attach_strip(verts, edges, ci, cyc, cols, wrap=False)
                for c in cols:
                    used[c] = True
        for i in range(k):
            if present_vertex[i] and not used[i]:
                has_edge_at = present_edge[i] or present_edge[(i - 1) % k]
                if not has_edge_at:
                    _attach_strip(verts, edges, ci, cyc, [i], wrap=False)
    return Graph(verts, edges)


def _attach_strip(verts, edges, ci, cyc, cols, wrap):
    k = len(cols)
    for idx, c in enumerate(cols):
        v2 = frame_vertex(ci, 2, c)
        v3 = frame_vertex(ci, 3, c)
        verts.extend([v2, v3])
        edges.append((cyc[c], v2))
        edges.append((v2, v3))
        if idx + 1 < k or wrap:
            c2 = cols[(idx + 1) % k]
            edges.append((frame_vertex(ci, 2, c), frame_vertex(ci, 2, c2)))
            edges.append((frame_vertex(ci, 3, c), frame_vertex(ci, 3, c2)))


def frame_size_delta(h: Graph, cycles: Sequence[Sequence[int]]) -> int:
    """Exact number of frame vertices the framing adds (for the size law)."""
    total = 0
    for cyc in cycles:
        k = len(cyc)
        present_edge = [h.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
        if all(present_edge):
            total += 2 * k
            continue
        used = [False] * k
        for start in range(k):
            if present_edge[start] and not present_edge[(start - 1) % k]:
                run = [start]
                j = start
                while present_edge[(j + 1) % k]:
                    j = (j + 1) % k
                    run.append(j)
                cols = run + [(run[-1] + 1) % k]
                total += 2 * len(cols)
                for c in cols:
                    used[c] = True
        for i in range(k):
            if h.has_vertex(cyc[i]) and not used[i]:
                if not (present_edge[i] or present_edge[(i - 1) % k]):
                    total += 2
    return total
