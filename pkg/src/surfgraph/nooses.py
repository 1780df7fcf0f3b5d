"""Nooses: closed curves meeting an embedded graph only at vertices.

A noose is represented on the radial graph (vertex-face incidence
multigraph) of the embedding: it alternates face and vertex nodes, and
its length counts the graph vertices it visits.  The radial graph is
itself embedded in the same surface, which gives purely combinatorial
tests for everything needed here:

* orientation reversal is the signature parity along the cycle,
* separation is triviality of the Z2-homology class, read off a
  tree-cotree decomposition,
* contractibility of the remaining (separating, orientation-preserving)
  candidates is settled by cutting the surface along the cycle and
  checking that one side caps off to a sphere.
"""

from __future__ import annotations

from typing import Optional, Sequence

from surfgraph import core
from surfgraph.embeddings import (
    EmbeddingError,
    RotationEmbedding,
    euler_genus_of,
    face_corners,
    is_orientable,
    restrict_embedding,
    trace_faces,
)
from surfgraph.graphs import Graph


class Noose:
    """An alternating face/vertex loop with its classification flags."""

    __slots__ = ("sequence", "length", "contractible", "orientation_reversing", "separating")

    def __init__(self, sequence, length, orientation_reversing, separating):
        self.sequence = tuple(sequence)  # (face_index, vertex) pairs
        self.length = length
        self.contractible = False
        self.orientation_reversing = orientation_reversing
        self.separating = separating

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.sequence)

    def __repr__(self) -> str:
        return (
            f"Noose(len={self.length}, or={self.orientation_reversing}, "
            f"sep={self.separating}, seq={self.sequence})"
        )


class _Mesh:
    """An embedded multigraph in dart form (used for the radial graph)."""

    def __init__(self, nnodes: int, edge_ends: list[tuple[int, int]], rot: list[list[int]], neg: list[int]):
        self.nnodes = nnodes
        self.edge_ends = edge_ends  # edge e has darts 2e (ends[0]->ends[1]) and 2e+1
        self.rot = rot  # per node, list of dart ids in cyclic order
        self.neg = neg

    def dart_tail(self, d: int) -> int:
        a, b = self.edge_ends[d >> 1]
        return a if d % 2 == 0 else b

    def dart_head(self, d: int) -> int:
        a, b = self.edge_ends[d >> 1]
        return b if d % 2 == 0 else a

    def sigma_tables(self):
        nd = 2 * len(self.edge_ends)
        nxt = [0] * nd
        prv = [0] * nd
        for ds in self.rot:
            k = len(ds)
            for i, d in enumerate(ds):
                nxt[d] = ds[(i + 1) % k]
                prv[d] = ds[(i - 1) % k]
        return nxt, prv

    def face_orbit_of_state(self):
        """face index per (dart, side) state, plus the list of face orbits."""
        nxt, prv = self.sigma_tables()
        nd = 2 * len(self.edge_ends)
        face_of = [-1] * (2 * nd)
        orbits = []
        for start in range(2 * nd):
            if face_of[start] >= 0:
                continue
            idx = len(orbits)
            orbit = []
            st = start
            while face_of[st] < 0:
                face_of[st] = idx
                orbit.append(st)
                d = st >> 1
                s2 = (st & 1) ^ self.neg[d >> 1]
                t = d ^ 1
                ndart = nxt[t] if s2 == 0 else prv[t]
                st = (ndart << 1) | s2
            # consume the mirror orbit under the same face index
            d0, s0 = start >> 1, start & 1
            mst = ((d0 ^ 1) << 1) | (s0 ^ self.neg[d0 >> 1] ^ 1)
            while face_of[mst] < 0:
                face_of[mst] = idx
                d = mst >> 1
                s2 = (mst & 1) ^ self.neg[d >> 1]
                t = d ^ 1
                ndart = nxt[t] if s2 == 0 else prv[t]
                mst = (ndart << 1) | s2
            orbits.append(orbit)
        return face_of, orbits

    def component_genera(self) -> list[int]:
        """Euler genus of each connected component (nodes with darts only)."""
        parent = list(range(self.nnodes))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edge_ends:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        _, orbits = self.face_orbit_of_state()
        nverts: dict[int, int] = {}
        medges: dict[int, int] = {}
        nfaces: dict[int, int] = {}
        active = set()
        for a, b in self.edge_ends:
            active.add(a)
            active.add(b)
        for v in active:
            nverts[find(v)] = nverts.get(find(v), 0) + 1
        for a, b in self.edge_ends:
            medges[find(a)] = medges.get(find(a), 0) + 1
        for orbit in orbits:
            d = orbit[0] >> 1
            r = find(self.dart_tail(d))
            nfaces[r] = nfaces.get(r, 0) + 1
        out = []
        for r in sorted(nverts):
            out.append(2 - nverts[r] + medges[r] - nfaces[r])
        return out

    def cut_along(self, cycle: Sequence[int]):
        """Cut the surface along a cycle of darts; None if orientation-reversing.

        The cycle signature is first normalised to +1 by node flips.
        Each cycle node is split in two, with the rotation arc between
        the cycle darts going to one copy and the rest to the other;
        the cycle edges are doubled into the two boundary copies.
        Returns the cut mesh.
        """
        nodes = [self.dart_tail(d) for d in cycle]
        L = len(cycle)
        if len(set(nodes)) != L:
            raise ValueError("cut cycle must be simple")
        pos = {z: i for i, z in enumerate(nodes)}
        # sign normalisation along the cycle
        flip = [0] * self.nnodes
        for i, d in enumerate(cycle[:-1]):
            e = d >> 1
            z, znext = nodes[i], nodes[(i + 1) % L]
            flip[znext] = self.neg[e] ^ flip[z]
        e_last = cycle[-1] >> 1
        if self.neg[e_last] ^ flip[nodes[-1]] ^ flip[nodes[0]]:
            return None
        neg = list(self.neg)
        rot = [list(r) for r in self.rot]
        flipped = [z for z in range(self.nnodes) if flip[z]]
        for z in flipped:
            rot[z] = rot[z][::-1]
        for e, (a, b) in enumerate(self.edge_ends):
            if flip[a] ^ flip[b]:
                neg[e] ^= 1

        # split the cycle nodes
        edge_ends = list(self.edge_ends)
        copy_id = {z: self.nnodes + i for i, z in enumerate(nodes)}
        nnodes = self.nnodes + L
        new_rot = {z: None for z in nodes}
        dup_edge_of = {}
        for i, z in enumerate(nodes):
            d_next = cycle[i]  # dart z -> z_{i+1}
            d_prev = cycle[i - 1] ^ 1  # dart z -> z_{i-1}
            r = rot[z]
            ia = r.index(d_next)
            rr = r[ia:] + r[:ia]  # starts with d_next
            ib = rr.index(d_prev)
            arc1 = rr[1:ib]
            arc2 = rr[ib + 1 :]
            new_rot[z] = ("split", d_next, d_prev, arc1, arc2)
        # duplicate cycle edges
        for i in range(L):
            e = cycle[i] >> 1
            dup = len(edge_ends)
            a, b = nodes[i], nodes[(i + 1) % L]
            edge_ends.append((copy_id[a], copy_id[b]))
            neg.append(neg[e])
            dup_edge_of[i] = dup
        # re-home arc2 darts (and chord endpoints) to the copies
        home = {}
        for z in nodes:
            _, d_next, d_prev, arc1, arc2 = new_rot[z]
            for d in arc2:
                home[d] = copy_id[z]
        for d, nz in home.items():
            e = d >> 1
            a, b = edge_ends[e]
            if d % 2 == 0:
                edge_ends[e] = (nz, b)
            else:
                edge_ends[e] = (a, nz)

        final_rot: list[list[int]] = [list(r) for r in rot] + [[] for _ in range(L)]
        for i, z in enumerate(nodes):
            _, d_next, d_prev, arc1, arc2 = new_rot[z]
            dup_next = dup_edge_of[i]
            dup_prev = dup_edge_of[(i - 1) % L]
            # primary copy keeps the original cycle darts and arc1
            final_rot[z] = [d_next] + arc1 + [d_prev]
            # secondary copy gets the duplicated cycle darts and arc2
            d2_next = 2 * dup_next
            d2_prev = 2 * dup_prev + 1
            final_rot[copy_id[z]] = [d2_prev] + arc2 + [d2_next]
        return _Mesh(nnodes, edge_ends, final_rot, neg)


class RadialGraph:
    """The vertex-face incidence multigraph of an embedding, embedded."""

    def __init__(self, e: RotationEmbedding):
        e.validate()
        g = e.graph
        self.embedding = e
        self.faces = trace_faces(e)
        corners = face_corners(e)
        verts = [v for v in g.vertices if g.degree(v) > 0]
        self.vnode_of = {v: i for i, v in enumerate(verts)}
        self.vertex_of_node = list(verts)
        nv = len(verts)
        self.fnode_of = {fi: nv + fi for fi in range(len(self.faces))}
        nnodes = nv + len(self.faces)

        # one radial edge per corner
        corner_edge: dict[tuple[int, int], int] = {}
        edge_ends: list[tuple[int, int]] = []
        neg: list[int] = []
        edge_face_order: dict[int, list[int]] = {fi: [] for fi in range(len(self.faces))}
        for fi, cs in enumerate(corners):
            for (v, j) in cs:
                key = (v, j)
                if key in corner_edge:
                    raise EmbeddingError("corner visited by two faces")
                eid = len(edge_ends)
                corner_edge[key] = eid
                edge_ends.append((self.vnode_of[v], self.fnode_of[fi]))
                neg.append(0)
                edge_face_order[fi].append(eid)
        # signature of a radial edge: the side of the canonical traversal.
        # Face rotations take the walk order reversed: the walk keeps its
        # face on one fixed side, so the cyclic order of the corners seen
        # from the face centre is opposite to the walk order.  Validated
        # by the quadrangularity and genus checks in the tests.
        edges, eidx, sigma_next, sigma_prev, negG, tails, heads = e.tables()
        from surfgraph.embeddings import _face_orbits

        for fi, orbit in enumerate(_face_orbits(e)):
            for k, st in enumerate(orbit):
                d, s = st >> 1, st & 1
                s2 = s ^ negG[d >> 1]
                eid = edge_face_order[fi][k]
                if s2 == 1:
                    neg[eid] = 1
        rot: list[list[int]] = [[] for _ in range(nnodes)]
        for v in verts:
            deg = g.degree(v)
            rot[self.vnode_of[v]] = [2 * corner_edge[(v, j)] for j in range(deg)]
        for fi in range(len(self.faces)):
            rot[self.fnode_of[fi]] = [2 * eid + 1 for eid in edge_face_order[fi]][::-1]
        self.mesh = _Mesh(nnodes, edge_ends, rot, neg)
        self.nv = nv

    def is_vnode(self) -> list[int]:
        return [1] * self.nv + [0] * (self.mesh.nnodes - self.nv)


def _homology_tables(mesh: _Mesh):
    """(w1 bits, Z2-homology class per edge) via a tree-cotree decomposition.

    Spanning tree edges carry class 0; the leftover edges (not in the
    tree and not in a spanning forest of the dual) carry unit classes;
    the dual-forest edges are resolved from the face-boundary relations
    by leaf elimination.
    """
    nnodes = mesh.nnodes
    nedges = len(mesh.edge_ends)
    tree = [False] * nedges
    seen = [False] * nnodes
    for root in range(nnodes):
        if seen[root] or not mesh.rot[root]:
            continue
        seen[root] = True
        queue = [root]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for d in mesh.rot[x]:
                y = mesh.dart_head(d)
                if not seen[y]:
                    seen[y] = True
                    tree[d >> 1] = True
                    queue.append(y)
    face_of, orbits = mesh.face_orbit_of_state()
    nfaces = len(orbits)

    def faces_of_edge(e):
        return face_of[(2 * e) << 1], face_of[((2 * e) << 1) | 1]

    # dual spanning forest over the non-tree edges
    dparent = list(range(nfaces))

    def dfind(x):
        while dparent[x] != x:
            dparent[x] = dparent[dparent[x]]
            x = dparent[x]
        return x

    in_dual = [False] * nedges
    leftover: list[int] = []
    for e in range(nedges):
        if tree[e]:
            continue
        f1, f2 = faces_of_edge(e)
        r1, r2 = dfind(f1), dfind(f2)
        if r1 != r2:
            dparent[r2] = r1
            in_dual[e] = True
        else:
            leftover.append(e)
    hclass = [0] * nedges
    for i, e in enumerate(leftover):
        if i >= 64:
            raise EmbeddingError("homology rank exceeds 64")
        hclass[e] = 1 << i
    # resolve dual-forest edges from face boundaries, leaves first
    face_edges: list[list[int]] = [[] for _ in range(nfaces)]
    for fi, orbit in enumerate(orbits):
        count: dict[int, int] = {}
        for st in orbit:
            e = (st >> 1) >> 1
            count[e] = count.get(e, 0) + 1
        face_edges[fi] = sorted(e for e, c in count.items() if c % 2 == 1)
    unknown = [sum(1 for e in face_edges[fi] if in_dual[e]) for fi in range(nfaces)]
    pending = [fi for fi in range(nfaces) if unknown[fi] == 1]
    resolved = [False] * nedges
    dual_faces_of: dict[int, tuple[int, int]] = {}
    for e in range(nedges):
        if in_dual[e]:
            dual_faces_of[e] = faces_of_edge(e)
    while pending:
        fi = pending.pop()
        if unknown[fi] != 1:
            continue
        target = None
        acc = 0
        for e in face_edges[fi]:
            if in_dual[e] and not resolved[e]:
                target = e
            else:
                acc ^= hclass[e]
        if target is None:
            continue
        hclass[target] = acc
        resolved[target] = True
        f1, f2 = dual_faces_of[target]
        for fx in (f1, f2):
            unknown[fx] -= 1
            if unknown[fx] == 1:
                pending.append(fx)
    if any(in_dual[e] and not resolved[e] for e in range(nedges)):
        raise EmbeddingError("dual-forest elimination did not converge")
    w1 = list(mesh.neg)
    return w1, hclass, len(leftover)


def _cycle_is_contractible(mesh: _Mesh, cycle: Sequence[int]) -> bool:
    """Exact test for a signature-even, homologically trivial cycle."""
    cut = mesh.cut_along(cycle)
    if cut is None:
        return False  # orientation-reversing, hence noncontractible
    genera = cut.component_genera()
    return len(genera) == 2 and min(genera) == 0


_MODES = {"any": 0, "orientation_reversing": 1, "nonseparating": 2}


def shortest_noncontractible_noose(
    e: RotationEmbedding, mode: str = "any"
) -> Optional[Noose]:
    """A minimum-length noose of the requested kind, or None.

    None is returned on the sphere, and in the restricted modes when no
    noose of that kind exists (orientation-reversing on an orientable
    surface, nonseparating on surfaces without one).
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not e.graph.is_connected():
        raise ValueError("noose search expects a connected embedding")
    eg = euler_genus_of(e)
    if eg == 0:
        return None
    radial = RadialGraph(e)
    mesh = radial.mesh
    w1, hclass, rank = _homology_tables(mesh)
    orientable = is_orientable(e)
    ambiguous_possible = eg >= 3 or (eg == 2 and not orientable)
    if mode == "orientation_reversing" and orientable:
        return None
    adj_ptr = [0]
    adj_dart: list[int] = []
    for x in range(mesh.nnodes):
        adj_dart.extend(mesh.rot[x])
        adj_ptr.append(len(adj_dart))
    ndarts = 2 * len(mesh.edge_ends)
    dart_head = [mesh.dart_head(d) for d in range(ndarts)]
    best_len, best_cycle, ambiguous = core.noose_sweep(
        mesh.nnodes,
        adj_ptr,
        adj_dart,
        dart_head,
        radial.is_vnode(),
        w1,
        hclass,
        _MODES[mode],
        ambiguous_possible,
    )
    if mode == "any":
        for vlen, cyc in ambiguous:
            if best_len >= 0 and vlen >= best_len:
                break
            if not _cycle_is_contractible(mesh, cyc):
                best_len, best_cycle = vlen, cyc
                break
    if best_cycle is None:
        return None

    # classification flags of the winner
    csgn = 0
    ccls = 0
    for d in best_cycle:
        csgn ^= w1[d >> 1]
        ccls ^= hclass[d >> 1]
    seq = []
    nodes = [dart_head[d] for d in best_cycle]
    # rotate so the walk starts at a face node
    for i, nd in enumerate(nodes):
        if nd >= radial.nv:
            nodes = nodes[i:] + nodes[:i]
            break
    for i in range(0, len(nodes), 2):
        fnode, vnode = nodes[i], nodes[i + 1]
        seq.append((fnode - radial.nv, radial.vertex_of_node[vnode]))
    return Noose(seq, best_len, orientation_reversing=bool(csgn), separating=ccls == 0)


def representativity(e: RotationEmbedding) -> Optional[int]:
    """Face-width: length of a shortest noncontractible noose (None on the sphere)."""
    noose = shortest_noncontractible_noose(e, "any")
    return None if noose is None else noose.length


def cut_vertices_of_noose_and_restrict(
    g: Graph, e: RotationEmbedding, noose: Noose
) -> tuple[Graph, RotationEmbedding]:
    """Delete the noose's vertices and re-trace the restriction.

    Punctures left by the deletion are capped by the re-trace.  Cutting
    along a noncontractible noose strictly decreases the Euler genus.
    """
    if g != e.graph:
        raise ValueError("graph does not match the embedding")
    drop = set(noose.vertices)
    if not all(g.has_vertex(v) for v in drop):
        raise ValueError("noose is inconsistent with the embedding")
    before = euler_genus_of(e)
    out = restrict_embedding(e, drop)
    after = euler_genus_of(out)
    if not noose.contractible and after >= before:
        raise EmbeddingError("cutting a noncontractible noose must reduce the genus")
    return out.graph, out
