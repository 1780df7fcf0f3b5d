"""The drawing pipelines: Euler genus and orientable genus.

``draw_euler`` runs: planarity fast path, normalization, skeleton
computation, framed planarization, a planar drawing of the framed
remainder, patch re-insertion (in-face for intact boundary cycles, via
one tube per boundary segment otherwise), greedy re-attachment of the
planarizing vertices, and denormalization.  Every produced embedding is
re-traced; every rejection carries machine-checkable evidence.
``draw_orientable`` adds the noose-cutting loop that removes
nonorientability, with a representativity threshold guarding soundness.
"""

from __future__ import annotations

from typing import Iterable, Optional

from surfgraph.decomp import balanced_separator
from surfgraph.embeddings import (
    EmbeddingError,
    RotationEmbedding,
    add_edge_in_shared_face,
    add_edge_with_handle,
    disjoint_union,
    dumps_canonical,
    embedding_from_payload,
    embedding_to_payload,
    euler_genus_of,
    face_corners,
    is_orientable,
    restrict_embedding,
    trace_faces,
)
from surfgraph.graphs import Graph, edge_key
from surfgraph.gridminor import TooSmall
from surfgraph.nooses import cut_vertices_of_noose_and_restrict, shortest_noncontractible_noose
from surfgraph.normalize import denormalize_embedding, normalize
from surfgraph.patchwork import (
    Patch,
    PatchSet,
    compute_skeleton,
    frame,
    is_frame_vertex,
)
from surfgraph.planarity import embed_patch_in_disk, find_cycle_face, is_planar, planar_embedding
from surfgraph.rejection import (
    Rejected,
    excess_pieces_evidence,
    representativity_evidence,
    reverify_evidence,
)


class PipelineConfig:
    """All tunable thresholds of the approximation pipeline."""

    FIELDS = {
        "treewidth_threshold": 12,
        "min_grid": 3,
        "min_nested": 3,
        "cap_factor": 1,
        "separator_balance": 2 / 3,
        "orientable_alpha": 1,
        "crossing_alpha": 1,
        "crossing_floor": 0,
        "threads": 1,
    }

    def __init__(self, **kwargs):
        for k, default in self.FIELDS.items():
            setattr(self, k, kwargs.pop(k, default))
        if kwargs:
            raise ValueError(f"unknown config keys: {sorted(kwargs)}")
        if self.threads < 1:
            raise ValueError("threads must be positive")

    @classmethod
    def from_overrides(cls, pairs: Iterable[str]) -> "PipelineConfig":
        kwargs = {}
        for pair in pairs:
            if "=" not in pair:
                raise ValueError(f"override must look like key=value: {pair!r}")
            k, v = pair.split("=", 1)
            k = k.strip()
            if k not in cls.FIELDS:
                raise ValueError(f"unknown config key: {k}")
            template = cls.FIELDS[k]
            kwargs[k] = type(template)(float(v)) if isinstance(template, float) else int(v)
        return cls(**kwargs)

    def to_payload(self) -> dict:
        return {k: getattr(self, k) for k in sorted(self.FIELDS)}


DEFAULT_CONFIG = PipelineConfig()


class GenusCertificate:
    """Either a drawing with its genus, or rejection evidence."""

    __slots__ = ("verdict", "embedding", "genus", "orientable", "evidence", "config")

    def __init__(self, verdict, embedding, genus, orientable, evidence, config):
        self.verdict = verdict
        self.embedding = embedding
        self.genus = genus
        self.orientable = orientable
        self.evidence = evidence
        self.config = config

    @classmethod
    def drawn(cls, emb: RotationEmbedding, cfg: PipelineConfig) -> "GenusCertificate":
        return cls(
            "drawn", emb, euler_genus_of(emb), is_orientable(emb), None, cfg.to_payload()
        )

    @classmethod
    def rejected(cls, evidence: dict, cfg: PipelineConfig) -> "GenusCertificate":
        return cls("rejected", None, None, None, evidence, cfg.to_payload())

    def revalidate(self, g: Graph) -> bool:
        if self.verdict == "drawn":
            emb = self.embedding
            try:
                return (
                    emb.graph == g
                    and euler_genus_of(emb) == self.genus
                    and is_orientable(emb) == self.orientable
                )
            except EmbeddingError:
                return False
        return reverify_evidence(g, self.evidence)

    def to_payload(self) -> dict:
        out = {
            "kind": "genus-certificate",
            "verdict": self.verdict,
            "config": self.config,
        }
        if self.verdict == "drawn":
            out["genus"] = self.genus
            out["orientable"] = self.orientable
            out["embedding"] = embedding_to_payload(self.embedding)
        else:
            out["rejection_evidence"] = self.evidence
        return out


# -- framed planarization -------------------------------------------------------


def planarize_framed_skeleton(
    skel: Graph, ps: PatchSet, genus_budget: int, cfg: PipelineConfig
) -> list[int]:
    """Vertices whose removal makes every component's framing planar.

    Recursion over balanced separators; a level holding more than
    ``cap_factor * budget`` vertex-disjoint pieces with nonplanar
    framings certifies (through the framing subgraph and genus lemmas)
    that the Euler genus exceeds the budget.
    """
    cycles = [list(c) for c in ps.boundaries()]
    cap = cfg.cap_factor * genus_budget

    def framed_planar(h: Graph) -> bool:
        return is_planar(frame(h, cycles))

    out: set[int] = set()
    level = 0
    current = [skel.induced(c) for c in skel.components()]
    while True:
        bad = [h for h in current if not framed_planar(h)]
        if not bad:
            break
        if len(bad) > cap:
            evidence = excess_pieces_evidence(
                "framed_planarization",
                level,
                [h.vertices for h in bad],
                cap,
                genus_budget,
            )
            evidence["cycles"] = [list(c) for c in cycles]
            raise Rejected(evidence)
        nxt: list[Graph] = []
        for h in bad:
            sep = balanced_separator(h, cfg.separator_balance).separator
            out |= sep
            rest = h.remove_vertices(sep)
            nxt.extend(rest.induced(c) for c in rest.components())
        current = nxt
        level += 1
    # greedy pruning: drop separator vertices while all framings stay planar
    for v in sorted(out):
        cand = out - {v}
        rest = skel.remove_vertices(cand)
        if all(framed_planar(rest.induced(c)) for c in rest.components()):
            out = cand
    return sorted(out)


# -- patch re-insertion ----------------------------------------------------------


def _disk_blocks(patch: Patch) -> tuple[RotationEmbedding, dict[int, tuple[int, ...]]]:
    """Disk drawing of the patch and, per boundary vertex, its interior darts.

    The block at a boundary vertex lists its neighbours strictly inside
    the disk interior, in rotation order linearised at the
    boundary-face corner.  Boundary chords stay with the host drawing
    and are excluded here.
    """
    x = Graph(patch.vertices, patch.edges)
    disk = embed_patch_in_disk(x, patch.boundary)
    fi = find_cycle_face(disk, list(patch.boundary))
    if fi is None:
        raise EmbeddingError("disk drawing lost its boundary face")
    corners = face_corners(disk)[fi]
    corner_at = {v: j for (v, j) in corners}
    interior = patch.interior
    blocks: dict[int, tuple[int, ...]] = {}
    for c in patch.boundary:
        rot = disk.rotation[c]
        j = corner_at[c]
        lin = rot[j + 1 :] + rot[: j + 1]
        blocks[c] = tuple(w for w in lin if w in interior)
    return disk, blocks


def _insert_case_i(
    emb: RotationEmbedding, patch: Patch, cycle_id: int
) -> RotationEmbedding:
    """Intact boundary: swap the collar for the patch interior, genus unchanged."""
    base = euler_genus_of(emb)
    drop = [v for v in emb.graph.vertices if is_frame_vertex(v) and _frame_cycle(v) == cycle_id]
    emb = restrict_embedding(emb, drop)
    fi = find_cycle_face(emb, list(patch.boundary))
    if fi is None:
        raise EmbeddingError("collar removal did not leave the boundary as a face")
    disk, blocks = _disk_blocks(patch)
    corners = face_corners(emb)[fi]
    corner_at = {v: j for (v, j) in corners}
    interior = sorted(patch.interior)
    new_edges = [e for e in patch.edges if e not in set(emb.graph.edges)]
    g2 = Graph(list(emb.graph.vertices) + interior, list(emb.graph.edges) + new_edges)
    for mirror in (False, True):
        rot = dict(emb.rotation)
        for v in interior:
            rot[v] = disk.rotation[v][::-1] if mirror else disk.rotation[v]
        ok = True
        for c in patch.boundary:
            blk = blocks[c][::-1] if mirror else blocks[c]
            if not blk:
                continue
            j = corner_at.get(c)
            if j is None:
                ok = False
                break
            base_rot = rot[c]
            rot[c] = base_rot[: j + 1] + blk + base_rot[j + 1 :]
        if not ok:
            continue
        sgn = dict(emb.sign)
        for e in new_edges:
            sgn[e] = 1
        cand = RotationEmbedding(g2, rot, sgn)
        try:
            if euler_genus_of(cand) == base:
                return cand
        except EmbeddingError:
            continue
    raise EmbeddingError("patch interior insertion changed the genus")


def _frame_cycle(v: int) -> int:
    from surfgraph.patchwork import FRAME_BASE, _FRAME_STRIDE

    return ((v - FRAME_BASE) >> 1) // _FRAME_STRIDE


def _insert_case_ii(
    emb: RotationEmbedding,
    patch: Patch,
    cycle_id: int,
    host_graph: Graph,
) -> tuple[RotationEmbedding, int]:
    """Broken boundary: splice the pre-drawn interior at every segment.

    Each segment becomes one tube: the interior darts of its vertices
    are inserted at the segment's host-face corners, with the block
    direction and the tube signature chosen per segment by the traced
    genus (one handle or one Moebius band each).  Returns the new
    embedding and the genus increase.
    """
    drop = [v for v in emb.graph.vertices if is_frame_vertex(v) and _frame_cycle(v) == cycle_id]
    emb = restrict_embedding(emb, drop)
    base = euler_genus_of(emb)
    disk, blocks = _disk_blocks(patch)
    interior = sorted(patch.interior)
    segments = _segments_present(patch.boundary, host_graph)
    seg_vertices = sorted({p for seg in segments for p in seg})
    present = set(emb.graph.vertices) | set(interior)
    new_edges = [
        e
        for e in patch.edges
        if (e[0] in patch.interior or e[1] in patch.interior)
        and e[0] in present
        and e[1] in present
    ]
    g2 = Graph(list(emb.graph.vertices) + interior, list(emb.graph.edges) + new_edges)
    faces = trace_faces(emb)
    corners = face_corners(emb)
    seg_face: list[int] = []
    for seg in segments:
        fi = None
        for i, f in enumerate(faces):
            if set(seg) <= f.vertices:
                fi = i
                break
        if fi is None:
            raise EmbeddingError("segment lost its one-sided face")
        seg_face.append(fi)
    corner_at: list[dict[int, int]] = []
    for fi in seg_face:
        at = {}
        for (v, j) in corners[fi]:
            at.setdefault(v, j)
        corner_at.append(at)

    def build(variant: list[tuple[bool, int]]) -> Optional[RotationEmbedding]:
        rot = dict(emb.rotation)
        sgn = dict(emb.sign)
        for v in interior:
            rot[v] = tuple(w for w in disk.rotation[v] if w in present)
        for e in new_edges:
            sgn[e] = 1
        for si, seg in enumerate(segments):
            rev, tube_sign = variant[si]
            for p in seg:
                blk = blocks[p][::-1] if rev else blocks[p]
                if not blk:
                    continue
                j = corner_at[si].get(p)
                if j is None:
                    return None
                cur = rot[p]
                rot[p] = cur[: j + 1] + blk + cur[j + 1 :]
                if tube_sign == -1:
                    for x in blk:
                        sgn[edge_key(p, x)] = -1
        cand = RotationEmbedding(g2, rot, sgn)
        try:
            cand.validate()
        except EmbeddingError:
            return None
        return cand

    options = [(False, 1), (True, 1), (False, -1), (True, -1)]
    s = len(segments)
    best: Optional[tuple[int, RotationEmbedding]] = None
    if s <= 3:
        from itertools import product

        combos = list(product(options, repeat=s))
        for combo in combos:
            cand = build(list(combo))
            if cand is None:
                continue
            delta = euler_genus_of(cand) - base
            if best is None or delta < best[0]:
                best = (delta, cand)
            if best[0] <= s:
                break
    else:
        variant = [(False, 1)] * s
        for _ in range(2):
            for si in range(s):
                local_best = None
                for opt in options:
                    trial = list(variant)
                    trial[si] = opt
                    cand = build(trial)
                    if cand is None:
                        continue
                    delta = euler_genus_of(cand) - base
                    if local_best is None or delta < local_best[0]:
                        local_best = (delta, opt, cand)
                if local_best is not None:
                    variant[si] = local_best[1]
                    best = (local_best[0], local_best[2])
    if best is None:
        raise EmbeddingError("case (ii) splice failed")
    return best[1], best[0]


def _segments_present(boundary: tuple[int, ...], host: Graph) -> list[list[int]]:
    """Maximal runs of boundary vertices whose connecting edges are in host."""
    k = len(boundary)
    present_edge = [
        host.has_edge(boundary[i], boundary[(i + 1) % k]) for i in range(k)
    ]
    present_vertex = [host.has_vertex(v) for v in boundary]
    if all(present_edge):
        return [list(boundary)]
    segs: list[list[int]] = []
    used = [False] * k
    for start in range(k):
        if present_edge[start] and not present_edge[(start - 1) % k]:
            run = [start]
            j = start
            while present_edge[(j + 1) % k]:
                j = (j + 1) % k
                run.append(j)
            cols = run + [(run[-1] + 1) % k]
            segs.append([boundary[c] for c in cols])
            for c in cols:
                used[c] = True
    for i in range(k):
        if present_vertex[i] and not used[i]:
            if not (present_edge[i] or present_edge[(i - 1) % k]):
                segs.append([boundary[i]])
    return segs


# -- reattachment of removed vertices --------------------------------------------


def reattach_vertices(
    emb: RotationEmbedding, g: Graph, vertices: Iterable[int]
) -> RotationEmbedding:
    """Re-add deleted vertices with all their g-edges, handles last.

    Each vertex is placed into the face holding most of its pending
    neighbours (a genus-free insertion), then every edge that can ride
    inside an existing face is added, and only the remainder pays for a
    handle.
    """
    from surfgraph.embeddings import _try_insert_edge

    vs = sorted(set(vertices))
    present = set(emb.graph.vertices) | set(vs)
    pending: set[tuple[int, int]] = set()
    for v in vs:
        for w in g.neighbors(v):
            if w in present:
                ek = edge_key(v, w)
                if not emb.graph.has_edge(*ek):
                    pending.add(ek)
    cur = RotationEmbedding(
        emb.graph.add_vertices(vs),
        {**emb.rotation, **{v: () for v in vs}},
        emb.sign,
    )

    def drain_shared() -> None:
        nonlocal cur
        progress = True
        while progress:
            progress = False
            for ek in sorted(pending):
                u, w = ek
                if cur.graph.degree(u) == 0 or cur.graph.degree(w) == 0:
                    continue
                trial = add_edge_in_shared_face(cur, u, w)
                if trial is not None:
                    cur = trial
                    pending.discard(ek)
                    progress = True

    drain_shared()
    isolated = [v for v in vs if cur.graph.degree(v) == 0]
    while isolated:
        # next vertex: most pending neighbours already drawn
        def gain(v):
            return sum(
                1
                for w in g.neighbors(v)
                if edge_key(v, w) in pending and cur.graph.degree(w) > 0
            )

        isolated.sort(key=lambda v: (-gain(v), v))
        v = isolated.pop(0)
        nbrs = [
            w
            for w in g.neighbors(v)
            if edge_key(v, w) in pending and cur.graph.degree(w) > 0
        ]
        if not nbrs:
            isolated.append(v)
            if all(cur.graph.degree(x) == 0 for x in isolated):
                # a fully pending cluster: seed it with one bare edge
                v = isolated.pop(0)
                ws = [w for w in g.neighbors(v) if edge_key(v, w) in pending]
                if not ws:
                    continue
                w = ws[0]
                cur = _try_insert_edge(cur, v, w, 0, 0, 1)
                pending.discard(edge_key(v, w))
                drain_shared()
                isolated = [x for x in isolated if cur.graph.degree(x) == 0]
            continue
        # pick the face seeing most pending neighbours of v
        best = None
        for fi, f in enumerate(trace_faces(cur)):
            count = sum(1 for w in nbrs if w in f.vertices)
            if count and (best is None or count > best[0]):
                best = (count, fi, f)
        count, fi, f = best
        anchor = min(w for w in nbrs if w in f.vertices)
        corners = face_corners(cur)[fi]
        j = next(jj for (x, jj) in corners if x == anchor)
        cur = _try_insert_edge(cur, anchor, v, j, 0, 1)
        pending.discard(edge_key(anchor, v))
        drain_shared()
        isolated = [x for x in isolated if cur.graph.degree(x) == 0]
    # whatever is left needs handles; keep draining after each one
    while pending:
        ek = sorted(pending)[0]
        pending.discard(ek)
        cur = add_edge_with_handle(cur, *ek)
        drain_shared()
    return cur


# -- the Euler-genus pipeline ----------------------------------------------------


def _draw_euler_component(g: Graph, budget: int, cfg: PipelineConfig) -> RotationEmbedding:
    if is_planar(g):
        return planar_embedding(g)
    if budget <= 0:
        raise Rejected(
            excess_pieces_evidence("nonplanar_component", 0, [g.vertices], 0, 0)
        )
    gn, log = normalize(g)
    ps, skel = compute_skeleton(
        gn,
        budget,
        treewidth_threshold=cfg.treewidth_threshold,
        min_nested=cfg.min_nested,
        balance=cfg.separator_balance,
        cap_factor=cfg.cap_factor,
    )
    s = planarize_framed_skeleton(skel, ps, budget, cfg)
    remainder = skel.remove_vertices(s)
    cycles = [list(c) for c in ps.boundaries()]
    framed = frame(remainder, cycles)
    emb = planar_embedding(framed)
    # patch extensions
    ext_budget = 0
    ext_used = 0
    for ci, patch in enumerate(ps):
        n_c = sum(1 for e in patch.boundary_edges() if not remainder.has_edge(*e))
        if n_c == 0:
            emb = _insert_case_i(emb, patch, ci)
        else:
            emb, delta = _insert_case_ii(emb, patch, ci, remainder)
            ext_budget += 3 * n_c
            ext_used += delta
            if delta > 3 * n_c:
                raise EmbeddingError(
                    f"patch extension used {delta} > 3*n_C = {3 * n_c}"
                )
    # drop any remaining collar vertices, then re-attach the separator
    leftover = [v for v in emb.graph.vertices if is_frame_vertex(v)]
    emb = restrict_embedding(emb, leftover)
    if emb.graph != gn.remove_vertices(s):
        raise EmbeddingError("pipeline graph bookkeeping failed before reattachment")
    emb = reattach_vertices(emb, gn, s)
    if emb.graph != gn:
        raise EmbeddingError("reattachment did not restore the normalized graph")
    emb = denormalize_embedding(log, emb)
    if emb.graph != g:
        raise EmbeddingError("denormalization did not restore the input graph")
    return emb


def draw_euler(g: Graph, budget: int, cfg: Optional[PipelineConfig] = None) -> GenusCertificate:
    """Draw g into a surface, or soundly decide its Euler genus exceeds budget."""
    cfg = cfg or DEFAULT_CONFIG
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    try:
        parts = [
            _draw_euler_component(g.induced(comp), budget, cfg)
            for comp in g.components()
        ]
    except Rejected as r:
        return GenusCertificate.rejected(r.evidence, cfg)
    emb = disjoint_union(parts) if len(parts) != 1 else parts[0]
    if not parts:
        emb = RotationEmbedding(g, {})
    cert = GenusCertificate.drawn(emb, cfg)
    if not cert.revalidate(g):
        raise EmbeddingError("drawn certificate failed revalidation")
    return cert


# -- the orientable-genus pipeline -----------------------------------------------


def _first_nonorientable_component(emb: RotationEmbedding) -> Optional[RotationEmbedding]:
    for comp in emb.graph.components():
        sub = restrict_embedding(emb, set(emb.graph.vertices) - set(comp))
        if not is_orientable(sub):
            return sub
    return None


def _orient_component(
    g: Graph, emb: RotationEmbedding, budget: int, cfg: PipelineConfig
) -> RotationEmbedding:
    removed: list[int] = []
    cur = emb
    while True:
        sub = _first_nonorientable_component(cur)
        if sub is None:
            break
        rho_noose = shortest_noncontractible_noose(sub, "any")
        if rho_noose is None:
            raise EmbeddingError("nonorientable embedding without a noncontractible noose")
        threshold = cfg.orientable_alpha * budget * budget
        if rho_noose.length > threshold:
            raise Rejected(
                representativity_evidence(
                    "orientable_genus",
                    rho_noose.length,
                    threshold,
                    budget,
                    rho_noose.vertices,
                )
            )
        removed.extend(rho_noose.vertices)
        cur = restrict_embedding(cur, set(rho_noose.vertices))
    cur = reattach_vertices(cur, g, removed)
    if not is_orientable(cur):
        raise EmbeddingError("orientable reattachment produced a nonorientable surface")
    return cur


def draw_orientable(
    g: Graph, budget: int, cfg: Optional[PipelineConfig] = None
) -> GenusCertificate:
    """Draw g into an orientable surface, or decide genus(g) > budget.

    Runs the Euler pipeline at Euler budget 2 * budget (an orientable
    genus-b graph has Euler genus at most 2b), then cuts along
    noncontractible nooses while the surface is nonorientable.  A
    nonorientable surface of representativity above alpha * budget^2
    certifies the decision.
    """
    cfg = cfg or DEFAULT_CONFIG
    base = draw_euler(g, 2 * budget, cfg)
    if base.verdict == "rejected":
        return base
    try:
        parts = []
        start = base.embedding
        for comp in g.components():
            comp_emb = restrict_embedding(
                start, set(start.graph.vertices) - set(comp)
            )
            parts.append(_orient_component(g.induced(comp), comp_emb, budget, cfg))
    except Rejected as r:
        return GenusCertificate.rejected(r.evidence, cfg)
    emb = disjoint_union(parts) if len(parts) != 1 else parts[0]
    if not parts:
        emb = RotationEmbedding(g, {})
    cert = GenusCertificate.drawn(emb, cfg)
    if not cert.revalidate(g) or not cert.orientable or cert.genus % 2 == 1:
        raise EmbeddingError("orientable certificate failed revalidation")
    return cert
