"""Grid minors in planar graphs, flat grid minors, and nested cycle sequences.

The planar grid-minor construction is a practical stand-in for the
branch-decomposition machinery: split the boundary of a planar piece
into four arcs, route two families of vertex-disjoint paths between
opposite arcs (every pair from different families must cross, by the
Jordan curve theorem), and read a grid minor off the crossing pattern.
The returned mapping is always verified; only its size is best effort.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from surfgraph.decomp import minimal_planarizing_set, planarizing_set
from surfgraph.graphs import Graph, MinorMapping, grid_graph, verify_minor_mapping
from surfgraph.planarity import is_planar, planar_embedding
from surfgraph.embeddings import trace_faces


class TooSmall(Exception):
    """The structure is too small for the requested parameters."""


class GridMinor:
    """An r x k grid minor with its verified branch-set mapping."""

    __slots__ = ("rows", "cols", "mapping")

    def __init__(self, rows: int, cols: int, mapping: MinorMapping):
        self.rows = rows
        self.cols = cols
        self.mapping = mapping

    @property
    def size(self) -> int:
        return min(self.rows, self.cols)

    def branch_set(self, i: int, j: int) -> frozenset[int]:
        return self.mapping.branch_sets[i * self.cols + j]

    def verify(self) -> bool:
        want = grid_graph(self.rows, self.cols)
        return self.mapping.minor == want and verify_minor_mapping(self.mapping)

    def __repr__(self) -> str:
        return f"GridMinor({self.rows}x{self.cols})"


def _single_cell(g: Graph) -> GridMinor:
    v = g.vertices[0]
    mm = MinorMapping(g, grid_graph(1, 1), {0: frozenset([v])})
    return GridMinor(1, 1, mm)


def _two_by_two(g: Graph) -> Optional[GridMinor]:
    """A 2x2 grid (= C4) minor from any cycle with at least four vertices."""
    for root in g.vertices:
        parent = {root: root}
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w in g.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    path_u, path_w = [u], [w]
                    x, y = u, w
                    while x != root:
                        x = parent[x]
                        path_u.append(x)
                    while y != root:
                        y = parent[y]
                        path_w.append(y)
                    su, sw = set(path_u), set(path_w)
                    lca = next(x for x in path_u if x in sw)
                    cyc = (
                        path_u[: path_u.index(lca) + 1]
                        + list(reversed(path_w[: path_w.index(lca)]))
                    )
                    if len(cyc) >= 4:
                        quarter = len(cyc) // 4
                        cuts = [0, quarter, 2 * quarter, 3 * quarter, len(cyc)]
                        sets = [
                            frozenset(cyc[cuts[t] : cuts[t + 1]]) for t in range(4)
                        ]
                        # C4 order 0-1-3-2-0 in grid labels (grid 2x2 edges:
                        # 0-1, 0-2, 1-3, 2-3)
                        mm = MinorMapping(
                            g,
                            grid_graph(2, 2),
                            {0: sets[0], 1: sets[1], 3: sets[2], 2: sets[3]},
                        )
                        if verify_minor_mapping(mm):
                            return GridMinor(2, 2, mm)
    return None


# -- vertex-disjoint path packing ---------------------------------------------


def _disjoint_paths(
    g: Graph, sources: Sequence[int], targets: Sequence[int], forbidden: set[int]
) -> list[list[int]]:
    """Maximum set of vertex-disjoint source-target paths avoiding forbidden.

    Unit vertex capacities via node splitting and BFS augmentation; the
    integral flow is decomposed by walking the net flow from each
    saturated source.
    """
    src = sorted(set(sources) - forbidden)
    dst = set(targets) - forbidden
    if not src or not dst:
        return []
    S, T = ("S", 0), ("T", 0)
    init: dict[tuple, dict[tuple, int]] = {}

    def arc(a, b, c):
        init.setdefault(a, {})[b] = c
        init.setdefault(b, {}).setdefault(a, 0)

    for v in g.vertices:
        if v not in forbidden:
            arc((v, 0), (v, 1), 1)
    for u, v in g.edges:
        if u not in forbidden and v not in forbidden:
            arc((u, 1), (v, 0), 1)
            arc((v, 1), (u, 0), 1)
    for a in src:
        arc(S, (a, 0), 1)
    for b in sorted(dst):
        arc((b, 1), T, 1)
    cap = {x: dict(ys) for x, ys in init.items()}
    while True:
        parent: dict[tuple, tuple] = {S: S}
        queue = [S]
        qi = 0
        while qi < len(queue) and T not in parent:
            x = queue[qi]
            qi += 1
            for y in sorted(cap.get(x, {}), key=str):
                if cap[x][y] > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if T not in parent:
            break
        y = T
        while y != S:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
    # net flow per arc
    net: dict[tuple, dict[tuple, int]] = {}
    for x, ys in init.items():
        for y, c in ys.items():
            f = c - cap[x][y]
            if f > 0:
                net.setdefault(x, {})[y] = f
    paths = []
    for a in src:
        if net.get(S, {}).get((a, 0), 0) != 1:
            continue
        net[S][(a, 0)] = 0
        path = [a]
        node = (a, 0)
        while node != T:
            choices = sorted(
                (y for y, f in net.get(node, {}).items() if f > 0), key=str
            )
            if not choices:
                raise RuntimeError("flow decomposition stuck")
            y = choices[0]
            net[node][y] -= 1
            if y != T and y[1] == 0 and y[0] != path[-1]:
                path.append(y[0])
            node = y
        paths.append(path)
    return paths


# -- crossing-family grid extraction ------------------------------------------


def _boundary_cycle(g: Graph) -> list[int]:
    """Distinct vertices of the largest face of a planar embedding, in order."""
    emb = planar_embedding(g)
    faces = trace_faces(emb)
    best = max(faces, key=lambda f: (len(f.vertices), -faces.index(f)))
    seen: set[int] = set()
    out = []
    for _, v in best.walk:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _blocks_along(path: Sequence[int], member: set[int]) -> list[tuple[int, int]]:
    """Maximal index intervals of path positions lying in member."""
    blocks = []
    i = 0
    while i < len(path):
        if path[i] in member:
            j = i
            while j + 1 < len(path) and path[j + 1] in member:
                j += 1
            blocks.append((i, j))
            i = j + 1
        else:
            i += 1
    return blocks


def _crossing_grid(g: Graph, arcs=None) -> Optional[GridMinor]:
    if arcs is None:
        boundary = _boundary_cycle(g)
        nb = len(boundary)
        if nb < 4:
            return None
        q = nb // 4
        arcs = (
            boundary[0:q],
            boundary[q : 2 * q],
            boundary[2 * q : 3 * q],
            boundary[3 * q :],
        )
    arcN, arcE, arcS, arcW = arcs
    if not (arcN and arcE and arcS and arcW):
        return None
    rows = _disjoint_paths(g, arcN, arcS, set(arcE) | set(arcW))
    cols = _disjoint_paths(g, arcW, arcE, set(arcN) | set(arcS))
    if not rows or not cols:
        return None
    posN = {v: i for i, v in enumerate(arcN)}
    posW = {v: i for i, v in enumerate(arcW)}
    rows.sort(key=lambda p: posN[p[0]])
    cols.sort(key=lambda p: posW[p[0]])

    def interval_maps():
        rsets = [set(r) for r in rows]
        csets = [set(c) for c in cols]
        return rsets, csets

    # prune until, along every row, the column blocks are disjoint singles in
    # a consistent order, and symmetrically for columns
    for _ in range(len(rows) + len(cols) + 4):
        rsets, csets = interval_maps()
        conflicts: dict[tuple[str, int], int] = {}

        def mark(kind, idx):
            conflicts[(kind, idx)] = conflicts.get((kind, idx), 0) + 1

        ok = True
        row_orders = []
        for ri, r in enumerate(rows):
            blocks = []
            for ci, cs in enumerate(csets):
                bl = _blocks_along(r, cs)
                if len(bl) == 0:
                    ok = False
                    mark("col", ci)
                elif len(bl) > 1:
                    ok = False
                    mark("col", ci)
                    mark("row", ri)
                else:
                    blocks.append((bl[0][0], bl[0][1], ci))
            blocks.sort()
            for t in range(len(blocks) - 1):
                if blocks[t][1] >= blocks[t + 1][0]:
                    ok = False
                    mark("col", blocks[t][2])
                    mark("col", blocks[t + 1][2])
            row_orders.append([b[2] for b in blocks])
        col_orders = []
        for ci, c in enumerate(cols):
            blocks = []
            for ri, rs in enumerate(rsets):
                bl = _blocks_along(c, rs)
                if len(bl) == 0:
                    ok = False
                    mark("row", ri)
                elif len(bl) > 1:
                    ok = False
                    mark("row", ri)
                    mark("col", ci)
                else:
                    blocks.append((bl[0][0], bl[0][1], ri))
            blocks.sort()
            for t in range(len(blocks) - 1):
                if blocks[t][1] >= blocks[t + 1][0]:
                    ok = False
                    mark("row", blocks[t][2])
                    mark("row", blocks[t + 1][2])
            col_orders.append([b[2] for b in blocks])
        if ok:
            # orientation consistency: normalise directions, then require
            # identical visit orders everywhere
            ref = row_orders[0]
            for ri in range(len(rows)):
                if row_orders[ri] == ref[::-1]:
                    rows[ri] = rows[ri][::-1]
                    row_orders[ri] = ref
            refc = col_orders[0]
            for ci in range(len(cols)):
                if col_orders[ci] == refc[::-1]:
                    cols[ci] = cols[ci][::-1]
                    col_orders[ci] = refc
            if all(o == ref for o in row_orders) and all(
                o == refc for o in col_orders
            ):
                # relabel both families so every visit order is 0..k-1
                cols = [cols[ci] for ci in ref]
                rows = [rows[ri] for ri in refc]
                break
            # inconsistent order: drop the last row or column
            if len(rows) >= len(cols) and len(rows) > 1:
                rows.pop()
            elif len(cols) > 1:
                cols.pop()
            else:
                return None
            continue
        kind, idx = max(conflicts, key=lambda k: (conflicts[k], k[0], -k[1]))
        if kind == "row" and len(rows) > 1:
            rows.pop(idx)
        elif kind == "col" and len(cols) > 1:
            cols.pop(idx)
        elif kind == "row":
            cols.pop(0)
        else:
            rows.pop(0)
        if not rows or not cols:
            return None
    else:
        return None

    r = min(len(rows), len(cols))
    if r < 2:
        return None
    rows = rows[:r]
    # re-normalise column orders after cropping rows
    cols = cols[:r]
    return _build_from_families(g, rows, cols)


def _build_from_families(
    g: Graph, rows: list[list[int]], cols: list[list[int]]
) -> Optional[GridMinor]:
    a, b = len(rows), len(cols)
    csets = [set(c) for c in cols]
    rsets = [set(r) for r in rows]
    row_blocks = []
    for r in rows:
        blocks = {}
        for ci, cs in enumerate(csets):
            bl = _blocks_along(r, cs)
            if len(bl) != 1:
                return None
            blocks[ci] = bl[0]
        order = sorted(blocks, key=lambda ci: blocks[ci][0])
        if order != list(range(b)):
            return None
        row_blocks.append(blocks)
    col_blocks = []
    for c in cols:
        blocks = {}
        for ri, rs in enumerate(rsets):
            bl = _blocks_along(c, rs)
            if len(bl) != 1:
                return None
            blocks[ri] = bl[0]
        order = sorted(blocks, key=lambda ri: blocks[ri][0])
        if order != list(range(a)):
            return None
        col_blocks.append(blocks)
    branch: dict[int, set[int]] = {}
    for i in range(a):
        r = rows[i]
        for j in range(b):
            s = row_blocks[i][j][0]
            end = row_blocks[i][j + 1][0] - 1 if j + 1 < b else row_blocks[i][j][1]
            cell = set(r[s : end + 1])
            if j + 1 < b and i + 1 < a:
                pass
            branch[i * b + j] = cell
    for j in range(b):
        c = cols[j]
        for i in range(a - 1):
            e_ij = col_blocks[j][i][1]
            s_next = col_blocks[j][i + 1][0]
            connector = c[e_ij + 1 : s_next]
            branch[i * b + j] |= set(connector)
    mm = MinorMapping(
        g, grid_graph(a, b), {k: frozenset(s) for k, s in branch.items()}
    )
    if not verify_minor_mapping(mm):
        return None
    return GridMinor(a, b, mm)


def _cut_open_variant(g: Graph) -> Optional[GridMinor]:
    """Crossing grid after slicing between the two largest faces.

    Annulus-shaped pieces (for instance planarized torus grids) have
    their crossing structure hidden behind two big boundary faces;
    removing a shortest path between them opens the annulus into a
    disk.  The construction stays a valid minor of g since the sliced
    graph is an induced subgraph.
    """
    emb = planar_embedding(g)
    faces = sorted(trace_faces(emb), key=lambda f: -len(f.vertices))
    if len(faces) < 2 or len(faces[1].vertices) < 8:
        return None
    src = sorted(faces[0].vertices)
    dst = faces[1].vertices
    parent = {v: v for v in src}
    queue = list(src)
    qi = 0
    hit = None
    while qi < len(queue) and hit is None:
        u = queue[qi]
        qi += 1
        if u in dst:
            hit = u
            break
        for w in g.neighbors(u):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if hit is None:
        return None
    path = [hit]
    while parent[path[-1]] != path[-1]:
        path.append(parent[path[-1]])
    rest = g.remove_vertices(path)
    comps = rest.components()
    if not comps:
        return None
    piece = rest.induced(max(comps, key=len))
    # classify the opened boundary: the remnants of the two faces become
    # the N and S arcs, the two shores of the cut path become W and E
    f1set, f2set = set(faces[0].vertices), set(faces[1].vertices)
    boundary = _boundary_cycle(piece)
    labels = []
    for v in boundary:
        if v in f1set and v not in f2set:
            labels.append("N")
        elif v in f2set and v not in f1set:
            labels.append("S")
        else:
            labels.append("-")
    cut = None
    runs: dict[str, list[int]] = {"N": [], "S": []}
    nb = len(boundary)
    # longest N run and longest S run on the boundary circle
    for want in ("N", "S"):
        best_run: list[int] = []
        i = 0
        while i < nb:
            if labels[i] != want:
                i += 1
                continue
            j = i
            run = []
            while labels[j % nb] == want and len(run) < nb:
                run.append(boundary[j % nb])
                j += 1
            if len(run) > len(best_run):
                best_run = run
            i = j if j > i else i + 1
        runs[want] = best_run
    if runs["N"] and runs["S"]:
        nset, sset = set(runs["N"]), set(runs["S"])
        ipos = {v: i for i, v in enumerate(boundary)}
        n_end = max(ipos[v] for v in runs["N"])
        s_end = max(ipos[v] for v in runs["S"])
        side1 = [v for v in boundary if v not in nset and v not in sset]
        # split the leftovers into the two boundary intervals between N and S
        w_arc, e_arc = [], []
        n_idx = sorted(ipos[v] for v in runs["N"])
        s_idx = sorted(ipos[v] for v in runs["S"])
        for v in side1:
            i = ipos[v]
            after_n = (i - n_idx[-1]) % nb
            after_s = (i - s_idx[-1]) % nb
            if after_n < after_s:
                w_arc.append(v)
            else:
                e_arc.append(v)
        if w_arc and e_arc:
            cut = _crossing_grid(piece, (runs["N"], e_arc, runs["S"], w_arc))
    if cut is None:
        cut = _crossing_grid(piece)
    if cut is None:
        return None
    mm = MinorMapping(g, cut.mapping.minor, cut.mapping.branch_sets)
    if not verify_minor_mapping(mm):
        return None
    return GridMinor(cut.rows, cut.cols, mm)


def planar_grid_minor(g: Graph) -> GridMinor:
    """A verified square-ish grid minor of a planar graph.

    Crossing-path construction on the boundary of the largest face,
    with a cut-open variant for annulus-shaped pieces; a cycle-based
    2x2 and a single vertex are the fallbacks, so nonempty input always
    yields a result.
    """
    if g.num_vertices() == 0:
        raise ValueError("empty graph")
    if not is_planar(g):
        raise ValueError("planar_grid_minor expects a planar graph")
    best: Optional[GridMinor] = None
    if g.num_vertices() >= 8 and g.is_connected():
        for builder in (_crossing_grid, _cut_open_variant):
            try:
                cand = builder(g)
            except Exception:
                cand = None
            if cand is not None and (best is None or cand.size > best.size):
                best = cand
    if best is None or best.size < 2:
        two = _two_by_two(g)
        if two is not None and (best is None or two.size > best.size):
            best = two
    if best is None:
        best = _single_cell(g)
    if not best.verify():
        raise RuntimeError("grid minor construction produced an invalid mapping")
    return best


# -- subgrid persistence -------------------------------------------------------


def surviving_subgrid(gm: GridMinor, deleted: Iterable[int]) -> GridMinor:
    """A square subgrid minor of the punctured grid.

    Contract: r' >= r - f.  Construction: keep the rows and columns
    untouched by deletions (the punctured grid contains their full
    crossing family), or take the largest deletion-free square window,
    whichever is bigger.
    """
    if gm.rows != gm.cols:
        raise ValueError("surviving_subgrid expects a square grid")
    r = gm.rows
    deleted = set(deleted)
    if not all(0 <= d < r * r for d in deleted):
        raise ValueError("deleted cells out of range")
    host = grid_graph(r, r).remove_vertices(deleted)
    if not deleted:
        ident = MinorMapping(
            host, grid_graph(r, r), {v: frozenset([v]) for v in range(r * r)}
        )
        return GridMinor(r, r, ident)
    rows_hit = {d // r for d in deleted}
    cols_hit = {d % r for d in deleted}
    keep_rows = [i for i in range(r) if i not in rows_hit]
    keep_cols = [j for j in range(r) if j not in cols_hit]
    r1 = min(len(keep_rows), len(keep_cols))
    # largest all-clear square window
    best = [[0] * r for _ in range(r)]
    r2, at = 0, (0, 0)
    for i in range(r):
        for j in range(r):
            if i * r + j in deleted:
                best[i][j] = 0
            else:
                best[i][j] = 1 + (
                    min(best[i - 1][j], best[i][j - 1], best[i - 1][j - 1])
                    if i and j
                    else 0
                )
            if best[i][j] > r2:
                r2 = best[i][j]
                at = (i - r2 + 1, j - r2 + 1)
    if r2 >= r1:
        size = r2
        i0, j0 = at
        branch = {
            a * size + b: frozenset([(i0 + a) * r + (j0 + b)])
            for a in range(size)
            for b in range(size)
        }
    else:
        # L-shaped contraction on the kept full rows and columns
        size = r1
        kr = keep_rows[:size]
        kc = keep_cols[:size]
        branch = {}
        for a, i in enumerate(kr):
            for b, j in enumerate(kc):
                cend = kc[b + 1] - 1 if b + 1 < size else j
                rend = kr[a + 1] - 1 if a + 1 < size else i
                cell = {i * r + c for c in range(j, cend + 1)}
                cell |= {rr * r + j for rr in range(i, rend + 1)}
                branch[a * size + b] = frozenset(cell)
    if size == 0:
        raise TooSmall("no subgrid survives the deletions")
    mm = MinorMapping(host, grid_graph(size, size), branch)
    if not verify_minor_mapping(mm):
        raise RuntimeError("surviving subgrid mapping invalid")
    return GridMinor(size, size, mm)


# -- flat grid minors ----------------------------------------------------------


def large_planar_piece(
    g: Graph, genus_budget: int, balance: float = 2 / 3, cap_factor: int = 1
):
    """(planarizing set X, best planar component, its grid minor)."""
    x = planarizing_set(g, genus_budget, balance=balance, cap_factor=cap_factor)
    x = minimal_planarizing_set(g, x)
    rest = g.remove_vertices(x)
    best: Optional[tuple[Graph, GridMinor]] = None
    for comp in rest.components():
        if best is not None and len(comp) < best[1].size ** 2:
            continue
        piece = rest.induced(comp)
        gm = planar_grid_minor(piece)
        if best is None or gm.size > best[1].size:
            best = (piece, gm)
    if best is None:
        raise TooSmall("graph has no vertices left after planarization")
    return x, best[0], best[1]


def _cover_component(piece: Graph, gm: GridMinor) -> GridMinor:
    """Absorb uncovered component vertices into adjacent branch sets."""
    owner: dict[int, int] = {}
    for cell, bs in gm.mapping.branch_sets.items():
        for v in bs:
            owner[v] = cell
    pending = [v for v in piece.vertices if v not in owner]
    changed = True
    while pending and changed:
        changed = False
        rest = []
        for v in sorted(pending):
            cells = sorted(owner[w] for w in piece.neighbors(v) if w in owner)
            if cells:
                owner[v] = cells[0]
                changed = True
            else:
                rest.append(v)
        pending = rest
    branch: dict[int, set[int]] = {}
    for v, cell in owner.items():
        branch.setdefault(cell, set()).add(v)
    mm = MinorMapping(
        piece,
        gm.mapping.minor,
        {c: frozenset(s) for c, s in branch.items()},
    )
    if not verify_minor_mapping(mm):
        return gm
    return GridMinor(gm.rows, gm.cols, mm)


def is_flat(g: Graph, sub_vertices: Iterable[int]) -> bool:
    """Flatness test: the piece plus an apex on its boundary is planar.

    The boundary is the set of piece vertices with neighbours outside;
    the apex planarity test is exactly the definition of a planar
    drawing with all boundary vertices on the outer face.
    """
    sub = set(sub_vertices)
    piece = g.induced(sub)
    if not is_planar(piece):
        return False
    boundary = sorted(
        v for v in sub if any(w not in sub for w in g.neighbors(v))
    )
    if not boundary:
        return True
    apex = max(g.vertices) + 1
    test = piece.add_vertices([apex]).add_edges((apex, b) for b in boundary)
    return is_planar(test)


def flat_grid_minor(
    g: Graph,
    genus_budget: int,
    min_r: int,
    balance: float = 2 / 3,
    cap_factor: int = 1,
) -> tuple[Graph, GridMinor]:
    """A flat subgraph carrying a verified grid minor of size >= min_r.

    After planarizing, the grid minor of the best planar component is
    extended to cover the whole component; square windows of cells kept
    away from the planarizing set are then scanned and the first window
    that passes the apex flatness test in g is returned.

    Raises Rejected (propagated) or TooSmall.
    """
    if min_r < 1:
        raise ValueError("min_r must be positive")
    x, piece, gm = large_planar_piece(g, genus_budget, balance, cap_factor)
    gm = _cover_component(piece, gm)
    xset = set(x)
    a, b = gm.rows, gm.cols
    bad = [[False] * b for _ in range(a)]
    for i in range(a):
        for j in range(b):
            bs = gm.branch_set(i, j)
            if any(w in xset for v in bs for w in g.neighbors(v)):
                bad[i][j] = True
    for size in range(min(a, b), min_r - 1, -1):
        for i0 in range(a - size + 1):
            for j0 in range(b - size + 1):
                if any(
                    bad[i][j]
                    for i in range(i0, i0 + size)
                    for j in range(j0, j0 + size)
                ):
                    continue
                cells = [
                    (i, j)
                    for i in range(i0, i0 + size)
                    for j in range(j0, j0 + size)
                ]
                fverts = set()
                for (i, j) in cells:
                    fverts |= gm.branch_set(i, j)
                if not is_flat(g, fverts):
                    continue
                flat = g.induced(fverts)
                branch = {
                    (i - i0) * size + (j - j0): gm.branch_set(i, j)
                    for (i, j) in cells
                }
                mm = MinorMapping(flat, grid_graph(size, size), branch)
                if not verify_minor_mapping(mm):
                    continue
                return flat, GridMinor(size, size, mm)
    raise TooSmall(
        f"no flat {min_r}x{min_r} grid window clear of the planarizing set"
    )


# -- planarly nested sequences -------------------------------------------------


class NestedCycles:
    """Disjoint cycles, innermost first, with the designated outside marker."""

    __slots__ = ("cycles", "marker")

    def __init__(self, cycles: list[list[int]], marker: Optional[int]):
        self.cycles = [list(c) for c in cycles]
        self.marker = marker

    def __len__(self) -> int:
        return len(self.cycles)

    def __repr__(self) -> str:
        return f"NestedCycles(k={len(self.cycles)}, marker={self.marker})"


def _component_with(g: Graph, banned: set[int], marker: int) -> set[int]:
    comp = {marker}
    stack = [marker]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w not in banned and w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def validate_nested_cycles(g: Graph, nc: NestedCycles) -> bool:
    """Literal witness check for a planarly nested sequence.

    The cycles are disjoint; the marker component H_i of g minus C_i
    strictly decreases; and contracting each H_i except its feet leaves
    a planar graph.
    """
    seen: set[int] = set()
    for c in nc.cycles:
        if len(c) < 3 or seen & set(c):
            return False
        seen |= set(c)
        for t in range(len(c)):
            if not g.has_edge(c[t], c[(t + 1) % len(c)]):
                return False
    if nc.marker is None or nc.marker in seen:
        return False
    comps = []
    for c in nc.cycles:
        h = _component_with(g, set(c), nc.marker)
        comps.append(h)
    for i in range(len(comps) - 1):
        if not comps[i + 1] < comps[i]:
            return False
    apex = max(g.vertices) + 1
    for c, h in zip(nc.cycles, comps):
        feet = sorted(
            v for v in c if any(w in h for w in g.neighbors(v))
        )
        contracted = g.remove_vertices(h).add_vertices([apex]).add_edges(
            (apex, v) for v in feet
        )
        if not is_planar(contracted):
            return False
    return True


def _host_cycle(piece: Graph, gm: GridMinor, cells: list[tuple[int, int]]) -> list[int]:
    """A simple host cycle through the branch sets of a cell cycle."""
    k = len(cells)
    sets = [gm.branch_set(i, j) for (i, j) in cells]
    # entry/exit points: a host edge between consecutive branch sets
    links = []
    for t in range(k):
        a, b = sets[t], sets[(t + 1) % k]
        link = None
        for u in sorted(a):
            for w in sorted(piece.neighbors(u)):
                if w in b:
                    link = (u, w)
                    break
            if link:
                break
        if link is None:
            raise RuntimeError("grid mapping lost a ring adjacency")
        links.append(link)
    cycle: list[int] = []
    for t in range(k):
        enter = links[t - 1][1]
        leave = links[t][0]
        sub = piece.induced(sets[t])
        # BFS path from enter to leave inside the branch set
        parent = {enter: enter}
        queue = [enter]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w in sub.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        path = [leave]
        while path[-1] != enter:
            path.append(parent[path[-1]])
        cycle.extend(reversed(path))
    if len(set(cycle)) != len(cycle):
        raise RuntimeError("host ring walk is not simple")
    return cycle


def _ring_cells(size: int, depth: int) -> list[tuple[int, int]]:
    """Cells of the ring at the given depth, in cyclic order."""
    lo, hi = depth, size - 1 - depth
    cells = [(lo, j) for j in range(lo, hi + 1)]
    cells += [(i, hi) for i in range(lo + 1, hi + 1)]
    cells += [(hi, j) for j in range(hi - 1, lo - 1, -1)]
    cells += [(i, lo) for i in range(hi - 1, lo, -1)]
    return cells


def planarly_nested_sequence(
    g: Graph,
    genus_budget: int,
    min_k: int,
    balance: float = 2 / 3,
    cap_factor: int = 1,
) -> NestedCycles:
    """At least min_k disjoint nested cycles with a validated witness.

    Concentric rings of a flat grid minor, skipping the outermost ring
    so that something always lies strictly outside every chosen cycle;
    the innermost chosen ring keeps grid cells strictly inside it.
    """
    if min_k < 1:
        raise ValueError("min_k must be positive")
    need_r = 2 * min_k + 3
    flat, gm = flat_grid_minor(g, genus_budget, need_r, balance, cap_factor)
    size = gm.size
    k = min_k
    # rings at depths 1..k, innermost (depth k) first
    cycles = []
    for depth in range(k, 0, -1):
        cells = _ring_cells(size, depth)
        cycles.append(_host_cycle(flat, gm, cells))
    allcyc = {v for c in cycles for v in c}
    marker = None
    outside_f = sorted(set(g.vertices) - set(flat.vertices))
    if outside_f:
        marker = outside_f[0]
    else:
        ring0 = set()
        for (i, j) in _ring_cells(size, 0):
            ring0 |= gm.branch_set(i, j)
        free = sorted(ring0 - allcyc)
        if free:
            marker = free[0]
    nc = NestedCycles(cycles, marker)
    if marker is None or not validate_nested_cycles(g, nc):
        raise TooSmall("nested cycle witness did not validate")
    return nc
