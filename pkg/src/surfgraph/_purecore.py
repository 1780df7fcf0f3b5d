"""Pure-Python kernels: face counting, rotation-system genus search, noose sweep.

These are the reference implementations of the hot inner loops.  The
compiled module ``surfgraph._fastcore`` mirrors this interface exactly;
``surfgraph.core`` picks whichever is available at import time.

Dart conventions shared with the compiled kernel:

* edges are indexed 0..m-1, darts 0..2m-1; darts ``2e`` and ``2e+1``
  are the two orientations of edge ``e`` and ``d ^ 1`` is the twin;
* ``sigma_next[d]`` / ``sigma_prev[d]`` give the cyclic rotation order
  around the tail vertex of ``d``;
* a face-tracing state is ``2*d + side``; the trace flips sides on
  edges with a negative signature.
"""

from __future__ import annotations

IMPLEMENTATION = "pure"


def face_count(sigma_next: list[int], sigma_prev: list[int], neg: list[int]) -> int:
    """Number of faces of a signed rotation system given as dart tables."""
    ndarts = len(sigma_next)
    if ndarts == 0:
        return 0
    visited = bytearray(2 * ndarts)
    orbits = 0
    for start in range(2 * ndarts):
        if visited[start]:
            continue
        orbits += 1
        st = start
        while not visited[st]:
            visited[st] = 1
            d = st >> 1
            s2 = (st & 1) ^ neg[d >> 1]
            t = d ^ 1
            nd = sigma_next[t] if s2 == 0 else sigma_prev[t]
            st = (nd << 1) | s2
    return orbits // 2


class _MinGenusSearch:
    """Branch and bound over rotation systems by incremental edge insertion.

    Edges are inserted in the given order; each insertion branches over
    the positions of the two darts in the current rotations and over the
    edge signature (unless restricted to orientable embeddings, and with
    signatures of component-joining edges normalised to +1, which is the
    usual spanning-forest quotient).  The Euler genus of a partial
    embedding never exceeds that of any completion, so pruning against
    the best embedding found so far is exact.
    """

    def __init__(self, n, eu, ev, orientable, lower_bound, cutoff):
        self.n = n
        self.eu = list(eu)
        self.ev = list(ev)
        self.m = len(self.eu)
        self.orientable = orientable
        self.lower_bound = max(0, lower_bound)
        self.best = cutoff + 1
        nd = 2 * self.m
        self.nxt = [0] * nd
        self.prv = [0] * nd
        self.neg = [0] * self.m
        self.head = [-1] * n
        self.deg = [0] * n
        # union-find with rollback (union by size, no path compression)
        self.parent = list(range(n))
        self.size = [1] * n
        self.ncomp = 0
        self.nactive = 0
        self.active_darts: list[int] = []
        self.visit_stamp = [0] * (4 * self.m)
        self.generation = 0

    def _find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return None
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.ncomp -= 1
        return rb

    def _undo_union(self, rb):
        if rb is None:
            return
        ra = self.parent[rb]
        self.size[ra] -= self.size[rb]
        self.parent[rb] = rb
        self.ncomp += 1

    def _insert_dart(self, d, v, after):
        """Insert dart d into the rotation of v after dart ``after`` (or alone)."""
        if after < 0:
            self.nxt[d] = self.prv[d] = d
            self.head[v] = d
            self.nactive += 1
            self.ncomp += 1
        else:
            nx = self.nxt[after]
            self.nxt[after] = d
            self.prv[d] = after
            self.nxt[d] = nx
            self.prv[nx] = d
        self.deg[v] += 1
        self.active_darts.append(d)

    def _remove_dart(self, d, v, after):
        self.active_darts.pop()
        self.deg[v] -= 1
        if after < 0:
            self.head[v] = -1
            self.nactive -= 1
            self.ncomp -= 1
        else:
            nx = self.nxt[d]
            self.nxt[after] = nx
            self.prv[nx] = after

    def _positions(self, v):
        if self.deg[v] == 0:
            return (-1,)
        out = []
        d = self.head[v]
        while True:
            out.append(d)
            d = self.nxt[d]
            if d == self.head[v]:
                return out

    def _partial_genus(self, mact):
        self.generation += 1
        gen = self.generation
        stamp = self.visit_stamp
        nxt, prv, neg = self.nxt, self.prv, self.neg
        orbits = 0
        for d0 in self.active_darts:
            for s0 in (0, 1):
                st = (d0 << 1) | s0
                if stamp[st] == gen:
                    continue
                orbits += 1
                while stamp[st] != gen:
                    stamp[st] = gen
                    d = st >> 1
                    s2 = (st & 1) ^ neg[d >> 1]
                    t = d ^ 1
                    nd = nxt[t] if s2 == 0 else prv[t]
                    st = (nd << 1) | s2
        return 2 * self.ncomp - self.nactive + mact - orbits // 2

    def run(self):
        if self.m == 0:
            return 0
        self._dfs(0)
        return self.best

    def _dfs(self, i):
        u, v = self.eu[i], self.ev[i]
        joins = self._find(u) != self._find(v)
        signs = (0,) if (self.orientable or joins) else (0, 1)
        du, dv = 2 * i, 2 * i + 1
        last = i + 1 == self.m
        for pu in self._positions(u):
            self._insert_dart(du, u, pu)
            undo = self._union(u, v) if joins else None
            for pv in self._positions(v):
                self._insert_dart(dv, v, pv)
                for sgn in signs:
                    self.neg[i] = sgn
                    eg = self._partial_genus(i + 1)
                    if eg < self.best:
                        if last:
                            self.best = eg
                        else:
                            self._dfs(i + 1)
                    if self.best <= self.lower_bound:
                        break
                self.neg[i] = 0
                self._remove_dart(dv, v, pv)
                if self.best <= self.lower_bound:
                    break
            self._undo_union(undo)
            self._remove_dart(du, u, pu)
            if self.best <= self.lower_bound:
                break


def min_genus(n, eu, ev, orientable, lower_bound, cutoff):
    """Minimum Euler genus over all embeddings of the given graph.

    Returns ``cutoff + 1`` when the minimum exceeds ``cutoff``.  With
    ``orientable`` set, signatures are fixed positive, so the result is
    the minimum Euler genus over orientable embeddings (twice the
    orientable genus for connected input).
    """
    return _MinGenusSearch(n, eu, ev, orientable, lower_bound, cutoff).run()


def noose_sweep(
    nnodes,
    adj_ptr,
    adj_dart,
    dart_head,
    is_vnode,
    w1,
    hclass,
    mode,
    collect_ambiguous,
):
    """Scan tree cycles of the radial graph for short noncontractible nooses.

    For every root a BFS tree is built, and every non-tree edge yields
    the cycle through the tree paths of its endpoints.  Some shortest
    noncontractible (resp. nonseparating, orientation-reversing) cycle
    is of this form, by the usual exchange argument for loops made of
    two shortest paths plus an edge.

    ``mode``: 0 = any noncontractible, 1 = orientation-reversing,
    2 = nonseparating.  Orientation reversal is read off the signature
    parity ``w1`` of the cycle, separation off its Z2-homology class
    accumulated from ``hclass``; for mode 0 on surfaces where a
    separating cycle may still be noncontractible, homologically
    trivial candidates shorter than the best certified one are returned
    so the caller can settle them with an exact cut test.

    Returns ``(best_len, best_cycle_darts, ambiguous)`` where lengths
    count vertex nodes and ambiguous is a list of ``(len, darts)``
    sorted by length.  ``best_len`` is -1 when nothing was certified.
    """
    best_len = None
    best_cycle = None
    ambiguous: dict[frozenset[int], tuple[int, list[int]]] = {}

    parent_dart = [-1] * nnodes
    depth = [0] * nnodes
    cls = [0] * nnodes
    sgn = [0] * nnodes
    seen = [0] * nnodes
    generation = 0

    def extract(u, v, d):
        """Dart cycle for non-tree dart d = (u -> v): u up to the lca, down to v, twin back."""
        up_darts, down_darts = [], []
        x, y = u, v
        while depth[x] > depth[y]:
            up_darts.append(parent_dart[x] ^ 1)
            x = dart_head[parent_dart[x] ^ 1]
        while depth[y] > depth[x]:
            down_darts.append(parent_dart[y])
            y = dart_head[parent_dart[y] ^ 1]
        while x != y:
            up_darts.append(parent_dart[x] ^ 1)
            x = dart_head[parent_dart[x] ^ 1]
            down_darts.append(parent_dart[y])
            y = dart_head[parent_dart[y] ^ 1]
        cycle = up_darts + down_darts[::-1]
        cycle.append(d ^ 1)
        return cycle

    for root in range(nnodes):
        generation += 1
        seen[root] = generation
        parent_dart[root] = -1
        depth[root] = 0
        cls[root] = 0
        sgn[root] = 0
        queue = [root]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for k in range(adj_ptr[x], adj_ptr[x + 1]):
                d = adj_dart[k]
                y = dart_head[d]
                if seen[y] != generation:
                    seen[y] = generation
                    parent_dart[y] = d
                    depth[y] = depth[x] + 1
                    cls[y] = cls[x] ^ hclass[d >> 1]
                    sgn[y] = sgn[x] ^ w1[d >> 1]
                    queue.append(y)
        for x in queue:
            for k in range(adj_ptr[x], adj_ptr[x + 1]):
                d = adj_dart[k]
                if d & 1:
                    continue
                y = dart_head[d]
                if seen[y] != generation:
                    continue
                e = d >> 1
                if parent_dart[y] >> 1 == e or parent_dart[x] >> 1 == e:
                    continue
                ccls = cls[x] ^ cls[y] ^ hclass[e]
                csgn = sgn[x] ^ sgn[y] ^ w1[e]
                if mode == 1:
                    hit = csgn == 1
                elif mode == 2:
                    hit = ccls != 0
                else:
                    hit = csgn == 1 or ccls != 0
                want_ambiguous = mode == 0 and collect_ambiguous and not hit
                if not hit and not want_ambiguous:
                    continue
                cyc = extract(x, y, d)
                vlen = sum(1 for dd in cyc if is_vnode[dart_head[dd]])
                if hit:
                    if best_len is None or vlen < best_len:
                        best_len = vlen
                        best_cycle = cyc
                elif best_len is None or vlen < best_len:
                    key = frozenset(dd >> 1 for dd in cyc)
                    old = ambiguous.get(key)
                    if old is None or old[0] > vlen:
                        ambiguous[key] = (vlen, cyc)
    amb = sorted(
        (item for item in ambiguous.values() if best_len is None or item[0] < best_len),
        key=lambda t: t[0],
    )
    return (best_len if best_cycle is not None else -1), best_cycle, amb
