# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels mirroring surfgraph._purecore exactly.

See _purecore.py for the dart conventions and the algorithmic notes;
this module only restates them in C types.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

IMPLEMENTATION = "compiled"


def face_count(sigma_next, sigma_prev, neg):
    """Number of faces of a signed rotation system given as dart tables."""
    cdef int ndarts = len(sigma_next)
    if ndarts == 0:
        return 0
    cdef int m = ndarts // 2
    cdef int* nxt = <int*> malloc(ndarts * sizeof(int))
    cdef int* prv = <int*> malloc(ndarts * sizeof(int))
    cdef char* ng = <char*> malloc(m * sizeof(char))
    cdef char* visited = <char*> calloc(2 * ndarts, sizeof(char))
    cdef int i, st, d, s2, t, nd, orbits = 0
    try:
        for i in range(ndarts):
            nxt[i] = sigma_next[i]
            prv[i] = sigma_prev[i]
        for i in range(m):
            ng[i] = neg[i]
        for i in range(2 * ndarts):
            if visited[i]:
                continue
            orbits += 1
            st = i
            while not visited[st]:
                visited[st] = 1
                d = st >> 1
                s2 = (st & 1) ^ ng[d >> 1]
                t = d ^ 1
                nd = nxt[t] if s2 == 0 else prv[t]
                st = (nd << 1) | s2
        return orbits // 2
    finally:
        free(nxt)
        free(prv)
        free(ng)
        free(visited)


cdef class _MinGenusSearch:
    cdef int n, m, orientable, lower_bound, best
    cdef int ncomp, nactive, nact_darts, generation
    cdef int* eu
    cdef int* ev
    cdef int* nxt
    cdef int* prv
    cdef char* neg
    cdef int* head
    cdef int* deg
    cdef int* parent
    cdef int* size
    cdef int* active_darts
    cdef int* visit_stamp
    cdef int* posbuf      # scratch for rotation positions, 2 * m slots

    def __cinit__(self, int n, eu, ev, int orientable, int lower_bound, int cutoff):
        cdef int m = len(eu), i
        self.n = n
        self.m = m
        self.orientable = orientable
        self.lower_bound = lower_bound if lower_bound > 0 else 0
        self.best = cutoff + 1
        self.eu = <int*> malloc(m * sizeof(int))
        self.ev = <int*> malloc(m * sizeof(int))
        self.nxt = <int*> malloc(2 * m * sizeof(int))
        self.prv = <int*> malloc(2 * m * sizeof(int))
        self.neg = <char*> calloc(m if m else 1, sizeof(char))
        self.head = <int*> malloc(n * sizeof(int))
        self.deg = <int*> calloc(n if n else 1, sizeof(int))
        self.parent = <int*> malloc(n * sizeof(int))
        self.size = <int*> malloc(n * sizeof(int))
        self.active_darts = <int*> malloc(2 * m * sizeof(int))
        self.visit_stamp = <int*> calloc(4 * m if m else 1, sizeof(int))
        self.posbuf = <int*> malloc(2 * m * sizeof(int))
        for i in range(m):
            self.eu[i] = eu[i]
            self.ev[i] = ev[i]
        for i in range(n):
            self.head[i] = -1
            self.parent[i] = i
            self.size[i] = 1
        self.ncomp = 0
        self.nactive = 0
        self.nact_darts = 0
        self.generation = 0

    def __dealloc__(self):
        free(self.eu); free(self.ev); free(self.nxt); free(self.prv)
        free(self.neg); free(self.head); free(self.deg); free(self.parent)
        free(self.size); free(self.active_darts); free(self.visit_stamp)
        free(self.posbuf)

    cdef int _find(self, int x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    cdef int _union(self, int a, int b):
        cdef int ra = self._find(a), rb = self._find(b), tmp
        if ra == rb:
            return -1
        if self.size[ra] < self.size[rb]:
            tmp = ra; ra = rb; rb = tmp
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.ncomp -= 1
        return rb

    cdef void _undo_union(self, int rb):
        cdef int ra
        if rb < 0:
            return
        ra = self.parent[rb]
        self.size[ra] -= self.size[rb]
        self.parent[rb] = rb
        self.ncomp += 1

    cdef void _insert_dart(self, int d, int v, int after):
        cdef int nx
        if after < 0:
            self.nxt[d] = d
            self.prv[d] = d
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
        self.active_darts[self.nact_darts] = d
        self.nact_darts += 1

    cdef void _remove_dart(self, int d, int v, int after):
        cdef int nx
        self.nact_darts -= 1
        self.deg[v] -= 1
        if after < 0:
            self.head[v] = -1
            self.nactive -= 1
            self.ncomp -= 1
        else:
            nx = self.nxt[d]
            self.nxt[after] = nx
            self.prv[nx] = after

    cdef int _partial_genus(self, int mact):
        cdef int gen, orbits = 0, i, s0, st, d, s2, t, nd, d0
        self.generation += 1
        gen = self.generation
        for i in range(self.nact_darts):
            d0 = self.active_darts[i]
            for s0 in range(2):
                st = (d0 << 1) | s0
                if self.visit_stamp[st] == gen:
                    continue
                orbits += 1
                while self.visit_stamp[st] != gen:
                    self.visit_stamp[st] = gen
                    d = st >> 1
                    s2 = (st & 1) ^ self.neg[d >> 1]
                    t = d ^ 1
                    nd = self.nxt[t] if s2 == 0 else self.prv[t]
                    st = (nd << 1) | s2
        return 2 * self.ncomp - self.nactive + mact - orbits // 2

    cdef int _positions(self, int v, int* buf):
        cdef int cnt = 0, d
        if self.deg[v] == 0:
            buf[0] = -1
            return 1
        d = self.head[v]
        while True:
            buf[cnt] = d
            cnt += 1
            d = self.nxt[d]
            if d == self.head[v]:
                return cnt

    def run(self):
        if self.m == 0:
            return 0
        self._dfs(0)
        return self.best

    cdef void _dfs(self, int i):
        cdef int u = self.eu[i], v = self.ev[i]
        cdef int joins = self._find(u) != self._find(v)
        cdef int nsigns = 1 if (self.orientable or joins) else 2
        cdef int du = 2 * i, dv = 2 * i + 1
        cdef int last = (i + 1 == self.m)
        cdef int npu, npv, a, b, sgn, eg, undo, pu, pv
        cdef int* pubuf = <int*> malloc(2 * self.m * sizeof(int))
        cdef int* pvbuf = <int*> malloc(2 * self.m * sizeof(int))
        npu = self._positions(u, pubuf)
        for a in range(npu):
            pu = pubuf[a]
            self._insert_dart(du, u, pu)
            undo = self._union(u, v) if joins else -1
            npv = self._positions(v, pvbuf)
            for b in range(npv):
                pv = pvbuf[b]
                self._insert_dart(dv, v, pv)
                for sgn in range(nsigns):
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
        free(pubuf)
        free(pvbuf)


def min_genus(n, eu, ev, orientable, lower_bound, cutoff):
    """Minimum Euler genus over all embeddings; cutoff + 1 when exceeded."""
    cdef _MinGenusSearch s = _MinGenusSearch(
        n, list(eu), list(ev), 1 if orientable else 0, lower_bound, cutoff
    )
    return s.run()


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
    """Tree-cycle sweep over the radial graph; see _purecore.noose_sweep."""
    cdef int N = nnodes
    cdef int ND = len(adj_dart)
    cdef int M = ND // 2
    cdef int* aptr = <int*> malloc((N + 1) * sizeof(int))
    cdef int* adart = <int*> malloc((ND if ND else 1) * sizeof(int))
    cdef int* dhead = <int*> malloc((ND if ND else 1) * sizeof(int))
    cdef char* isv = <char*> malloc(N * sizeof(char))
    cdef char* cw1 = <char*> malloc((M if M else 1) * sizeof(char))
    cdef unsigned long long* hcl = <unsigned long long*> malloc(
        (M if M else 1) * sizeof(unsigned long long))
    cdef int* parent_dart = <int*> malloc(N * sizeof(int))
    cdef int* depth = <int*> malloc(N * sizeof(int))
    cdef unsigned long long* cls = <unsigned long long*> malloc(
        N * sizeof(unsigned long long))
    cdef char* sgn = <char*> malloc(N * sizeof(char))
    cdef int* seen = <int*> calloc(N, sizeof(int))
    cdef int* queue = <int*> malloc(N * sizeof(int))
    cdef int i, root, generation = 0, qi, qn, x, y, k, d, e, hit, vlen
    cdef int best_len = -1
    cdef unsigned long long ccls
    cdef char csgn
    cdef int imode = mode
    cdef int amb_on = 1 if collect_ambiguous else 0
    best_cycle = None
    ambiguous = {}

    for i in range(N + 1):
        aptr[i] = adj_ptr[i]
    for i in range(ND):
        adart[i] = adj_dart[i]
        dhead[i] = dart_head[i]
    for i in range(N):
        isv[i] = is_vnode[i]
    for i in range(M):
        cw1[i] = w1[i]
        hcl[i] = hclass[i]

    def _extract(int u, int v, int dd):
        cdef int xx = u, yy = v
        up_darts = []
        down_darts = []
        while depth[xx] > depth[yy]:
            up_darts.append(parent_dart[xx] ^ 1)
            xx = dhead[parent_dart[xx] ^ 1]
        while depth[yy] > depth[xx]:
            down_darts.append(parent_dart[yy])
            yy = dhead[parent_dart[yy] ^ 1]
        while xx != yy:
            up_darts.append(parent_dart[xx] ^ 1)
            xx = dhead[parent_dart[xx] ^ 1]
            down_darts.append(parent_dart[yy])
            yy = dhead[parent_dart[yy] ^ 1]
        cycle = up_darts + down_darts[::-1]
        cycle.append(dd ^ 1)
        return cycle

    try:
        for root in range(N):
            generation += 1
            seen[root] = generation
            parent_dart[root] = -1
            depth[root] = 0
            cls[root] = 0
            sgn[root] = 0
            queue[0] = root
            qn = 1
            qi = 0
            while qi < qn:
                x = queue[qi]
                qi += 1
                for k in range(aptr[x], aptr[x + 1]):
                    d = adart[k]
                    y = dhead[d]
                    if seen[y] != generation:
                        seen[y] = generation
                        parent_dart[y] = d
                        depth[y] = depth[x] + 1
                        cls[y] = cls[x] ^ hcl[d >> 1]
                        sgn[y] = sgn[x] ^ cw1[d >> 1]
                        queue[qn] = y
                        qn += 1
            for qi in range(qn):
                x = queue[qi]
                for k in range(aptr[x], aptr[x + 1]):
                    d = adart[k]
                    if d & 1:
                        continue
                    y = dhead[d]
                    if seen[y] != generation:
                        continue
                    e = d >> 1
                    if (parent_dart[y] >> 1) == e or (parent_dart[x] >> 1) == e:
                        continue
                    ccls = cls[x] ^ cls[y] ^ hcl[e]
                    csgn = sgn[x] ^ sgn[y] ^ cw1[e]
                    if imode == 1:
                        hit = csgn == 1
                    elif imode == 2:
                        hit = ccls != 0
                    else:
                        hit = csgn == 1 or ccls != 0
                    if not hit and not (imode == 0 and amb_on):
                        continue
                    cyc = _extract(x, y, d)
                    vlen = 0
                    for dd in cyc:
                        if isv[dhead[<int> dd]]:
                            vlen += 1
                    if hit:
                        if best_len < 0 or vlen < best_len:
                            best_len = vlen
                            best_cycle = cyc
                    elif best_len < 0 or vlen < best_len:
                        key = frozenset([dd >> 1 for dd in cyc])
                        old = ambiguous.get(key)
                        if old is None or old[0] > vlen:
                            ambiguous[key] = (vlen, cyc)
        amb = sorted(
            (item for item in ambiguous.values()
             if best_len < 0 or item[0] < best_len),
            key=lambda t: t[0],
        )
        return (best_len if best_cycle is not None else -1), best_cycle, amb
    finally:
        free(aptr); free(adart); free(dhead); free(isv); free(cw1); free(hcl)
        free(parent_dart); free(depth); free(cls); free(sgn); free(seen); free(queue)
