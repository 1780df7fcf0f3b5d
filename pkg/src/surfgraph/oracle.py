"""Exponential-time ground-truth oracles for tiny instances.

Exact Euler genus, exact orientable genus, exhaustive enumeration of
minimum-genus embeddings, exact crossing number, and exact planar
vertex/edge deletion numbers.  Everything here realises the definitions
by search; nothing is shared with the approximation pipeline beyond the
face-tracing substrate, so oracle values can stand as independent
expectations in tests.
"""

from __future__ import annotations

import math
from typing import Iterator, Optional

from surfgraph import core
from surfgraph.embeddings import RotationEmbedding
from surfgraph.graphs import Graph, edge_key
from surfgraph.planarity import is_planar, kuratowski_subgraph


class OracleBudgetExceeded(RuntimeError):
    """The instance exceeds the configured enumeration budget."""


class OracleBudget:
    """Guard for the enumeration oracles.

    ``max_states`` bounds the rotation-system measure
    ``sum_v (deg(v)-1)! * 2^(m-n+1)`` (the sign factor is dropped for
    orientable-only enumeration); ``max_crossing_k`` bounds the
    iterative deepening of the crossing-number search.
    """

    def __init__(self, max_states: float = 1e7, max_crossing_k: int = 16):
        self.max_states = max_states
        self.max_crossing_k = max_crossing_k

    def measure(self, g: Graph, orientable: bool) -> float:
        total = sum(
            math.factorial(max(0, g.degree(v) - 1)) for v in g.vertices
        )
        if not orientable:
            total *= 2.0 ** max(0, g.num_edges() - g.num_vertices() + 1)
        return float(total)

    def check(self, g: Graph, orientable: bool) -> None:
        got = self.measure(g, orientable)
        if got > self.max_states:
            raise OracleBudgetExceeded(
                f"enumeration measure {got:.3g} exceeds budget {self.max_states:.3g}"
            )


DEFAULT_BUDGET = OracleBudget()


# -- genus-preserving reduction ---------------------------------------------


def _reduced_core(g: Graph) -> Graph:
    """Strip degree-<=1 vertices and smooth degree-2 vertices.

    Both operations preserve the Euler genus, the orientable genus and
    the crossing number; smoothing is skipped when it would create a
    loop or a parallel edge.
    """
    adj: dict[int, set[int]] = {v: set(g.neighbors(v)) for v in g.vertices}
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            deg = len(adj[v])
            if deg <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
                changed = True
            elif deg == 2:
                a, b = sorted(adj[v])
                if a != b and b not in adj[a]:
                    adj[a].discard(v)
                    adj[b].discard(v)
                    adj[a].add(b)
                    adj[b].add(a)
                    del adj[v]
                    changed = True
    return Graph(adj, ((u, w) for u in adj for w in adj[u] if u < w))


def _girth(g: Graph) -> int:
    """Length of a shortest cycle (0 when the graph is a forest)."""
    best = 0
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best == 0 or cyc < best:
                        best = cyc
    return best


def _component_lower_bound(comp: Graph) -> int:
    """Euler-formula bound: every face walk has at least girth edges."""
    n, m = comp.num_vertices(), comp.num_edges()
    if m == 0 or n < 3:
        return 0
    girth = _girth(comp)
    if girth == 0:
        return 0
    return max(0, 2 - n + m - (2 * m) // girth)


def _bfs_edge_order(comp: Graph) -> tuple[list[int], list[int], dict[int, int]]:
    """Edges ordered so that cycles close as early as possible.

    Vertices are taken in BFS order; each vertex contributes its edges
    to already-seen vertices.  Returns index-relabelled endpoints.
    """
    label = {v: i for i, v in enumerate(comp.vertices)}
    seen: list[int] = []
    seen_set: set[int] = set()
    for root in comp.vertices:
        if root in seen_set:
            continue
        seen_set.add(root)
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            seen.append(u)
            for w in comp.neighbors(u):
                if w not in seen_set:
                    seen_set.add(w)
                    queue.append(w)
    # emit, for each vertex in BFS order, its edges to earlier vertices
    rank = {v: i for i, v in enumerate(seen)}
    eu: list[int] = []
    ev: list[int] = []
    for v in seen:
        for w in sorted(comp.neighbors(v), key=lambda x: rank[x]):
            if rank[w] < rank[v]:
                eu.append(label[w])
                ev.append(label[v])
    return eu, ev, label


def _min_genus_component(comp: Graph, orientable: bool, cutoff: int) -> int:
    lb = _component_lower_bound(comp)
    if orientable and lb % 2 == 1:
        lb += 1
    eu, ev, label = _bfs_edge_order(comp)
    return core.min_genus(comp.num_vertices(), eu, ev, orientable, lb, cutoff)


def exact_euler_genus(
    g: Graph, budget: Optional[OracleBudget] = None, cutoff: int = 64
) -> int:
    """Minimum Euler genus over all rotation systems and signatures."""
    budget = budget or DEFAULT_BUDGET
    budget.check(g, orientable=False)
    red = _reduced_core(g)
    total = 0
    for comp_vertices in red.components():
        comp = red.induced(comp_vertices)
        got = _min_genus_component(comp, False, cutoff)
        if got > cutoff:
            raise OracleBudgetExceeded(f"euler genus exceeds cutoff {cutoff}")
        total += got
    return total


def exact_orientable_genus(
    g: Graph, budget: Optional[OracleBudget] = None, cutoff: int = 64
) -> int:
    """Minimum orientable genus (handles); enumeration restricted to +1 signs."""
    budget = budget or DEFAULT_BUDGET
    budget.check(g, orientable=True)
    red = _reduced_core(g)
    total = 0
    for comp_vertices in red.components():
        comp = red.induced(comp_vertices)
        got = _min_genus_component(comp, True, 2 * cutoff)
        if got > 2 * cutoff:
            raise OracleBudgetExceeded(f"orientable genus exceeds cutoff {cutoff}")
        if got % 2 == 1:
            raise AssertionError("orientable search produced odd Euler genus")
        total += got // 2
    return total


# -- exhaustive embedding enumeration ---------------------------------------


class _Enumerator:
    """DFS over rotation systems, yielding embeddings at the target genus.

    Mirrors the kernel search; signatures of component-joining edges
    are normalised to +1 (the spanning-forest quotient).
    """

    def __init__(self, g: Graph, target: int):
        self.g = g
        self.target = target
        self.vertices = list(g.vertices)
        self.label = {v: i for i, v in enumerate(self.vertices)}
        comps = [g.induced(c) for c in g.components()]
        self.eu: list[int] = []
        self.ev: list[int] = []
        for comp in comps:
            eu, ev, label = _bfs_edge_order(comp)
            back = {i: v for v, i in label.items()}
            for a, b in zip(eu, ev):
                self.eu.append(self.label[back[a]])
                self.ev.append(self.label[back[b]])
        self.m = len(self.eu)
        n = len(self.vertices)
        self.search = None

    def run(self) -> Iterator[RotationEmbedding]:
        from surfgraph._purecore import _MinGenusSearch

        s = _MinGenusSearch(len(self.vertices), self.eu, self.ev, False, -1, self.target)
        self.search = s
        if self.m == 0:
            if self.target == 0:
                yield RotationEmbedding(self.g, {v: () for v in self.g.vertices})
            return
        yield from self._dfs(s, 0)

    def _emit(self, s) -> RotationEmbedding:
        rot: dict[int, tuple[int, ...]] = {}
        for v in self.g.vertices:
            i = self.label[v]
            if s.head[i] < 0:
                rot[v] = ()
                continue
            seq = []
            d = s.head[i]
            while True:
                other = self.ev[d >> 1] if d % 2 == 0 else self.eu[d >> 1]
                seq.append(self.vertices[other])
                d = s.nxt[d]
                if d == s.head[i]:
                    break
            rot[v] = tuple(seq)
        sign = {}
        for i in range(self.m):
            u = self.vertices[self.eu[i]]
            w = self.vertices[self.ev[i]]
            sign[edge_key(u, w)] = -1 if s.neg[i] else 1
        return RotationEmbedding(self.g, rot, sign)

    def _dfs(self, s, i) -> Iterator[RotationEmbedding]:
        u, v = s.eu[i], s.ev[i]
        joins = s._find(u) != s._find(v)
        signs = (0,) if joins else (0, 1)
        du, dv = 2 * i, 2 * i + 1
        last = i + 1 == s.m
        for pu in s._positions(u):
            s._insert_dart(du, u, pu)
            undo = s._union(u, v) if joins else None
            for pv in s._positions(v):
                s._insert_dart(dv, v, pv)
                for sgn in signs:
                    s.neg[i] = sgn
                    eg = s._partial_genus(i + 1)
                    if eg <= self.target:
                        if last:
                            if eg == self.target:
                                yield self._emit(s)
                        else:
                            yield from self._dfs(s, i + 1)
                s.neg[i] = 0
                s._remove_dart(dv, v, pv)
            s._undo_union(undo)
            s._remove_dart(du, u, pu)


def enumerate_min_genus_embeddings(
    g: Graph, budget: Optional[OracleBudget] = None
) -> Iterator[RotationEmbedding]:
    """Every embedding of minimum Euler genus, up to sign normalisation."""
    budget = budget or DEFAULT_BUDGET
    budget.check(g, orientable=False)
    target = exact_euler_genus(g, budget=budget)
    yield from _Enumerator(g, target).run()


# -- crossing number ----------------------------------------------------------


def _crossing_lower_bound(g: Graph) -> int:
    total = 0
    for comp_vertices in g.components():
        comp = g.induced(comp_vertices)
        n, m = comp.num_vertices(), comp.num_edges()
        if n >= 3:
            total += max(0, m - (3 * n - 6))
    return total


def _planarize_pair(g: Graph, e1, e2, w: int) -> Graph:
    a, b = e1
    c, d = e2
    return g.remove_edges([e1, e2]).add_vertices([w]).add_edges(
        [(a, w), (w, b), (c, w), (w, d)]
    )


def _cr_search(g: Graph, k: int) -> bool:
    """True iff g can be drawn with at most k crossings."""
    if is_planar(g):
        return True
    if k <= 0 or _crossing_lower_bound(g) > k:
        return False
    kur = kuratowski_subgraph(g)
    kedges = list(kur.edges)
    w = max(g.vertices) + 1
    for i in range(len(kedges)):
        for j in range(i + 1, len(kedges)):
            e1, e2 = kedges[i], kedges[j]
            if set(e1) & set(e2):
                continue
            if _cr_search(_planarize_pair(g, e1, e2, w), k - 1):
                return True
    return False


def exact_crossing_number(
    g: Graph, budget: Optional[OracleBudget] = None
) -> int:
    """Smallest k admitting a plane drawing with k crossings.

    Iterative deepening over a branch and bound: some optimal drawing
    has no adjacent or repeated crossings, and any nonplanar subgraph
    must carry a crossing among its own edges, so branching on
    independent edge pairs of a Kuratowski subgraph is complete.
    """
    budget = budget or DEFAULT_BUDGET
    red = _reduced_core(g)
    for k in range(budget.max_crossing_k + 1):
        if crossing_number_at_most(red, k, budget):
            return k
    raise OracleBudgetExceeded(
        f"crossing number exceeds max_crossing_k={budget.max_crossing_k}"
    )


def crossing_number_at_most(
    g: Graph, k: int, budget: Optional[OracleBudget] = None
) -> bool:
    return _cr_search(_reduced_core(g), k)


# -- planar deletion numbers --------------------------------------------------


def _subsets(items, size):
    if size == 0:
        yield ()
        return
    for i in range(len(items) - size + 1):
        for rest in _subsets(items[i + 1 :], size - 1):
            yield (items[i],) + rest


def exact_vertex_planarization(g: Graph, cutoff: int = 8) -> int:
    """Minimum vertices whose removal leaves a planar graph."""
    if is_planar(g):
        return 0
    for k in range(1, cutoff + 1):
        for sub in _subsets(list(g.vertices), k):
            if is_planar(g.remove_vertices(sub)):
                return k
    raise OracleBudgetExceeded(f"vertex planarization exceeds cutoff {cutoff}")


def exact_edge_planarization(g: Graph, cutoff: int = 8) -> int:
    """Minimum edges whose removal leaves a planar graph."""
    if is_planar(g):
        return 0
    for k in range(1, cutoff + 1):
        for sub in _subsets(list(g.edges), k):
            if is_planar(g.remove_edges(sub)):
                return k
    raise OracleBudgetExceeded(f"edge planarization exceeds cutoff {cutoff}")


def vertex_planarization_at_most(g: Graph, k: int) -> bool:
    if is_planar(g):
        return True
    for kk in range(1, k + 1):
        for sub in _subsets(list(g.vertices), kk):
            if is_planar(g.remove_vertices(sub)):
                return True
    return False


def edge_planarization_at_most(g: Graph, k: int) -> bool:
    if is_planar(g):
        return True
    for kk in range(1, k + 1):
        for sub in _subsets(list(g.edges), kk):
            if is_planar(g.remove_edges(sub)):
                return True
    return False
