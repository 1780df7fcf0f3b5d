"""Simple undirected graphs with integer vertex labels.

The graph type is immutable and hashable so that expensive predicates
(planarity above all) can be cached across the pipeline.  Vertices are
nonnegative integers, adjacency lists are kept sorted, and every
derived graph preserves the original labels.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("_adj", "_vertices", "_edges", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj: dict[int, tuple[int, ...]] = {
            v: tuple(sorted(adj[v])) for v in sorted(adj)
        }
        self._vertices: tuple[int, ...] = tuple(sorted(adj))
        self._edges: tuple[tuple[int, int], ...] = tuple(
            sorted(edge_key(u, v) for u in self._adj for v in self._adj[u] if u < v)
        )
        self._hash = hash((self._vertices, self._edges))

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj.values()), default=0)

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.num_vertices()}, m={self.num_edges()})"

    # -- derived graphs ---------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> Graph:
        keep = set(vertices)
        return Graph(
            keep,
            ((u, v) for u, v in self._edges if u in keep and v in keep),
        )

    def remove_vertices(self, vertices: Iterable[int]) -> Graph:
        drop = set(vertices)
        return self.induced(v for v in self._vertices if v not in drop)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        drop = {edge_key(u, v) for u, v in edges}
        return Graph(self._vertices, (e for e in self._edges if e not in drop))

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self._vertices, list(self._edges) + [edge_key(u, v) for u, v in edges])

    def add_vertices(self, vertices: Iterable[int]) -> Graph:
        return Graph(list(self._vertices) + list(vertices), self._edges)

    # -- traversal --------------------------------------------------------

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, sorted by minimum."""
        seen: set[int] = set()
        out = []
        for root in self._vertices:
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bfs_layers(self, roots: Iterable[int]) -> list[list[int]]:
        """BFS layers from a set of roots, each layer sorted."""
        dist = {r: 0 for r in roots}
        layer = sorted(dist)
        layers = []
        while layer:
            layers.append(layer)
            nxt = []
            for u in layer:
                for w in self._adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            layer = sorted(set(nxt))
        return layers

    def articulation_points(self) -> list[int]:
        """Cut vertices, via iterative lowpoint DFS."""
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        parent: dict[int, Optional[int]] = {}
        cuts: set[int] = set()
        timer = 0
        for root in self._vertices:
            if root in disc:
                continue
            parent[root] = None
            root_children = 0
            stack: list[tuple[int, int]] = [(root, 0)]
            disc[root] = low[root] = timer
            timer += 1
            while stack:
                u, idx = stack[-1]
                nbrs = self._adj[u]
                if idx < len(nbrs):
                    stack[-1] = (u, idx + 1)
                    w = nbrs[idx]
                    if w not in disc:
                        parent[w] = u
                        if u == root:
                            root_children += 1
                        disc[w] = low[w] = timer
                        timer += 1
                        stack.append((w, 0))
                    elif w != parent[u]:
                        low[u] = min(low[u], disc[w])
                else:
                    stack.pop()
                    p = parent[u]
                    if p is not None:
                        low[p] = min(low[p], low[u])
                        if p != root and low[u] >= disc[p]:
                            cuts.add(p)
            if root_children >= 2:
                cuts.add(root)
        return sorted(cuts)

    def separation_pairs(self) -> Iterator[tuple[int, int]]:
        """Vertex pairs {u, w} whose removal disconnects the graph.

        Quadratic: articulation points of G - u for every u.  Pairs
        containing an articulation point of G itself are skipped (the
        single cut vertex already witnesses a smaller separator).
        """
        cuts = set(self.articulation_points())
        seen: set[tuple[int, int]] = set()
        for u in self._vertices:
            if u in cuts:
                continue
            rest = self.remove_vertices([u])
            if not rest.is_connected():
                continue
            for w in rest.articulation_points():
                if w in cuts:
                    continue
                pair = edge_key(u, w)
                if pair not in seen:
                    seen.add(pair)
                    yield pair


# -- graph I/O -------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the plain-text edge list format.

    One ``u v`` pair per line; ``#`` starts a comment; a line with a
    single token declares an isolated vertex.
    """
    vertices: list[int] = []
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: not an integer pair: {raw!r}") from exc
        if any(x < 0 for x in nums):
            raise ValueError(f"line {lineno}: vertex ids must be nonnegative")
        if len(nums) == 1:
            vertices.append(nums[0])
        elif len(nums) == 2:
            vertices.extend(nums)
            edges.append((nums[0], nums[1]))
        else:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
    return Graph(vertices, edges)


def write_edge_list(g: Graph) -> str:
    """Emit the same format with edges sorted; isolated vertices as single tokens."""
    lines = [f"{u} {v}" for u, v in g.edges]
    covered = {v for e in g.edges for v in e}
    lines.extend(str(v) for v in g.vertices if v not in covered)
    return "\n".join(lines) + ("\n" if lines else "")


# -- minor mappings ---------------------------------------------------------


class MinorMapping:
    """Branch-set witness that ``minor`` is a minor of ``host``."""

    __slots__ = ("host", "minor", "branch_sets")

    def __init__(self, host: Graph, minor: Graph, branch_sets: dict[int, frozenset[int]]):
        self.host = host
        self.minor = minor
        self.branch_sets = {v: frozenset(s) for v, s in branch_sets.items()}

    def __repr__(self) -> str:
        return f"MinorMapping(minor={self.minor!r})"


def verify_minor_mapping(mm: MinorMapping) -> bool:
    """Check the three branch-set conditions; malformed input returns False.

    Branch sets must be nonempty, pairwise disjoint subsets of the host
    inducing connected subgraphs, and every minor edge must be witnessed
    by a host edge between the two branch sets.
    """
    host, minor = mm.host, mm.minor
    if set(mm.branch_sets) != set(minor.vertices):
        return False
    seen: set[int] = set()
    for v in minor.vertices:
        bs = mm.branch_sets[v]
        if not bs or not all(host.has_vertex(x) for x in bs):
            return False
        if seen & bs:
            return False
        seen |= bs
        if not host.induced(bs).is_connected():
            return False
    for u, v in minor.edges:
        bu, bv = mm.branch_sets[u], mm.branch_sets[v]
        if not any(host.has_edge(x, y) for x in bu for y in bv):
            return False
    return True


# -- small constructors used across the code base ---------------------------


def grid_graph(rows: int, cols: int) -> Graph:
    """The (rows x cols)-grid; vertex (i, j) is labelled i * cols + j."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((i * cols + j, i * cols + j + 1))
            if i + 1 < rows:
                edges.append((i * cols + j, (i + 1) * cols + j))
    return Graph(range(rows * cols), edges)


def torus_grid_graph(rows: int, cols: int) -> Graph:
    """The toroidal grid C_rows x C_cols (needs rows, cols >= 3)."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            edges.append((i * cols + j, i * cols + (j + 1) % cols))
            edges.append((i * cols + j, ((i + 1) % rows) * cols + j))
    return Graph(range(rows * cols), edges)


def cylinder_graph(rows: int, cols: int) -> Graph:
    """The (rows x cols)-cylinder P_rows x C_cols (cols >= 3)."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            edges.append((i * cols + j, i * cols + (j + 1) % cols))
            if i + 1 < rows:
                edges.append((i * cols + j, (i + 1) * cols + j))
    return Graph(range(rows * cols), edges)


def complete_graph(n: int) -> Graph:
    return Graph(range(n), ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(range(a + b), ((i, a + j) for i in range(a) for j in range(b)))


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(range(n), ((i, i + 1) for i in range(n - 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)
