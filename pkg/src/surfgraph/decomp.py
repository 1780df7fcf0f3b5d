"""Balanced vertex separators, tree decompositions, and planarizing sets.

The separator is a heuristic (BFS level cuts plus greedy pruning) that
always meets the requested balance; the tree decomposition comes from a
min-fill elimination order and serves as a treewidth upper-bound
certificate.  The planarizing set recursively separates the nonplanar
pieces; when one level of the recursion holds more than ``cap`` many
disjoint nonplanar pieces, the input's Euler genus provably exceeds the
budget and a rejection with that evidence is raised.
"""

from __future__ import annotations

from typing import Iterable, Optional

from surfgraph.graphs import Graph
from surfgraph.planarity import is_planar
from surfgraph.rejection import Rejected, excess_pieces_evidence


class SeparatorResult:
    __slots__ = ("separator", "balance")

    def __init__(self, separator: frozenset[int], balance: float):
        self.separator = separator
        self.balance = balance

    def __repr__(self) -> str:
        return f"SeparatorResult(size={len(self.separator)}, balance={self.balance:.3f})"


def _level_cut(g: Graph, comp: tuple[int, ...], limit: int) -> set[int]:
    """A BFS level whose removal splits the component towards the limit."""
    sub = g.induced(comp)
    n = len(comp)
    best: Optional[tuple[tuple[int, int, int], set[int]]] = None
    roots = [comp[0], comp[len(comp) // 2], comp[-1]]
    for root in dict.fromkeys(roots):
        layers = sub.bfs_layers([root])
        below = 0
        for i in range(1, len(layers)):
            below += len(layers[i - 1])
            cut = layers[i]
            above = n - below - len(cut)
            worst = max(below, above)
            key = (0 if worst <= limit else 1, len(cut), worst)
            if best is None or key < best[0]:
                best = (key, set(cut))
    if best is not None:
        return best[1]
    # single-vertex component with limit 0: remove it outright
    return set(comp)


def balanced_separator(g: Graph, balance: float = 2 / 3) -> SeparatorResult:
    """A vertex set whose removal leaves components of at most balance * n.

    Heuristic: repeatedly split any oversized component along a BFS
    level cut, then greedily drop separator vertices while the balance
    holds.  The balance contract always holds; only the size is best
    effort (taking the whole vertex set is the trivial fallback).
    """
    if not 0 < balance < 1:
        raise ValueError("balance must be in (0, 1)")
    n = g.num_vertices()
    if n == 0:
        raise ValueError("empty graph")
    limit = int(balance * n)
    sep: set[int] = set()
    while True:
        rest = g.remove_vertices(sep)
        oversized = [c for c in rest.components() if len(c) > limit]
        if not oversized:
            break
        sep |= _level_cut(rest, oversized[0], limit)
    # greedy pruning, deterministic order
    for v in sorted(sep):
        cand = sep - {v}
        rest = g.remove_vertices(cand)
        if all(len(c) <= limit for c in rest.components()):
            sep = cand
    rest = g.remove_vertices(sep)
    worst = max((len(c) for c in rest.components()), default=0)
    return SeparatorResult(frozenset(sep), worst / n)


class TreeDecomposition:
    """Bags indexed by tree node; width is max bag size minus one."""

    __slots__ = ("tree", "bags")

    def __init__(self, tree: Graph, bags: dict[int, frozenset[int]]):
        self.tree = tree
        self.bags = {k: frozenset(b) for k, b in bags.items()}

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=1) - 1

    def validate(self, g: Graph) -> bool:
        """The three defining conditions, checked literally."""
        if set(self.bags) != set(self.tree.vertices):
            return False
        covered = set()
        for b in self.bags.values():
            covered |= b
        if covered != set(g.vertices):
            return False
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags.values()):
                return False
        for v in g.vertices:
            nodes = [t for t, b in self.bags.items() if v in b]
            if not self.tree.induced(nodes).is_connected():
                return False
        return True

    def __repr__(self) -> str:
        return f"TreeDecomposition(nodes={len(self.bags)}, width={self.width})"


def approx_tree_decomposition(g: Graph) -> TreeDecomposition:
    """Heuristic decomposition from a min-fill elimination order.

    Always a valid tree decomposition; the width is an upper bound
    certificate for the treewidth.
    """
    if g.num_vertices() == 0:
        return TreeDecomposition(Graph([0]), {0: frozenset()})
    adj: dict[int, set[int]] = {v: set(g.neighbors(v)) for v in g.vertices}
    order: list[int] = []
    bags: list[frozenset[int]] = []
    while adj:
        best_v = None
        best_key = None
        for v in sorted(adj):
            nbrs = adj[v]
            fill = sum(
                1
                for a in nbrs
                for b in nbrs
                if a < b and b not in adj[a]
            )
            key = (fill, len(nbrs), v)
            if best_key is None or key < best_key:
                best_key, best_v = key, v
        v = best_v
        nbrs = sorted(adj[v])
        bags.append(frozenset([v] + nbrs))
        order.append(v)
        for a in nbrs:
            for b in nbrs:
                if a < b:
                    adj[a].add(b)
                    adj[b].add(a)
        for a in nbrs:
            adj[a].discard(v)
        del adj[v]
    # attach each bag to the bag of the earliest-later-eliminated neighbour
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for i, v in enumerate(order):
        later = [w for w in bags[i] if w != v]
        if later:
            j = min(pos[w] for w in later)
            edges.append((i, j))
    tree = Graph(range(len(bags)), edges)
    # a tree must be connected: chain the component roots together
    comps = tree.components()
    if len(comps) > 1:
        extra = [(comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1)]
        tree = tree.add_edges(extra)
    td = TreeDecomposition(tree, dict(enumerate(bags)))
    return td


def treewidth_certificate(g: Graph) -> int:
    return approx_tree_decomposition(g).width


def planarizing_set(
    g: Graph,
    genus_budget: int,
    balance: float = 2 / 3,
    cap_factor: int = 1,
) -> list[int]:
    """Vertices whose removal leaves a planar graph, or a sound rejection.

    Nonplanar pieces are recursively separated level by level.  The
    pieces at one level are vertex-disjoint, and disjoint nonplanar
    subgraphs each carry Euler genus at least 1, so more than
    ``cap_factor * genus_budget`` of them certify that the Euler genus
    exceeds the budget: that is the rejection, raised as
    :class:`Rejected` with the pieces as evidence.
    """
    if genus_budget < 0:
        raise ValueError("genus budget must be nonnegative")
    cap = cap_factor * genus_budget
    out: set[int] = set()
    level = 0
    current: list[Graph] = [g.induced(c) for c in g.components()]
    while True:
        nonplanar = [h for h in current if not is_planar(h)]
        if not nonplanar:
            return sorted(out)
        if len(nonplanar) > cap:
            raise Rejected(
                excess_pieces_evidence(
                    "planarizing_set",
                    level,
                    [h.vertices for h in nonplanar],
                    cap,
                    genus_budget,
                )
            )
        nxt: list[Graph] = []
        for h in nonplanar:
            sep = balanced_separator(h, balance).separator
            out |= sep
            rest = h.remove_vertices(sep)
            nxt.extend(rest.induced(c) for c in rest.components())
        current = nxt
        level += 1


def minimal_planarizing_set(g: Graph, x: Iterable[int]) -> list[int]:
    """Greedy local improvement: drop vertices of x while g - x stays planar."""
    keep = set(x)
    for v in sorted(keep):
        cand = keep - {v}
        if is_planar(g.remove_vertices(cand)):
            keep = cand
    return sorted(keep)
