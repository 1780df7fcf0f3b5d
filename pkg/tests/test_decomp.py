import itertools

import pytest

from surfgraph.decomp import (
    approx_tree_decomposition,
    balanced_separator,
    minimal_planarizing_set,
    planarizing_set,
)
from surfgraph.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    grid_graph,
    path_graph,
    torus_grid_graph,
)
from surfgraph.planarity import is_planar
from surfgraph.rejection import Rejected, reverify_evidence


def brute_force_min_balanced_separator(g, balance):
    n = g.num_vertices()
    limit = int(balance * n)
    for k in range(n + 1):
        for sub in itertools.combinations(g.vertices, k):
            rest = g.remove_vertices(sub)
            if all(len(c) <= limit for c in rest.components()):
                return k
    return n


def test_path_separator_is_middle():
    s = balanced_separator(path_graph(9))
    assert len(s.separator) == 1
    assert s.balance <= 0.5


def test_k6_separator_balance():
    s = balanced_separator(complete_graph(6))
    rest = complete_graph(6).remove_vertices(s.separator)
    assert all(len(c) <= 4 for c in rest.components())


def test_grid_separator_within_bounds():
    g = grid_graph(8, 8)
    s = balanced_separator(g)
    assert len(s.separator) <= 16
    assert s.balance <= 2 / 3
    # exhaustive optimum on the 4x4 grid for comparison with the heuristic
    g4 = grid_graph(4, 4)
    opt = brute_force_min_balanced_separator(g4, 2 / 3)
    got = len(balanced_separator(g4).separator)
    assert opt <= got <= 4 * opt + 2


def test_balance_contract_random():
    import random

    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(2, 14)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
        g = Graph(range(n), edges)
        s = balanced_separator(g)
        rest = g.remove_vertices(s.separator)
        assert all(len(c) <= (2 / 3) * n for c in rest.components())


def brute_force_treewidth(g):
    """Exact treewidth by Held-Karp style subset DP (tiny graphs only)."""
    vs = list(g.vertices)
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    nbr = [0] * n
    for u, v in g.edges:
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    INF = n + 1
    dp = [INF] * (1 << n)
    dp[0] = -1
    for mask in range(1, 1 << n):
        best = INF
        for i in range(n):
            if not mask & (1 << i):
                continue
            prev = mask ^ (1 << i)
            # degree of i towards the rest after eliminating prev: standard
            # q(S, v) = number of vertices outside S reachable from v via S
            seen = 1 << i
            stack = [i]
            reach = 0
            while stack:
                x = stack.pop()
                m = nbr[x] & ~seen
                inside = m & prev
                outside = m & ~prev & ~(1 << i)
                reach |= outside
                seen |= m
                mm = inside
                while mm:
                    b = mm & -mm
                    stack.append(b.bit_length() - 1)
                    mm ^= b
            q = bin(reach).count("1")
            best = min(best, max(dp[prev], q))
        dp[mask] = best
    return dp[(1 << n) - 1]


def test_tree_decomposition_validity_and_widths():
    cases = [
        (path_graph(6), 1, 1),
        (cycle_graph(5), 2, 2),
        (complete_graph(5), 4, 4),
    ]
    for g, lo, hi in cases:
        td = approx_tree_decomposition(g)
        assert td.validate(g)
        assert lo <= td.width <= hi


def test_grid_width_certificate():
    g = grid_graph(5, 5)
    td = approx_tree_decomposition(g)
    assert td.validate(g)
    assert 5 <= td.width <= 15
    # exact treewidth of the 3x3 grid is 3
    g3 = grid_graph(3, 3)
    assert brute_force_treewidth(g3) == 3
    assert approx_tree_decomposition(g3).width >= 3


def test_tree_decomposition_disconnected():
    g = Graph(range(6), [(0, 1), (2, 3), (4, 5)])
    td = approx_tree_decomposition(g)
    assert td.validate(g)
    assert td.width == 1


def test_planarizing_planar_is_empty():
    assert planarizing_set(grid_graph(5, 5), 1) == []
    assert planarizing_set(grid_graph(5, 5), 0) == []


def test_planarizing_k5():
    x = planarizing_set(complete_graph(5), 1)
    assert len(x) >= 1
    assert is_planar(complete_graph(5).remove_vertices(x))


def test_planarizing_rejects_three_k5s():
    g = Graph(
        range(15),
        [(5 * c + i, 5 * c + j) for c in range(3) for i in range(5) for j in range(i + 1, 5)],
    )
    with pytest.raises(Rejected) as exc:
        planarizing_set(g, 1)
    assert reverify_evidence(g, exc.value.evidence)


def test_planarizing_never_rejects_within_budget():
    """Zero false rejections: on small graphs, rejection implies genus > budget."""
    import random

    from surfgraph.oracle import exact_euler_genus

    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(4, 8)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
        g = Graph(range(n), edges)
        for budget in range(0, 3):
            try:
                x = planarizing_set(g, budget)
                assert is_planar(g.remove_vertices(x))
            except Rejected:
                assert exact_euler_genus(g) > budget


def test_minimal_planarizing_set_shrinks():
    tor = torus_grid_graph(8, 8)
    x = planarizing_set(tor, 2)
    xmin = minimal_planarizing_set(tor, x)
    assert len(xmin) <= len(x)
    assert is_planar(tor.remove_vertices(xmin))
