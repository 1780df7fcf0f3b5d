import random

from surfgraph.embeddings import euler_genus_of, sorted_rotation_embedding
from surfgraph.graphs import Graph, complete_graph, cycle_graph, grid_graph
from surfgraph.normalize import (
    ReplayLog,
    denormalize_embedding,
    find_free_subgraph,
    normalize,
)
from surfgraph.oracle import enumerate_min_genus_embeddings, exact_euler_genus
from surfgraph.planarity import planar_embedding


def test_k5_is_normalized():
    assert find_free_subgraph(complete_graph(5)) is None
    g, log = normalize(complete_graph(5))
    assert g == complete_graph(5) and not log


def test_pendant_path_is_a_petal():
    g = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    found = find_free_subgraph(g)
    assert found is not None
    hverts, portals = found
    assert len(portals) == 1
    gn, log = normalize(g)
    assert gn == complete_graph(3)
    assert len(log) == 1 and log.steps[0].is_petal


def test_clump_on_cycle():
    c10 = cycle_graph(10)
    g = c10.add_vertices([10]).add_edges([(0, 10), (1, 10)])
    found = find_free_subgraph(g)
    assert found is not None
    hverts, portals = found
    assert portals == (0, 1) and hverts == frozenset({0, 1, 10})
    gn, log = normalize(g)
    assert gn == c10  # the portal edge already exists
    assert len(log) == 1 and not log.steps[0].is_petal
    assert not log.steps[0].edge_added
    assert find_free_subgraph(gn) is None


def test_clump_adds_missing_edge():
    # two parallel length-2 paths across a K6 non-edge form a clump whose
    # replacement edge is genuinely missing
    k6_minus = complete_graph(6).remove_edges([(0, 1)])
    g = k6_minus.add_vertices([6, 7]).add_edges([(0, 6), (1, 6), (0, 7), (1, 7)])
    gn, log = normalize(g)
    assert gn == complete_graph(6)
    assert len(log) == 1 and log.steps[0].edge_added
    assert find_free_subgraph(gn) is None


def test_degree_never_increases():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(4, 9)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35]
        g = Graph(range(n), edges)
        gn, _ = normalize(g)
        assert gn.max_degree() <= max(g.max_degree(), 1)


def test_normalize_idempotent():
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(4, 9)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        g = Graph(range(n), edges)
        gn, _ = normalize(g)
        gn2, log2 = normalize(gn)
        assert gn2 == gn and not log2


def test_genus_preserved_small_oracle():
    """Euler genus of the normalized graph equals that of the input."""
    rng = random.Random(15)
    done = 0
    while done < 25:
        n = rng.randint(4, 8)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.45]
        g = Graph(range(n), edges)
        gn, _ = normalize(g)
        assert exact_euler_genus(g) == exact_euler_genus(gn)
        done += 1


def test_denormalize_identity_on_empty_log():
    e = planar_embedding(grid_graph(3, 3))
    out = denormalize_embedding(ReplayLog([]), e)
    assert out.graph == e.graph


def test_denormalize_petal_keeps_genus():
    g = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    gn, log = normalize(g)
    e = planar_embedding(gn)
    out = denormalize_embedding(log, e)
    assert out.graph == g
    assert euler_genus_of(out) == 0


def test_denormalize_on_min_genus_embedding():
    """Replay onto an oracle minimum-genus embedding preserves the genus."""
    k5 = complete_graph(5)
    g = k5.add_vertices([5, 6]).add_edges([(0, 5), (5, 6), (6, 0)])
    gn, log = normalize(g)
    assert gn == k5
    emb = next(enumerate_min_genus_embeddings(gn))
    out = denormalize_embedding(log, emb)
    assert out.graph == g
    assert euler_genus_of(out) == euler_genus_of(emb) == 1
    assert exact_euler_genus(g) == 1


def test_denormalize_random_roundtrip():
    rng = random.Random(23)
    done = 0
    while done < 20:
        n = rng.randint(5, 9)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
        g = Graph(range(n), edges)
        gn, log = normalize(g)
        if not log:
            continue
        e = sorted_rotation_embedding(gn)
        base = euler_genus_of(e)
        out = denormalize_embedding(log, e)
        assert out.graph == g
        assert euler_genus_of(out) == base
        done += 1
