import pytest

from surfgraph.graphs import (
    Graph,
    MinorMapping,
    complete_graph,
    cycle_graph,
    grid_graph,
    parse_edge_list,
    path_graph,
    torus_grid_graph,
    verify_minor_mapping,
    write_edge_list,
)


def test_basic_construction():
    g = Graph([0, 1, 2], [(0, 1), (1, 2)])
    assert g.vertices == (0, 1, 2)
    assert g.edges == ((0, 1), (1, 2))
    assert g.neighbors(1) == (0, 2)
    assert g.degree(1) == 2 and g.degree(0) == 1


def test_no_loops():
    with pytest.raises(ValueError):
        Graph([0], [(0, 0)])


def test_parallel_edges_collapse():
    g = Graph([0, 1], [(0, 1), (1, 0)])
    assert g.num_edges() == 1


def test_components_and_connectivity():
    g = Graph(range(5), [(0, 1), (2, 3)])
    assert g.components() == [(0, 1), (2, 3), (4,)]
    assert not g.is_connected()
    assert grid_graph(3, 3).is_connected()


def test_articulation_points():
    # path: all interior vertices cut
    assert path_graph(5).articulation_points() == [1, 2, 3]
    assert cycle_graph(5).articulation_points() == []
    bowtie = Graph(range(5), [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    assert bowtie.articulation_points() == [2]


def test_separation_pairs_cycle():
    pairs = set(cycle_graph(6).separation_pairs())
    # nonadjacent pairs of a 6-cycle separate it
    assert (0, 3) in pairs and (1, 4) in pairs
    assert (0, 1) not in pairs
    assert list(complete_graph(5).separation_pairs()) == []


def test_edge_list_roundtrip():
    text = "# comment\n0 1\n1 2\n\n7\n"
    g = parse_edge_list(text)
    assert g.vertices == (0, 1, 2, 7)
    assert g.edges == ((0, 1), (1, 2))
    out = write_edge_list(g)
    assert parse_edge_list(out) == g
    assert write_edge_list(parse_edge_list(out)) == out


def test_edge_list_errors():
    with pytest.raises(ValueError):
        parse_edge_list("0 x\n")
    with pytest.raises(ValueError):
        parse_edge_list("-1 2\n")
    with pytest.raises(ValueError):
        parse_edge_list("1 2 3\n")


def test_verify_minor_mapping_identity():
    g = complete_graph(4)
    mm = MinorMapping(g, g, {v: frozenset([v]) for v in g.vertices})
    assert verify_minor_mapping(mm)


def test_verify_minor_mapping_disconnected_branch_set():
    host = path_graph(4)  # 0-1-2-3
    minor = Graph([0, 1], [(0, 1)])
    mm = MinorMapping(host, minor, {0: frozenset([0, 3]), 1: frozenset([1])})
    assert not verify_minor_mapping(mm)


def test_verify_minor_mapping_missing_edge_witness():
    host = Graph(range(4), [(0, 1), (2, 3)])
    minor = Graph([0, 1], [(0, 1)])
    mm = MinorMapping(host, minor, {0: frozenset([0, 1]), 1: frozenset([2, 3])})
    assert not verify_minor_mapping(mm)


def test_verify_minor_mapping_overlap():
    g = complete_graph(3)
    minor = Graph([0, 1], [(0, 1)])
    mm = MinorMapping(g, minor, {0: frozenset([0, 1]), 1: frozenset([1, 2])})
    assert not verify_minor_mapping(mm)


def test_exhaustive_cross_check_small_minors():
    """verify_minor_mapping agrees with a direct condition-by-condition check."""

    def independent_check(mm):
        seen = set()
        for v in mm.minor.vertices:
            bs = mm.branch_sets.get(v)
            if not bs:
                return False
            for x in bs:
                if x in seen or not mm.host.has_vertex(x):
                    return False
                seen.add(x)
        for v in mm.minor.vertices:
            bs = sorted(mm.branch_sets[v])
            reach = {bs[0]}
            frontier = [bs[0]]
            while frontier:
                u = frontier.pop()
                for w in mm.host.neighbors(u):
                    if w in mm.branch_sets[v] and w not in reach:
                        reach.add(w)
                        frontier.append(w)
            if reach != set(bs):
                return False
        for u, v in mm.minor.edges:
            if not any(
                mm.host.has_edge(x, y)
                for x in mm.branch_sets[u]
                for y in mm.branch_sets[v]
            ):
                return False
        return True

    import itertools
    import random

    rng = random.Random(11)
    host = grid_graph(3, 3)
    minor = cycle_graph(3)
    hits = 0
    for _ in range(300):
        cells = list(host.vertices)
        rng.shuffle(cells)
        sizes = [rng.randint(1, 2) for _ in range(3)]
        sets = {}
        i = 0
        ok = True
        for v, s in zip(minor.vertices, sizes):
            sets[v] = frozenset(cells[i : i + s])
            i += s
        mm = MinorMapping(host, minor, sets)
        assert verify_minor_mapping(mm) == independent_check(mm)
        hits += verify_minor_mapping(mm)
    assert hits > 0  # some random mappings are valid


def test_grid_and_torus_constructors():
    g = grid_graph(3, 4)
    assert g.num_vertices() == 12 and g.num_edges() == 3 * 3 + 2 * 4
    t = torus_grid_graph(3, 3)
    assert t.num_vertices() == 9 and t.num_edges() == 18
    assert all(t.degree(v) == 4 for v in t.vertices)
