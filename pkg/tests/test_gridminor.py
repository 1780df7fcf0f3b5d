import pytest

from surfgraph.decomp import planarizing_set
from surfgraph.graphs import (
    Graph,
    MinorMapping,
    complete_bipartite_graph,
    complete_graph,
    cylinder_graph,
    grid_graph,
    torus_grid_graph,
)
from surfgraph.gridminor import (
    GridMinor,
    TooSmall,
    flat_grid_minor,
    is_flat,
    large_planar_piece,
    planar_grid_minor,
    planarly_nested_sequence,
    surviving_subgrid,
    validate_nested_cycles,
)
from surfgraph.planarity import is_planar
from surfgraph.rejection import Rejected


def identity_grid(r):
    g = grid_graph(r, r)
    mm = MinorMapping(g, g, {v: frozenset([v]) for v in range(r * r)})
    return GridMinor(r, r, mm)


def test_grid_input_recovers_large_grid():
    gm = planar_grid_minor(grid_graph(10, 10))
    assert gm.size >= 5
    assert gm.verify()


def test_star_gives_single_cell():
    gm = planar_grid_minor(Graph(range(10), [(0, i) for i in range(1, 10)]))
    assert gm.size == 1


def test_random_planar_has_two_by_two():
    import random

    import networkx as nx

    rng = random.Random(5)
    geo = nx.random_geometric_graph(80, 0.2, seed=6)
    g = Graph(geo.nodes, geo.edges)
    edges = sorted(g.edges)
    while not is_planar(g):
        g = g.remove_edges([edges.pop()])
    g = g.induced(max(g.components(), key=len))
    gm = planar_grid_minor(g)
    assert gm.size >= 2
    assert gm.verify()


def test_nonplanar_input_rejected():
    with pytest.raises(ValueError):
        planar_grid_minor(complete_graph(5))


def test_surviving_subgrid_no_deletions():
    s = surviving_subgrid(identity_grid(6), set())
    assert s.size == 6 and s.verify()


def test_surviving_subgrid_one_deletion():
    s = surviving_subgrid(identity_grid(10), {0})
    assert s.size >= 9
    assert s.verify()


def test_surviving_subgrid_full_row():
    """Deleting a full row splits the 6x6 grid into 3x6 and 2x6 bands, so the
    best surviving square is 3x3 (exhaustively checkable at this size)."""
    deleted = {2 * 6 + j for j in range(6)}
    s = surviving_subgrid(identity_grid(6), deleted)
    assert s.size == 3
    assert s.verify()


def test_surviving_subgrid_contract():
    import random

    rng = random.Random(9)
    for _ in range(20):
        r = rng.randint(3, 8)
        f = rng.randint(0, r - 1)
        deleted = set(rng.sample(range(r * r), f))
        s = surviving_subgrid(identity_grid(r), deleted)
        assert s.size >= r - f
        assert s.verify()


def test_large_planar_piece_grid():
    x, piece, gm = large_planar_piece(grid_graph(10, 10), 1)
    assert x == []
    assert piece.num_vertices() == 100
    assert gm.size >= 5


def test_large_planar_piece_k5():
    x, piece, gm = large_planar_piece(complete_graph(5), 1)
    assert len(x) >= 1
    assert is_planar(piece)


def test_large_planar_piece_rejects():
    g = Graph(
        range(15),
        [(5 * c + i, 5 * c + j) for c in range(3) for i in range(5) for j in range(i + 1, 5)],
    )
    with pytest.raises(Rejected):
        large_planar_piece(g, 1)


def test_flat_grid_on_plain_grid():
    flat, gm = flat_grid_minor(grid_graph(12, 12), 1, 3)
    assert gm.size >= 3
    assert is_flat(grid_graph(12, 12), flat.vertices)


def test_flat_grid_on_torus():
    tor = torus_grid_graph(20, 20)
    flat, gm = flat_grid_minor(tor, 2, 3)
    assert gm.size >= 3
    assert is_flat(tor, flat.vertices)


def test_flat_grid_too_small():
    with pytest.raises(TooSmall):
        flat_grid_minor(complete_graph(5), 1, 3)


def test_flatness_predicate_is_exact():
    g = grid_graph(5, 5)
    # interior block of a grid is flat; a block missing a corner still is
    inner = [i * 5 + j for i in range(1, 4) for j in range(1, 4)]
    assert is_flat(g, inner)
    # the whole grid has no outside edges, trivially flat
    assert is_flat(g, g.vertices)


def test_nested_sequence_on_grid():
    g = grid_graph(16, 16)
    nc = planarly_nested_sequence(g, 1, 3)
    assert len(nc) >= 3
    assert validate_nested_cycles(g, nc)


def test_nested_sequence_too_small():
    with pytest.raises(TooSmall):
        planarly_nested_sequence(complete_bipartite_graph(3, 3), 1, 2)


def test_nested_sequence_on_torus():
    tor = torus_grid_graph(20, 20)
    nc = planarly_nested_sequence(tor, 2, 3)
    assert len(nc) >= 3
    assert validate_nested_cycles(tor, nc)


def test_nested_witness_rejects_bad_sequences():
    from surfgraph.gridminor import NestedCycles

    g = grid_graph(16, 16)
    nc = planarly_nested_sequence(g, 1, 3)
    # reversing the cycle order breaks the nesting chain
    bad = NestedCycles(list(reversed(nc.cycles)), nc.marker)
    assert not validate_nested_cycles(g, bad)
    # a marker on a cycle is invalid
    bad2 = NestedCycles(nc.cycles, nc.cycles[0][0])
    assert not validate_nested_cycles(g, bad2)
