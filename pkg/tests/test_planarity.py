import pytest

from surfgraph.embeddings import EmbeddingError, euler_genus_of, trace_faces
from surfgraph.graphs import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    grid_graph,
)
from surfgraph.planarity import (
    embed_patch_in_disk,
    embed_with_shared_face,
    find_cycle_face,
    is_planar,
    kuratowski_subgraph,
    planar_embedding,
)


def test_is_planar_basics():
    assert is_planar(grid_graph(5, 5))
    assert is_planar(complete_graph(4))
    assert not is_planar(complete_graph(5))
    assert not is_planar(complete_bipartite_graph(3, 3))


def test_planar_embedding_traces_to_zero():
    for g in (grid_graph(4, 4), complete_graph(4), cycle_graph(7)):
        assert euler_genus_of(planar_embedding(g)) == 0


def test_kuratowski_subgraph():
    k = kuratowski_subgraph(complete_graph(6))
    assert not is_planar(k)
    assert set(k.edges) <= set(complete_graph(6).edges)


def test_embed_with_shared_face():
    g = grid_graph(3, 3)
    emb, fi = embed_with_shared_face(g, [0, 2])
    assert euler_genus_of(emb) == 0
    face = trace_faces(emb)[fi]
    assert 0 in face.vertices and 2 in face.vertices


def test_embed_with_shared_face_impossible():
    # K4 plus a vertex adjacent to all: no face contains all four K4 vertices
    g = complete_graph(4)
    with pytest.raises(ValueError):
        embed_with_shared_face(g, [0, 1, 2, 3])


def test_embed_patch_in_disk_wheel():
    # wheel W5: rim cycle as boundary, hub inside
    rim = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(5, i) for i in range(5)]
    w5 = Graph(range(6), rim + spokes)
    emb = embed_patch_in_disk(w5, [0, 1, 2, 3, 4])
    assert euler_genus_of(emb) == 0
    assert find_cycle_face(emb, [0, 1, 2, 3, 4]) is not None


def test_embed_patch_in_disk_cycle_itself():
    c = cycle_graph(5)
    emb = embed_patch_in_disk(c, list(range(5)))
    assert len(trace_faces(emb)) == 2


def test_embed_patch_in_disk_k4_triangle():
    emb = embed_patch_in_disk(complete_graph(4), [0, 1, 2])
    assert find_cycle_face(emb, [0, 1, 2]) is not None
    assert euler_genus_of(emb) == 0


def test_embed_patch_in_disk_impossible():
    # two vertices on both sides of the triangle: no embedding keeps it a face
    g = Graph(range(5), [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2)])
    with pytest.raises(EmbeddingError):
        embed_patch_in_disk(g, [0, 1, 2])


def test_embed_patch_in_disk_pocket_cleanup():
    """A piece attached to two adjacent boundary vertices must flip outside."""
    c = cycle_graph(6)
    g = c.add_vertices([6]).add_edges([(6, 0), (6, 1)])
    emb = embed_patch_in_disk(g, list(range(6)))
    assert find_cycle_face(emb, list(range(6))) is not None
