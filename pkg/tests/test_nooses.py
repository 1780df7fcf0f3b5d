import random

import pytest

from surfgraph.embeddings import (
    RotationEmbedding,
    euler_genus_of,
    restrict_embedding,
    trace_faces,
)
from surfgraph.graphs import Graph, complete_graph, torus_grid_graph
from surfgraph.nooses import (
    RadialGraph,
    _homology_tables,
    cut_vertices_of_noose_and_restrict,
    representativity,
    shortest_noncontractible_noose,
)
from surfgraph.oracle import enumerate_min_genus_embeddings
from surfgraph.planarity import planar_embedding


def torus_embedding(k):
    tor = torus_grid_graph(k, k)
    rot = {}
    for i in range(k):
        for j in range(k):
            v = i * k + j
            rot[v] = (
                ((i - 1) % k) * k + j,
                i * k + (j + 1) % k,
                ((i + 1) % k) * k + j,
                i * k + (j - 1) % k,
            )
    return RotationEmbedding(tor, rot)


def random_connected_embedding(rng, n=6, p=0.5):
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph(range(n), edges)
        if g.is_connected() and g.num_edges() >= n:
            break
    rot = {}
    for v in g.vertices:
        ns = list(g.neighbors(v))
        rng.shuffle(ns)
        rot[v] = tuple(ns)
    sgn = {e: rng.choice([1, -1]) for e in g.edges}
    return RotationEmbedding(g, rot, sgn)


def test_radial_graph_invariants():
    """The radial graph is quadrangular and lives on the same surface."""
    rng = random.Random(9)
    for _ in range(60):
        e = random_connected_embedding(rng)
        r = RadialGraph(e)
        face_of, orbits = r.mesh.face_orbit_of_state()
        assert len(orbits) == e.graph.num_edges()
        assert all(len(o) == 4 for o in orbits)
        genera = r.mesh.component_genera()
        assert genera == [euler_genus_of(e)]
        w1, hcl, rank = _homology_tables(r.mesh)
        assert rank == euler_genus_of(e)


def test_planar_embedding_has_no_noose():
    assert shortest_noncontractible_noose(planar_embedding(complete_graph(4))) is None
    assert representativity(planar_embedding(complete_graph(4))) is None


def test_torus_c4_representativity_four():
    e = torus_embedding(4)
    n = shortest_noncontractible_noose(e, "any")
    assert n.length == 4
    assert not n.orientation_reversing
    assert not n.separating
    assert representativity(e) == 4


def test_torus_no_orientation_reversing_noose():
    assert shortest_noncontractible_noose(torus_embedding(3), "orientation_reversing") is None


def test_torus_nonseparating_mode():
    n = shortest_noncontractible_noose(torus_embedding(4), "nonseparating")
    assert n is not None and n.length == 4


def test_cut_torus_meridian():
    e = torus_embedding(4)
    n = shortest_noncontractible_noose(e, "any")
    g2, e2 = cut_vertices_of_noose_and_restrict(e.graph, e, n)
    assert g2.num_vertices() == 12
    assert euler_genus_of(e2) == 0


def test_projective_k5_cut_leaves_planar():
    k5e = next(enumerate_min_genus_embeddings(complete_graph(5)))
    n = shortest_noncontractible_noose(k5e, "any")
    assert n is not None
    g2, e2 = cut_vertices_of_noose_and_restrict(k5e.graph, k5e, n)
    assert euler_genus_of(e2) == 0


def exhaustive_shortest(e, mode):
    """Oracle: enumerate all simple cycles of the radial graph and classify."""
    from surfgraph.nooses import _MODES, _cycle_is_contractible

    r = RadialGraph(e)
    mesh = r.mesh
    w1, hcl, _ = _homology_tables(mesh)
    isv = r.is_vnode()
    best = None
    nd = 2 * len(mesh.edge_ends)

    def dfs(start, node, darts, used_nodes):
        nonlocal best
        for d in mesh.rot[node]:
            head = mesh.dart_head(d)
            if darts and (d >> 1) == (darts[-1] >> 1):
                continue
            if head == start and len(darts) >= 1:
                cyc = darts + [d]
                csgn = 0
                ccls = 0
                for dd in cyc:
                    csgn ^= w1[dd >> 1]
                    ccls ^= hcl[dd >> 1]
                if mode == "orientation_reversing":
                    hit = csgn == 1
                elif mode == "nonseparating":
                    hit = ccls != 0
                else:
                    hit = csgn == 1 or ccls != 0 or not _cycle_is_contractible(mesh, cyc)
                if hit:
                    ln = sum(1 for dd in cyc if isv[mesh.dart_head(dd)])
                    if best is None or ln < best:
                        best = ln
                continue
            if head in used_nodes or head < start:
                continue
            dfs(start, head, darts + [d], used_nodes | {head})

    for s in range(mesh.nnodes):
        dfs(s, s, [], {s})
    return best


def test_noose_minimality_vs_exhaustive():
    """On radial graphs with at most 14 nodes the sweep is provably minimal."""
    rng = random.Random(21)
    checked = 0
    for _ in range(200):
        e = random_connected_embedding(rng, n=5, p=0.55)
        r = RadialGraph(e)
        if r.mesh.nnodes > 14:
            continue
        if euler_genus_of(e) == 0:
            continue
        checked += 1
        for mode in ("any", "orientation_reversing", "nonseparating"):
            got = shortest_noncontractible_noose(e, mode)
            want = exhaustive_shortest(e, mode)
            if want is None:
                assert got is None
            else:
                assert got is not None and got.length == want, (mode, e.rotation, e.sign)
        if checked >= 40:
            break
    assert checked >= 20


def test_representativity_after_deletion():
    """rho' >= rho - |X| under vertex deletion (500 random pairs)."""
    rng = random.Random(33)
    done = 0
    while done < 500:
        e = random_connected_embedding(rng, n=rng.randint(5, 7), p=0.6)
        rho = representativity(e)
        if rho is None:
            continue
        k = rng.randint(1, 2)
        xs = rng.sample(list(e.graph.vertices), k)
        sub = restrict_embedding(e, xs)
        comps = sub.graph.components()
        rho2 = None
        for comp in comps:
            ce = restrict_embedding(sub, set(sub.graph.vertices) - set(comp))
            if ce.graph.num_edges() == 0:
                continue
            r = representativity(ce)
            if r is not None and (rho2 is None or r < rho2):
                rho2 = r
        if rho2 is not None:
            assert rho2 >= rho - len(xs)
        done += 1
