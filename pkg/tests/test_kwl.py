import numpy as np
import pytest

from ksetwl import (LabelInterner, ResourceLimitError, build_graph,
                    build_kset_graph, c_neighborhood, enumerate_ksets,
                    global_neighbors, iso_type, kset_colorings,
                    local_neighbors)
from ksetwl.kwl import iso_code

from conftest import label_groups, random_graph


def test_iso_type_symmetric_triangle(tri):
    it = LabelInterner()
    ids = {iso_type(tri, t, it) for t in [(0, 1), (0, 2), (1, 2)]}
    assert len(ids) == 1


def test_iso_type_edge_vs_nonedge(e1i):
    it = LabelInterner()
    assert iso_type(e1i, (0, 1), it) != iso_type(e1i, (0, 2), it)


def test_iso_type_path_vs_disconnected_triple(p4):
    # {0,1,2} induces a 2-path, {0,1,3} an edge plus an isolated vertex
    it = LabelInterner()
    assert iso_type(p4, (0, 1, 2), it) != iso_type(p4, (0, 1, 3), it)


def test_iso_type_respects_node_labels():
    plain = build_graph(2, [(0, 1)])
    tagged = build_graph(2, [(0, 1)], node_labels=[1, 2])
    it = LabelInterner()
    assert iso_type(plain, (0, 1), it) != iso_type(tagged, (0, 1), it)


def test_iso_type_respects_edge_labels():
    single = build_graph(2, [(0, 1)], node_labels=[0, 0], edge_labels=[1])
    double = build_graph(2, [(0, 1)], node_labels=[0, 0], edge_labels=[2])
    it = LabelInterner()
    assert iso_type(single, (0, 1), it) != iso_type(double, (0, 1), it)


def test_iso_code_is_host_independent(tri, two_k3):
    # a triangle's 2-set and a 2-set inside one of the two disjoint
    # triangles induce the same labeled subgraph
    assert iso_code(tri, (0, 1)) == iso_code(two_k3, (3, 4))


def test_global_neighbor_count():
    rng = np.random.default_rng(2)
    for _ in range(10):
        n = int(rng.integers(3, 10))
        k = int(rng.integers(2, min(4, n) + 1))
        g = random_graph(rng, n, 0.4)
        t = tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))
        nbrs = global_neighbors(g, t)
        assert len(nbrs) == k * (n - k)
        assert len(set(nbrs)) == len(nbrs)


def test_global_neighbors_examples(e1i):
    assert sorted(global_neighbors(e1i, (0, 1))) == [(0, 2), (1, 2)]
    assert global_neighbors(build_graph(2, [(0, 1)]), (0, 1)) == []


def test_local_neighbors_need_an_incoming_edge(e1i, tri):
    assert local_neighbors(e1i, (0, 1)) == []
    assert sorted(local_neighbors(tri, (0, 1))) == [(0, 2), (1, 2)]


def test_local_neighbors_cross_pair(two_k3):
    it = LabelInterner()
    nbrs = local_neighbors(two_k3, (0, 3))
    assert len(nbrs) == 8
    kinds = [iso_type(two_k3, s, it) for s in nbrs]
    edge_type = iso_type(two_k3, (0, 1), it)
    assert sum(1 for kind in kinds if kind == edge_type) == 4


def test_local_subset_of_global():
    rng = np.random.default_rng(4)
    for _ in range(20):
        n = int(rng.integers(3, 11))
        k = int(rng.integers(2, min(4, n) + 1))
        g = random_graph(rng, n, 0.5)
        t = tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))
        assert set(local_neighbors(g, t)) <= set(global_neighbors(g, t))


def test_kset_graph_triangle(tri):
    sg = build_kset_graph(tri, 2)
    assert sg.num_sets == 3
    assert np.all(np.diff(sg.indptr) == 2)


def test_kset_graph_is_directed(e1i):
    sg = build_kset_graph(e1i, 2)
    index = sg.index
    out_deg = np.diff(sg.indptr)
    assert out_deg[index.rank((0, 1))] == 0
    assert out_deg[index.rank((0, 2))] >= 1
    assert out_deg[index.rank((1, 2))] >= 1


def test_kset_graph_empty_when_too_few_vertices():
    g = build_graph(2, [(0, 1)])
    assert build_kset_graph(g, 3).num_sets == 0


def test_kset_graph_edge_count_matches_neighbor_sum(tri, e1i, p4):
    for g in (tri, e1i, p4):
        sg = build_kset_graph(g, 2)
        expected = sum(len(local_neighbors(g, tuple(int(v) for v in row)))
                       for row in sg.index.all_sets())
        assert sg.num_edges == expected


def test_budget_guard(p4):
    with pytest.raises(ResourceLimitError):
        build_kset_graph(p4, 2, max_sets=3)


def test_ball_radius_zero(tri):
    assert c_neighborhood(tri, (0, 2), 0) == {(0, 2)}


def test_ball_stops_without_out_edges(e1i):
    assert c_neighborhood(e1i, (0, 1), 5) == {(0, 1)}


def test_ball_covers_triangle(tri):
    assert c_neighborhood(tri, (0, 1), 1) == {(0, 1), (0, 2), (1, 2)}


def test_local_refinement_fully_symmetric(tri):
    cols = kset_colorings(tri, 2, 3, LabelInterner(), local=True)
    assert all(list(c.histogram().values()) == [3.0] for c in cols)


def test_refinement_blocks_empty_below_k():
    g = build_graph(2, [(0, 1)])
    cols = kset_colorings(g, 3, 2, LabelInterner())
    assert len(cols) == 3
    assert all(len(c.labels) == 0 for c in cols)


def test_global_refinement_splits_edge_graph(e1i):
    cols = kset_colorings(e1i, 2, 1, LabelInterner(), local=False)
    assert sorted(cols[1].histogram().values()) == [1.0, 2.0]


def test_global_equals_local_on_complete_graphs():
    g = build_graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    a = kset_colorings(g, 2, 3, LabelInterner(), local=True)
    b = kset_colorings(g, 2, 3, LabelInterner(), local=False)
    for ca, cb in zip(a, b):
        assert label_groups(ca.labels.tolist()) == label_groups(cb.labels.tolist())


def test_histogram_mass_is_set_count():
    rng = np.random.default_rng(6)
    for _ in range(8):
        n = int(rng.integers(2, 10))
        g = random_graph(rng, n, 0.5)
        for k in (2, 3):
            size = enumerate_ksets(g, k).size
            for c in kset_colorings(g, k, 2, LabelInterner()):
                assert sum(c.histogram().values()) == size


def test_partition_refines_monotonically():
    rng = np.random.default_rng(9)
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(4, 9)), 0.5)
        for local in (True, False):
            cols = kset_colorings(g, 2, 3, LabelInterner(), local=local)
            for prev, cur in zip(cols, cols[1:]):
                coarse = label_groups(prev.labels.tolist())
                fine = label_groups(cur.labels.tolist())
                for cls in fine:
                    assert any(cls <= sup for sup in coarse)


def test_features_invariant_under_vertex_permutation():
    rng = np.random.default_rng(13)
    for _ in range(10):
        n = int(rng.integers(3, 9))
        g = random_graph(rng, n, 0.5, labeled=True)
        perm = rng.permutation(n)
        inverse = np.argsort(perm)
        relabeled = build_graph(
            n, [(int(perm[u]), int(perm[v])) for u, v in g.edge_list()],
            node_labels=g.node_labels[inverse].tolist())
        it = LabelInterner()
        left = kset_colorings(g, 2, 2, it)
        right = kset_colorings(relabeled, 2, 2, it)
        for ca, cb in zip(left, right):
            assert ca.histogram() == cb.histogram()
