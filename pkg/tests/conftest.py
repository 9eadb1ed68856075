import os

import pytest

from ksetwl import build_graph, parse_tu_dataset

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")
MUTAG_DIR = os.path.join(DATA_DIR, "MUTAG")


@pytest.fixture
def tri():
    """K3: the complete graph on three vertices."""
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def e1i():
    """One edge 0-1 plus the isolated vertex 2."""
    return build_graph(3, [(0, 1)])


@pytest.fixture
def p3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def p4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def c6():
    return build_graph(6, [(i, (i + 1) % 6) for i in range(6)])


@pytest.fixture
def two_k3():
    """Two disjoint triangles; 2-regular like C6 but not isomorphic to it."""
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def random_graph(rng, n, p, labeled=False):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    labels = rng.integers(0, 3, size=n).tolist() if labeled else None
    return build_graph(n, edges, node_labels=labels)


@pytest.fixture(scope="session")
def mutag():
    return parse_tu_dataset(MUTAG_DIR, "MUTAG")


@pytest.fixture
def two_triangle_dir(tmp_path):
    """Hand-built TU fixture: 6 nodes, two triangles, edges both directions."""
    d = tmp_path / "TWOTRI"
    d.mkdir()
    edges = []
    for a, b in [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]:
        edges += [f"{a}, {b}", f"{b}, {a}"]
    (d / "TWOTRI_A.txt").write_text("\n".join(edges) + "\n")
    (d / "TWOTRI_graph_indicator.txt").write_text(
        "\n".join(["1"] * 3 + ["2"] * 3) + "\n")
    (d / "TWOTRI_graph_labels.txt").write_text("1\n-1\n")
    return str(d)


def label_groups(labels_by_item):
    """Partition induced by a labeling, independent of label values."""
    groups = {}
    items = (labels_by_item.items() if isinstance(labels_by_item, dict)
             else enumerate(labels_by_item))
    for item, lab in items:
        groups.setdefault(lab, []).append(item)
    return {frozenset(members) for members in groups.values()}
