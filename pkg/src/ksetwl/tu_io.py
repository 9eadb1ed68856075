"""Reading benchmark datasets in the TU text layout and writing kernel
matrices / feature vectors for external SVM tools.

The TU layout is a directory of line-oriented files sharing a dataset-name
prefix: DS_A.txt (global 1-based edge rows "i, j"), DS_graph_indicator.txt
(graph id per node), DS_graph_labels.txt, and optionally DS_node_labels.txt
and DS_edge_labels.txt.  Edge rows may list each undirected edge once or in
both directions; the parser symmetrizes either way.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import FormatError
from .graph import Dataset, build_graph


def _read_int_lines(path: str, what: str) -> list[int]:
    out = []
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(int(line))
            except ValueError as exc:
                raise FormatError(
                    f"{path}:{lineno}: expected an integer {what}, got {line!r}"
                ) from exc
    return out


def parse_tu_dataset(path: str, name: str | None = None) -> Dataset:
    """Load one dataset directory into per-graph 0-based Graph objects.

    Mandatory files: edges, graph indicator, graph labels.  Node and edge
    label files are attached when present and silently skipped otherwise.
    Raises FormatError (naming the offending line where applicable) for
    cross-graph edges, 0-based node ids, or mutually inconsistent counts.
    """
    name = name if name is not None else os.path.basename(os.path.normpath(path))
    prefix = os.path.join(path, name)
    edges_path = f"{prefix}_A.txt"
    for required in (edges_path, f"{prefix}_graph_indicator.txt",
                     f"{prefix}_graph_labels.txt"):
        if not os.path.exists(required):
            raise FormatError(f"missing mandatory dataset file: {required}")

    indicator = _read_int_lines(f"{prefix}_graph_indicator.txt", "graph id")
    graph_labels = _read_int_lines(f"{prefix}_graph_labels.txt", "class label")
    num_nodes = len(indicator)
    num_graphs = len(graph_labels)
    if indicator and not (1 <= min(indicator) and max(indicator) <= num_graphs):
        raise FormatError(
            f"graph indicator references graph ids outside [1, {num_graphs}]")

    node_labels = None
    node_labels_path = f"{prefix}_node_labels.txt"
    if os.path.exists(node_labels_path):
        node_labels = _read_int_lines(node_labels_path, "node label")
        if len(node_labels) != num_nodes:
            raise FormatError(
                f"{node_labels_path}: {len(node_labels)} labels for "
                f"{num_nodes} nodes")

    # local vertex ids per graph, by global id order
    local_id = [0] * num_nodes
    graph_size = [0] * num_graphs
    for node, gid in enumerate(indicator):
        local_id[node] = graph_size[gid - 1]
        graph_size[gid - 1] += 1

    edge_rows = []
    with open(edges_path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise FormatError(
                    f"{edges_path}:{lineno}: expected 'i, j', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise FormatError(
                    f"{edges_path}:{lineno}: non-integer node id in {line!r}"
                ) from exc
            if not (1 <= u <= num_nodes and 1 <= v <= num_nodes):
                raise FormatError(
                    f"{edges_path}:{lineno}: node id outside [1, {num_nodes}] "
                    f"(ids are 1-based)")
            if indicator[u - 1] != indicator[v - 1]:
                raise FormatError(
                    f"{edges_path}:{lineno}: edge joins graph "
                    f"{indicator[u - 1]} and graph {indicator[v - 1]}")
            edge_rows.append((lineno, u, v))

    edge_label_values = None
    edge_labels_path = f"{prefix}_edge_labels.txt"
    if os.path.exists(edge_labels_path):
        edge_label_values = _read_int_lines(edge_labels_path, "edge label")
        if len(edge_label_values) != len(edge_rows):
            raise FormatError(
                f"{edge_labels_path}: {len(edge_label_values)} labels for "
                f"{len(edge_rows)} edge rows")

    per_graph_edges = [[] for _ in range(num_graphs)]
    per_graph_elabs = [[] for _ in range(num_graphs)] if edge_label_values else None
    for row_idx, (lineno, u, v) in enumerate(edge_rows):
        gid = indicator[u - 1] - 1
        pair = (local_id[u - 1], local_id[v - 1])
        if pair[0] == pair[1]:
            raise FormatError(f"{edges_path}:{lineno}: self-loop on node {u}")
        per_graph_edges[gid].append(pair)
        if per_graph_elabs is not None:
            per_graph_elabs[gid].append(edge_label_values[row_idx])

    per_graph_nlabs = None
    if node_labels is not None:
        per_graph_nlabs = [[] for _ in range(num_graphs)]
        for node, gid in enumerate(indicator):
            per_graph_nlabs[gid - 1].append(node_labels[node])

    graphs = []
    for gid in range(num_graphs):
        graphs.append(build_graph(
            graph_size[gid], per_graph_edges[gid],
            node_labels=per_graph_nlabs[gid] if per_graph_nlabs else None,
            edge_labels=per_graph_elabs[gid] if per_graph_elabs else None,
            class_label=graph_labels[gid]))

    return Dataset(graphs=graphs, class_labels=list(graph_labels), name=name)


def _fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any 64-bit float."""
    return format(float(x), ".17g")


def write_gram_libsvm(K: np.ndarray, classes, path: str) -> None:
    """Precomputed-kernel rows: "<class> 0:<serial> 1:<K_i1> ... n:<K_in>"."""
    K = np.asarray(K)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise FormatError("gram matrix must be square")
    if len(classes) != K.shape[0]:
        raise FormatError("one class label per gram row is required")
    with open(path, "w") as f:
        for i in range(K.shape[0]):
            cells = [str(classes[i]), f"0:{i + 1}"]
            cells.extend(f"{j + 1}:{_fmt(K[i, j])}" for j in range(K.shape[1]))
            f.write(" ".join(cells) + "\n")


def write_gram_csv(K: np.ndarray, path: str) -> None:
    """Plain comma-separated rows, no header."""
    K = np.asarray(K)
    with open(path, "w") as f:
        for row in K:
            f.write(",".join(_fmt(x) for x in row) + "\n")


def write_features_sparse(features, classes, path: str) -> None:
    """Sparse feature lines: "<class> <index>:<value> ..." per graph.

    Global indices pack the per-iteration blocks contiguously: block j's
    offset is the total number of distinct labels observed in earlier
    blocks across the whole feature list, and a label's index within its
    block is its rank among that block's observed labels.  Indices are
    strictly ascending within each line.
    """
    if len(classes) != len(features):
        raise FormatError("one class label per feature vector is required")
    if features:
        spans = {fv.h for fv in features}
        if len(spans) != 1:
            raise FormatError("feature vectors span different iteration counts")
        blocks = features[0].h + 1
        label_maps = []
        offset = 0
        for j in range(blocks):
            observed = sorted({lab for fv in features for lab in fv.blocks[j]})
            label_maps.append({lab: offset + r for r, lab in enumerate(observed)})
            offset += len(observed)
    with open(path, "w") as f:
        for fv, cls in zip(features, classes):
            cells = [str(cls)]
            for j, block in enumerate(fv.blocks):
                for lab in sorted(block):
                    cells.append(f"{label_maps[j][lab]}:{_fmt(block[lab])}")
            f.write(" ".join(cells) + "\n")
