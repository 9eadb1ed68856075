"""Convert a directory of per-graph GML files into the TU benchmark text layout.

Expects <src>/NNN.gml files (one graph each, undirected, node ``label``
attributes, optional edge ``weight`` attributes used as categorical edge
labels) plus a ``Labels.txt`` with one class label per graph.  Writes the
five-file TU layout (<name>_A.txt etc.) with global 1-based node ids and
every undirected edge listed in both directions.

Used once to produce the bundled ``data/MUTAG`` fixture from a public GML
mirror of the standard MUTAG benchmark; kept so the fixture is reproducible.
"""

import argparse
import glob
import os
import re

NODE_RE = re.compile(r"node\s*\[\s*id\s+(\d+)\s+label\s+\"([^\"]*)\"", re.S)
EDGE_RE = re.compile(
    r"edge\s*\[\s*source\s+(\d+)\s+target\s+(\d+)(?:\s+weight\s+(\S+))?", re.S
)


def parse_gml(path):
    text = open(path).read()
    nodes = {int(i): lab for i, lab in NODE_RE.findall(text)}
    edges = {}
    for s, t, w in EDGE_RE.findall(text):
        s, t = int(s), int(t)
        key = (min(s, t), max(s, t))
        label = int(w) if w else None
        if key in edges and edges[key] != label:
            raise ValueError(f"{path}: conflicting labels for edge {key}")
        edges[key] = label
    return nodes, edges


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("src", help="directory with NNN.gml files and Labels.txt")
    ap.add_argument("dest", help="output directory (created)")
    ap.add_argument("--name", required=True, help="dataset name prefix")
    args = ap.parse_args()

    files = sorted(glob.glob(os.path.join(args.src, "*.gml")))
    classes = open(os.path.join(args.src, "Labels.txt")).read().split()
    if len(files) != len(classes):
        raise SystemExit(f"{len(files)} graphs but {len(classes)} class labels")

    os.makedirs(args.dest, exist_ok=True)
    prefix = os.path.join(args.dest, args.name)
    a_rows, indicator, node_labels, edge_labels = [], [], [], []
    offset = 0
    for gid, path in enumerate(files, start=1):
        nodes, edges = parse_gml(path)
        local = {old: offset + i + 1 for i, old in enumerate(sorted(nodes))}
        for old in sorted(nodes):
            indicator.append(gid)
            node_labels.append(nodes[old])
        for (u, v), lab in sorted(edges.items()):
            for a, b in ((u, v), (v, u)):
                a_rows.append(f"{local[a]}, {local[b]}")
                if lab is not None:
                    edge_labels.append(lab)
        offset += len(nodes)

    with open(f"{prefix}_A.txt", "w") as f:
        f.write("\n".join(a_rows) + "\n")
    with open(f"{prefix}_graph_indicator.txt", "w") as f:
        f.write("\n".join(map(str, indicator)) + "\n")
    with open(f"{prefix}_graph_labels.txt", "w") as f:
        f.write("\n".join(classes) + "\n")
    with open(f"{prefix}_node_labels.txt", "w") as f:
        f.write("\n".join(node_labels) + "\n")
    if len(edge_labels) == len(a_rows):
        with open(f"{prefix}_edge_labels.txt", "w") as f:
            f.write("\n".join(map(str, edge_labels)) + "\n")
    print(f"{args.name}: {len(files)} graphs, {offset} nodes, {len(a_rows)} edge rows")


if __name__ == "__main__":
    main()
