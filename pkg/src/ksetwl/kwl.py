"""k-set machinery: isomorphism types, swap neighborhoods, the directed
k-set graph, and exact refinement over k-sets.

A k-set's neighbors arise by swapping one member for an outside vertex.  The
global variant admits every outside vertex; the local variant only vertices
adjacent to at least one member of the original set, which is what ties the
refinement to the graph's sparsity.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import ParameterError, ResourceLimitError
from .graph import Graph
from .interner import Coloring, LabelInterner, iso_key, refine_coloring_window
from .ksets import KSetIndex, enumerate_ksets

# Exact modes refuse graphs with more k-sets than this unless overridden;
# the sampling estimators have no such limit.
DEFAULT_MAX_SETS = 50_000_000

_BIAS = 1 << 63


def iso_code(g: Graph, t) -> bytes:
    """Canonical code of the labeled subgraph induced by the k-set ``t``.

    Minimizes, over all k! orderings of the set, the tuple of raw node
    labels, upper-triangle adjacency bits, and edge labels of present edges.
    Two sets (in any graphs) get equal codes iff their induced subgraphs are
    isomorphic respecting node and edge labels.  Factorial in k, which is
    acceptable for the small k this kernel family targets.
    """
    k = len(t)
    labels = (tuple(int(g.node_labels[v]) for v in t)
              if g.node_labels is not None else (0,) * k)
    adj = {}
    for a in range(k):
        for b in range(a + 1, k):
            if g.has_edge(t[a], t[b]):
                lab = g.edge_label(t[a], t[b])
                adj[(a, b)] = 0 if lab is None else int(lab)
                adj[(b, a)] = adj[(a, b)]

    best = None
    for perm in permutations(range(k)):
        code = list(labels[p] for p in perm)
        elabs = []
        for a in range(k):
            for b in range(a + 1, k):
                pair = (perm[a], perm[b])
                if pair in adj:
                    code.append(1)
                    elabs.append(adj[pair])
                else:
                    code.append(0)
        code.extend(elabs)
        tup = tuple(code)
        if best is None or tup < best:
            best = tup
    return b"".join(int(x + _BIAS).to_bytes(8, "big") for x in best)


def iso_type(g: Graph, t, interner: LabelInterner) -> int:
    """Intern the isomorphism type of one k-set (iteration-0 color)."""
    return interner.intern(iso_key(iso_code(g, t)), depth=0)


def replacement_candidates(g: Graph, t) -> np.ndarray:
    """Vertices outside ``t`` adjacent to at least one of its members."""
    rows = [g.indices[g.indptr[v]:g.indptr[v + 1]] for v in t]
    joined = np.unique(np.concatenate(rows)) if rows else np.empty(0, np.int64)
    return np.setdiff1d(joined, np.asarray(sorted(t), dtype=np.int64),
                        assume_unique=True)


def _swap(t: tuple, j: int, r: int) -> tuple:
    rest = t[:j] + t[j + 1:]
    pos = bisect_left(rest, r)
    return rest[:pos] + (r,) + rest[pos:]


def global_neighbors(g: Graph, t) -> list[tuple]:
    """All k-sets reachable by swapping one member for any outside vertex.

    Always exactly k * (n - k) sets: each of the k positions can take any
    of the n - k outside vertices, and distinct swaps give distinct sets.
    """
    t = tuple(t)
    k = len(t)
    members = set(t)
    out = []
    for r in range(g.num_vertices):
        if r in members:
            continue
        for j in range(k):
            out.append(_swap(t, j, r))
    return out


def local_neighbors(g: Graph, t) -> list[tuple]:
    """The subset of global neighbors whose incoming vertex touches ``t``.

    The adjacency requirement ranges over the whole original set, including
    the member being replaced, so the result is k swaps per candidate.
    """
    t = tuple(t)
    k = len(t)
    out = []
    for r in replacement_candidates(g, t):
        r = int(r)
        for j in range(k):
            out.append(_swap(t, j, r))
    return out


@dataclass
class KSetGraph:
    """Directed adjacency over k-set ranks: rank(s) -> ranks of its local
    neighbors.  Asymmetric in general (s may reach t but not vice versa)."""

    index: KSetIndex
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def num_sets(self) -> int:
        return self.index.size

    @property
    def num_edges(self) -> int:
        return int(self.indices.size)


def build_kset_graph(g: Graph, k: int, max_sets: int = DEFAULT_MAX_SETS) -> KSetGraph:
    """Materialize the directed k-set graph of ``g``.

    Raises ResourceLimitError when C(n, k) exceeds ``max_sets``; at that
    point the sampling estimators are the intended path.
    """
    index = enumerate_ksets(g, k)
    _check_budget(index, max_sets)
    return KSetGraph(index, *_neighbor_csr(g, index, local=True))


def global_kset_csr(g: Graph, index: KSetIndex,
                    max_sets: int = DEFAULT_MAX_SETS):
    """CSR of global swap neighborhoods over ranks (for the global kernel)."""
    _check_budget(index, max_sets)
    return _neighbor_csr(g, index, local=False)


def _check_budget(index: KSetIndex, max_sets: int) -> None:
    if index.size > max_sets:
        raise ResourceLimitError(
            f"C({index.n}, {index.k}) = {index.size} k-sets exceeds the cap of "
            f"{max_sets}; use a sampled mode for graphs this large")


def _neighbor_csr(g: Graph, index: KSetIndex, local: bool):
    k = index.k
    sets = index.all_sets()
    counts = np.empty(index.size, dtype=np.int64)
    blocks = []
    for rank in range(index.size):
        t = tuple(int(v) for v in sets[rank])
        nbrs = local_neighbors(g, t) if local else global_neighbors(g, t)
        counts[rank] = len(nbrs)
        if nbrs:
            blocks.append(index.rank_rows(np.asarray(nbrs, dtype=np.int64)))
    indptr = np.zeros(index.size + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = (np.concatenate(blocks) if blocks
               else np.empty(0, dtype=np.int64))
    return indptr, indices


def c_neighborhood(g: Graph, t, radius: int) -> set:
    """All k-sets within directed distance ``radius`` of ``t`` in the k-set
    graph, found by breadth-first expansion of local neighborhoods without
    materializing the k-set graph.  Always contains ``t``."""
    if radius < 0:
        raise ParameterError("radius must be nonnegative")
    t = tuple(int(v) for v in t)
    seen = {t}
    frontier = [t]
    for _ in range(radius):
        nxt = []
        for s in frontier:
            for u in local_neighbors(g, s):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        if not nxt:
            break
        frontier = nxt
    return seen


def kset_colorings(g: Graph, k: int, h: int, interner: LabelInterner,
                   local: bool = True,
                   max_sets: int = DEFAULT_MAX_SETS) -> list[Coloring]:
    """Exact k-set refinement of a single graph for h iterations.

    Iteration 0 interns isomorphism types; each later iteration refines by
    the sorted multiset of neighbor labels over the chosen neighborhood.
    Returns one Coloring per iteration, 0..h.  For dataset runs prefer the
    pipeline module, which interleaves windows across graphs so label ids
    are independent of scheduling.
    """
    if h < 0:
        raise ParameterError("iteration count h must be nonnegative")
    index = enumerate_ksets(g, k)
    _check_budget(index, max_sets)
    codes = [iso_code(g, tuple(int(v) for v in row)) for row in index.all_sets()]
    keys = [iso_key(c) for c in codes]
    interner.intern_window(keys, depth=0)
    labels = np.fromiter((interner.lookup(kb) for kb in keys),
                         dtype=np.int64, count=len(keys))
    colorings = [Coloring(0, labels)]
    if index.size == 0:
        for it in range(1, h + 1):
            colorings.append(Coloring(it, labels.copy()))
        return colorings
    if h == 0:
        return colorings

    indptr, indices = _neighbor_csr(g, index, local=local)
    for it in range(1, h + 1):
        new = refine_coloring_window([(indptr, indices, colorings[-1])],
                                     interner, depth=it)
        colorings.append(new[0])
    return colorings


def kset_histograms(g: Graph, k: int, h: int, interner: LabelInterner,
                    local: bool = True,
                    max_sets: int = DEFAULT_MAX_SETS) -> list[dict]:
    """Per-iteration label histograms of one graph's k-set refinement.

    Every block sums to C(n, k); all blocks are empty when n < k.  Pass one
    interner across all graphs whose histograms will be compared or dotted.
    """
    return [c.histogram()
            for c in kset_colorings(g, k, h, interner, local, max_sets)]
