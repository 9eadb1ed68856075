"""Dataset-level runs: exact, linear-algebra, and sampled feature pipelines.

Exact runs advance all graphs in lockstep, one intern window per iteration,
so label ids depend only on the dataset and parameters, never on thread
scheduling.  Linear-algebra runs stack all graphs into one block-diagonal
operator and regroup values jointly, which keeps labels comparable across
graphs without an interner.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .features import FeatureVector
from .interner import Coloring, LabelInterner, iso_key, refine_coloring_window
from .ksets import enumerate_ksets
from .kwl import DEFAULT_MAX_SETS, _check_budget, _neighbor_csr, iso_code
from .linalg import DEFAULT_TOLERANCE, la_refinement
from .sampling import estimate_features_adaptive, estimate_features_fixed
from .wl1 import initial_colorings


def exact_wl1_run(graphs, h: int, interner: LabelInterner,
                  pool=None) -> list[list[Coloring]]:
    """Vertex refinement for all graphs, iterations 0..h, shared interner."""
    if h < 0:
        raise ParameterError("iteration count h must be nonnegative")
    current = initial_colorings(graphs, interner)
    runs = [[c] for c in current]
    batches = [(g.indptr, g.indices, None) for g in graphs]
    for it in range(1, h + 1):
        stepped = refine_coloring_window(
            [(ip, ix, col) for (ip, ix, _), col in zip(batches, current)],
            interner, depth=it, pool=pool)
        for run, col in zip(runs, stepped):
            run.append(col)
        current = stepped
    return runs


def exact_kset_run(graphs, k: int, h: int, interner: LabelInterner,
                   local: bool = True, pool=None,
                   max_sets: int = DEFAULT_MAX_SETS) -> list[list[Coloring]]:
    """k-set refinement for all graphs in lockstep.

    Iteration 0 interns isomorphism-type codes of every k-set; later
    iterations refine over local or global swap neighborhoods.  Graphs with
    fewer than k vertices contribute empty colorings throughout.
    """
    if h < 0:
        raise ParameterError("iteration count h must be nonnegative")
    indexes = [enumerate_ksets(g, k) for g in graphs]
    for index in indexes:
        _check_budget(index, max_sets)

    def codes_of(pair):
        g, index = pair
        return [iso_code(g, tuple(int(v) for v in row))
                for row in index.all_sets()]

    work = list(zip(graphs, indexes))
    all_codes = (pool.map_ordered(codes_of, work) if pool is not None
                 else [codes_of(p) for p in work])
    all_keys = [[iso_key(c) for c in codes] for codes in all_codes]
    interner.intern_window((kb for keys in all_keys for kb in keys), depth=0)
    current = [
        Coloring(0, np.fromiter((interner.lookup(kb) for kb in keys),
                                dtype=np.int64, count=len(keys)))
        for keys in all_keys
    ]
    runs = [[c] for c in current]
    if h == 0:
        return runs

    def csr_of(pair):
        g, index = pair
        return _neighbor_csr(g, index, local=local)

    csrs = (pool.map_ordered(csr_of, work) if pool is not None
            else [csr_of(p) for p in work])
    for it in range(1, h + 1):
        stepped = refine_coloring_window(
            [(ip, ix, col) for (ip, ix), col in zip(csrs, current)],
            interner, depth=it, pool=pool)
        for run, col in zip(runs, stepped):
            run.append(col)
        current = stepped
    return runs


def _block_diag(csrs, item_counts):
    """Stack per-graph CSRs into one block-diagonal CSR."""
    total = int(sum(item_counts))
    indptr = np.zeros(total + 1, dtype=np.int64)
    chunks = []
    row = 0
    nnz = 0
    offset = 0
    for (ip, ix), count in zip(csrs, item_counts):
        if count:
            indptr[row + 1: row + count + 1] = ip[1:] + nnz
        chunks.append(ix + offset)
        nnz += int(ip[-1])
        row += count
        offset += count
    indices = (np.concatenate(chunks) if chunks
               else np.empty(0, dtype=np.int64))
    return indptr, indices


def _split(labels: np.ndarray, item_counts) -> list[np.ndarray]:
    out = []
    pos = 0
    for count in item_counts:
        out.append(labels[pos:pos + count])
        pos += count
    return out


def la_wl1_run(graphs, h: int, mode: str = "paired",
               tolerance: float = DEFAULT_TOLERANCE) -> list[list[np.ndarray]]:
    """Linear-algebra vertex refinement, regrouped jointly across graphs.

    Returns per graph a list of dense label vectors for iterations 0..h;
    labels are comparable across graphs of this run.
    """
    from .wl1 import initial_values
    counts = [g.num_vertices for g in graphs]
    indptr, indices = _block_diag([(g.indptr, g.indices) for g in graphs], counts)
    init = (np.concatenate([initial_values(g) for g in graphs])
            if sum(counts) else np.empty(0, dtype=np.int64))
    iters = la_refinement(indptr, indices, init, h, mode=mode,
                          tolerance=tolerance)
    per_graph = [_split(labels, counts) for labels in iters]
    return [[per_graph[it][gi] for it in range(h + 1)]
            for gi in range(len(graphs))]


def la_kset_run(graphs, k: int, h: int, local: bool = True,
                mode: str = "paired", tolerance: float = DEFAULT_TOLERANCE,
                pool=None,
                max_sets: int = DEFAULT_MAX_SETS) -> list[list[np.ndarray]]:
    """Linear-algebra k-set refinement over the (directed) k-set graphs.

    Iteration 0 labels are isomorphism-type codes compressed jointly across
    the dataset; refinement steps run on the block-diagonal stack of all
    k-set adjacency structures.
    """
    indexes = [enumerate_ksets(g, k) for g in graphs]
    for index in indexes:
        _check_budget(index, max_sets)
    work = list(zip(graphs, indexes))

    def codes_of(pair):
        g, index = pair
        return [iso_code(g, tuple(int(v) for v in row))
                for row in index.all_sets()]

    all_codes = (pool.map_ordered(codes_of, work) if pool is not None
                 else [codes_of(p) for p in work])
    order = {code: i for i, code in
             enumerate(sorted(set().union(*map(set, all_codes)) if all_codes else set()))}
    init = (np.concatenate([
        np.array([order[c] for c in codes], dtype=np.int64)
        if codes else np.empty(0, dtype=np.int64)
        for codes in all_codes]) if all_codes else np.empty(0, dtype=np.int64))

    def csr_of(pair):
        g, index = pair
        return _neighbor_csr(g, index, local=local)

    csrs = (pool.map_ordered(csr_of, work) if pool is not None
            else [csr_of(p) for p in work])
    counts = [index.size for index in indexes]
    indptr, indices = _block_diag(csrs, counts)
    iters = la_refinement(indptr, indices, init, h, mode=mode,
                          tolerance=tolerance)
    per_graph = [_split(labels, counts) for labels in iters]
    return [[per_graph[it][gi] for it in range(h + 1)]
            for gi in range(len(graphs))]


def _histogram(labels: np.ndarray) -> dict:
    values, counts = np.unique(labels, return_counts=True)
    return {int(v): float(c) for v, c in zip(values, counts)}


def features_from_colorings(runs) -> list[FeatureVector]:
    return [FeatureVector([c.histogram() for c in run]) for run in runs]


def features_from_label_arrays(runs) -> list[FeatureVector]:
    return [FeatureVector([_histogram(labels) for labels in run])
            for run in runs]


def sampled_dataset_run(graphs, k: int, h: int, seed: int,
                        interner: LabelInterner, mode: str = "adaptive",
                        sample_count: int | None = None,
                        epsilon: float = 0.1, delta: float = 0.1,
                        initial_size: int = 100, growth: float = 2.0,
                        strict_delta: bool = False,
                        max_total_samples: int = 10_000_000,
                        pool=None):
    """Sampled estimates for every graph of a dataset.

    Each graph gets its own generator derived from (seed, graph position),
    so results do not depend on evaluation order.  Returns the estimates;
    their mass vectors serve directly as (normalized) feature vectors, and
    the sampled kernel is their plain inner product.
    """
    estimates = []
    for gi, g in enumerate(graphs):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([int(seed), gi])))
        if mode == "sampled":
            if sample_count is None:
                raise ParameterError("fixed-size sampling needs a sample count")
            est = estimate_features_fixed(g, k, h, sample_count, rng, interner,
                                          pool=pool)
        elif mode == "adaptive":
            est = estimate_features_adaptive(
                g, k, h, epsilon, delta, rng, interner,
                initial_size=initial_size, growth=growth,
                strict_delta=strict_delta,
                max_total_samples=max_total_samples, pool=pool)
        else:
            raise ParameterError(f"unknown sampling mode: {mode!r}")
        estimates.append(est)
    return estimates
