"""Refinement via sparse matrix-vector products over prime logarithms.

Each distinct label is mapped to a prime; an item's next value is the log of
its own prime plus the summed logs over its (out-)neighbors.  Regrouping the
real values recovers the refined partition.  The same step applies to vertex
adjacency (1-WL) and to the directed k-set graph (local k-set refinement).

Because own and neighbor contributions commute inside the sum, regrouping on
the value alone can merge classes that multiset refinement keeps apart (a
labeled edge x--y gives both endpoints the value log x + log y).  The default
``paired`` mode therefore regroups on (own label, value), which restores
exact equivalence; ``paper_sum`` keeps the bare formula for fidelity
experiments.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

DEFAULT_TOLERANCE = 1e-9

_prime_cache = np.array([2, 3, 5, 7, 11, 13], dtype=np.int64)


def prime_table(n: int) -> np.ndarray:
    """The first n primes, ascending; the backing table only ever grows."""
    global _prime_cache
    if n < 1:
        raise ParameterError("need at least one prime")
    # n-th prime is below n (ln n + ln ln n) for n >= 6; double the sieve
    # bound until it yields enough.
    bound = max(32, int(n * (np.log(n) + np.log(max(np.log(n), 2))) * 1.2))
    while len(_prime_cache) < n:
        sieve = np.ones(bound + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, int(bound ** 0.5) + 1):
            if sieve[p]:
                sieve[p * p::p] = False
        found = np.flatnonzero(sieve).astype(np.int64)
        if len(found) >= n:
            _prime_cache = found
        bound *= 2
    return _prime_cache[:n]


def _row_sums(indptr: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Per-row sums of an already-gathered value array (CSR layout).

    Sums stay local to each row (reduceat over nonempty segments), keeping
    rounding error at row scale: a prefix-sum/difference formulation would
    accumulate error with the total entry count and could split value groups
    that the tolerance must keep together.  Deterministic for fixed input.
    """
    out = np.zeros(len(indptr) - 1, dtype=np.float64)
    if len(values) == 0:
        return out
    nonempty = np.flatnonzero(np.diff(indptr) > 0)
    if len(nonempty):
        out[nonempty] = np.add.reduceat(values, indptr[nonempty])
    return out


def la_step(indptr: np.ndarray, indices: np.ndarray, labels: np.ndarray,
            primes: np.ndarray, mode: str = "paired"):
    """One refinement step: value_i = log p(c_i) + sum of neighbor log p(c_j).

    ``labels`` must be dense ids indexing ``primes``.  Returns the raw value
    vector and the regrouped dense labels (ascending group order).
    """
    if len(labels) != len(indptr) - 1:
        raise ParameterError("label vector length does not match adjacency")
    logp = np.log(primes.astype(np.float64))[labels]
    values = logp + _row_sums(indptr, logp[indices])
    return values, discretize(values, own_labels=labels if mode == "paired" else None)


def discretize(values: np.ndarray, tolerance: float = DEFAULT_TOLERANCE,
               own_labels: np.ndarray | None = None) -> np.ndarray:
    """Group near-equal values into dense ids, ascending by sort order.

    Consecutive sorted values within ``tolerance`` of each other share a
    group.  With ``own_labels`` (paired mode) the sort key is (own label,
    value) and a group never crosses an own-label boundary.
    """
    if tolerance <= 0:
        raise ParameterError("tolerance must be positive")
    n = len(values)
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return out
    if own_labels is None:
        order = np.argsort(values, kind="stable")
        sv = values[order]
        breaks = np.diff(sv) > tolerance
    else:
        order = np.lexsort((values, own_labels))
        sv = values[order]
        so = own_labels[order]
        breaks = (np.diff(sv) > tolerance) | (np.diff(so) != 0)
    group_ids = np.concatenate([[0], np.cumsum(breaks)])
    out[order] = group_ids
    return out


def la_refinement(indptr: np.ndarray, indices: np.ndarray,
                  initial_labels: np.ndarray, h: int, mode: str = "paired",
                  tolerance: float = DEFAULT_TOLERANCE) -> list[np.ndarray]:
    """h refinement steps over one adjacency structure.

    Returns dense label vectors for iterations 0..h.  Iteration 0 is the
    compressed form of ``initial_labels``; later iterations alternate
    la_step and regrouping.  For the k-set variant, pass the directed k-set
    graph's CSR so each row sums over that set's local neighbors.
    """
    if mode not in ("paired", "paper_sum"):
        raise ParameterError(f"unknown refinement mode: {mode!r}")
    if h < 0:
        raise ParameterError("iteration count h must be nonnegative")
    _uniq, dense = np.unique(np.asarray(initial_labels, dtype=np.int64),
                             return_inverse=True)
    dense = dense.astype(np.int64)
    out = [dense]
    for _ in range(h):
        current = out[-1]
        if len(current) == 0:
            out.append(current.copy())
            continue
        primes = prime_table(int(current.max()) + 1)
        logp = np.log(primes.astype(np.float64))[current]
        values = logp + _row_sums(indptr, logp[indices])
        own = current if mode == "paired" else None
        out.append(discretize(values, tolerance, own_labels=own))
    return out
