"""Injective relabeling of structured refinement keys to compact integer ids.

One LabelInterner instance spans an entire dataset run so that feature
vectors of different graphs index the same label space.  Three key kinds
exist: initial node values (raw label or degree), canonical codes of k-set
isomorphism types, and refinement keys (previous label, ascending tuple of
neighbor labels).  Keys are encoded to bytes whose lexicographic order
matches the natural order of the underlying tuples, which makes the
two-phase deterministic interning protocol a plain sort.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

_TAG_INITIAL = b"I"
_TAG_ISO = b"T"
_TAG_REFINE = b"R"

_BIAS = 1 << 63  # maps signed 64-bit values onto order-preserving unsigned


def initial_key(value: int) -> bytes:
    """Key for a raw node label or degree used as the iteration-0 color."""
    return _TAG_INITIAL + struct.pack(">Q", int(value) + _BIAS)


def iso_key(code: bytes) -> bytes:
    """Key wrapping a canonical k-set isomorphism-type code."""
    return _TAG_ISO + code


def refine_key(prev: int, neighbor_labels) -> bytes:
    """Key for one refinement step: own previous label + sorted neighbor labels.

    Callers must pass ``neighbor_labels`` already ascending; this is checked
    only under ``__debug__`` since hot paths build the same layout in bulk.
    """
    arr = np.asarray(neighbor_labels, dtype=np.int64)
    assert arr.size == 0 or bool(np.all(np.diff(arr) >= 0)), \
        "neighbor labels must arrive sorted"
    return (_TAG_REFINE + struct.pack(">Q", int(prev))
            + arr.astype(">u8").tobytes())


class LabelInterner:
    """Global injective map from key bytes to dense label ids.

    Ids are issued in interning order; the same key always returns the same
    id within a run.  Each id remembers its refinement depth (0 for initial
    values and isomorphism types, previous depth + 1 for refinement keys),
    which later drives per-iteration feature-block offsets.
    """

    def __init__(self):
        self._ids: dict[bytes, int] = {}
        self._depths: list[int] = []

    def __len__(self) -> int:
        return len(self._ids)

    def intern(self, key: bytes, depth: int) -> int:
        label = self._ids.get(key)
        if label is None:
            label = len(self._depths)
            self._ids[key] = label
            self._depths.append(depth)
        return label

    def intern_window(self, keys, depth: int) -> None:
        """Two-phase window: intern all fresh keys in ascending byte order.

        Computing keys is embarrassingly parallel; calling this once per
        iteration with the collected keys makes id assignment independent of
        scheduling and worker count.
        """
        ids = self._ids
        fresh = {k for k in keys if k not in ids}
        for k in sorted(fresh):
            ids[k] = len(self._depths)
            self._depths.append(depth)

    def lookup(self, key: bytes) -> int:
        return self._ids[key]

    def depth_of(self, label: int) -> int:
        return self._depths[label]

    def ids_by_depth(self) -> dict[int, list[int]]:
        """Sorted label ids per refinement depth (feature-block registries)."""
        out: dict[int, list[int]] = {}
        for label, depth in enumerate(self._depths):
            out.setdefault(depth, []).append(label)
        return out


@dataclass
class Coloring:
    """Labels for all colored items of one graph after some iteration.

    Items are vertices for vertex refinement and k-set ranks for k-set
    refinement; ``labels`` has one entry per item.
    """

    iteration: int
    labels: np.ndarray

    def histogram(self) -> dict[int, float]:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): float(c) for v, c in zip(values, counts)}


def refinement_key_batch(indptr: np.ndarray, indices: np.ndarray,
                         labels: np.ndarray) -> list[bytes]:
    """Refinement keys for every row of a CSR adjacency structure.

    Row i's key combines its own label with the ascending multiset of labels
    over its (out-)neighbors, byte-compatible with :func:`refine_key`.  The
    gather and the within-row sort are vectorized; only the final slicing
    loop is per-row.
    """
    n = len(indptr) - 1
    if len(labels) != n:
        raise ParameterError("label vector length does not match adjacency")
    own = np.asarray(labels, dtype=">u8").tobytes()
    neigh = labels[indices]
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    order = np.lexsort((neigh, rows))
    buf = neigh[order].astype(">u8").tobytes()
    keys = []
    for i in range(n):
        s, e = 8 * int(indptr[i]), 8 * int(indptr[i + 1])
        keys.append(_TAG_REFINE + own[8 * i:8 * i + 8] + buf[s:e])
    return keys


def refine_coloring_window(batches, interner: LabelInterner, depth: int,
                           pool=None):
    """Advance several graphs one refinement step under one intern window.

    ``batches`` is a list of (indptr, indices, Coloring); returns the new
    Colorings in the same order.  All key computation happens before any id
    is issued, so the result is bit-identical for any execution order of the
    per-graph key passes (the pool, when given, parallelizes exactly that
    phase).
    """
    def keys_of(batch):
        indptr, indices, col = batch
        return refinement_key_batch(indptr, indices, col.labels)

    all_keys = (pool.map_ordered(keys_of, batches) if pool is not None
                else [keys_of(b) for b in batches])
    flat = [k for keys in all_keys for k in keys]
    interner.intern_window(flat, depth)
    out = []
    for (indptr, indices, col), keys in zip(batches, all_keys):
        new_labels = np.fromiter((interner.lookup(k) for k in keys),
                                 dtype=np.int64, count=len(keys))
        out.append(Coloring(col.iteration + 1, new_labels))
    return out
