"""Dense indexing of all k-element vertex subsets of a graph.

Sets are ascending k-tuples of distinct vertex ids, ranked in colexicographic
order by the combinatorial number system: rank(t) = sum_i C(t_i, i+1).  That
gives every subset a stable dense id in [0, C(n, k)) without materializing
anything per set.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .errors import ParameterError


class KSetIndex:
    """Rank/unrank between ascending k-tuples and [0, C(n, k))."""

    def __init__(self, n: int, k: int):
        if k < 2:
            raise ParameterError(f"k must be at least 2, got {k}")
        self.n = int(n)
        self.k = int(k)
        self.size = comb(self.n, self.k) if self.n >= self.k else 0
        # chooses[v, j] = C(v, j) for 0 <= v <= n, 0 <= j <= k
        v = np.arange(self.n + 1)
        self._chooses = np.zeros((self.n + 1, self.k + 1), dtype=np.int64)
        self._chooses[:, 0] = 1
        for j in range(1, self.k + 1):
            col = np.array([comb(int(x), j) for x in v], dtype=np.int64)
            self._chooses[:, j] = col

    def rank(self, t) -> int:
        r = 0
        for i, v in enumerate(t):
            r += int(self._chooses[v, i + 1])
        return r

    def rank_rows(self, sets: np.ndarray) -> np.ndarray:
        """Vectorized rank of an (m, k) matrix of ascending rows."""
        r = np.zeros(len(sets), dtype=np.int64)
        for i in range(self.k):
            r += self._chooses[sets[:, i], i + 1]
        return r

    def unrank(self, r: int) -> tuple:
        if not 0 <= r < self.size:
            raise ParameterError(f"rank {r} out of range [0, {self.size})")
        out = [0] * self.k
        for i in range(self.k, 0, -1):
            # largest v with C(v, i) <= r
            v = int(np.searchsorted(self._chooses[:, i], r, side="right")) - 1
            out[i - 1] = v
            r -= int(self._chooses[v, i])
        return tuple(out)

    def all_sets(self) -> np.ndarray:
        """All k-sets as an (size, k) matrix, row r holding the set of rank r."""
        if self.size == 0:
            return np.empty((0, self.k), dtype=np.int64)
        out = np.empty((self.size, self.k), dtype=np.int64)
        idx = list(range(self.k))
        for r in range(self.size):
            out[r] = idx
            i = 0
            while i < self.k:
                nxt = idx[i + 1] if i + 1 < self.k else self.n
                if idx[i] + 1 < nxt:
                    break
                i += 1
            if i == self.k:
                break
            idx[i] += 1
            for j in range(i):
                idx[j] = j
        return out


def enumerate_ksets(g, k: int) -> KSetIndex:
    """Index over all C(n, k) vertex subsets of ``g``; empty when n < k."""
    return KSetIndex(g.num_vertices, k)
