"""Feature vectors, inner products, gram matrices, and their normalizations.

A feature vector is a list of per-iteration sparse blocks mapping label id
to weight (integer counts for exact runs, probability masses for sampled
runs).  Kernel values are inner products over matching (block, label) pairs,
so all vectors entering one gram matrix must come from a single interner or
linear-algebra run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass
class FeatureVector:
    """Per-iteration sparse label histograms phi^0 .. phi^h."""

    blocks: list

    @property
    def h(self) -> int:
        return len(self.blocks) - 1

    def total_mass(self) -> float:
        return float(sum(sum(b.values()) for b in self.blocks))

    def copy(self) -> "FeatureVector":
        return FeatureVector([dict(b) for b in self.blocks])


def from_colorings(colorings) -> FeatureVector:
    return FeatureVector([c.histogram() for c in colorings])


def l1_normalize(v: FeatureVector, scope: str = "per-block") -> FeatureVector:
    """Divide by L1 mass, per block or over the whole concatenation.

    Per-block is the form the sampling estimators target (each iteration's
    histogram becomes a probability vector).  Blocks with zero mass are left
    unchanged, which keeps graphs with fewer than k vertices representable
    as all-zero vectors.
    """
    if scope not in ("per-block", "whole-vector"):
        raise ParameterError(f"unknown normalization scope: {scope!r}")
    if scope == "per-block":
        out = []
        for b in v.blocks:
            mass = sum(b.values())
            out.append({k: w / mass for k, w in b.items()} if mass > 0 else dict(b))
        return FeatureVector(out)
    mass = v.total_mass()
    if mass <= 0:
        return v.copy()
    return FeatureVector([{k: w / mass for k, w in b.items()} for b in v.blocks])


def dot(u: FeatureVector, v: FeatureVector) -> float:
    """Inner product over matching (block, label) pairs."""
    if u.h != v.h:
        raise ParameterError(
            f"feature vectors span different iteration counts: {u.h} vs {v.h}")
    total = 0.0
    for bu, bv in zip(u.blocks, v.blocks):
        if len(bv) < len(bu):
            bu, bv = bv, bu
        for label, w in bu.items():
            other = bv.get(label)
            if other is not None:
                total += w * other
    return total


def gram_matrix(features, pool=None) -> np.ndarray:
    """Symmetric matrix of all pairwise inner products.

    Each unordered pair is computed once and mirrored.  Row order follows
    the input order, which callers keep aligned with their Dataset.
    """
    n = len(features)
    K = np.zeros((n, n), dtype=np.float64)

    def fill_row(i):
        row = np.zeros(n - i, dtype=np.float64)
        for off, j in enumerate(range(i, n)):
            row[off] = dot(features[i], features[j])
        return row

    rows = pool.map_ordered(fill_row, range(n)) if pool is not None \
        else [fill_row(i) for i in range(n)]
    for i, row in enumerate(rows):
        K[i, i:] = row
        K[i:, i] = row
    return K


def cosine_normalize_gram(K: np.ndarray) -> np.ndarray:
    """Normalize to K_ij / sqrt(K_ii * K_jj).

    Rows and columns whose diagonal entry is zero (graphs that produced the
    all-zero feature vector) become entirely zero rather than dividing by
    zero.  The diagonal of nonzero rows is set to exactly 1, and values are
    clamped to [0, 1] against last-ulp rounding; for inner products of
    nonnegative features the true values always lie in that interval.
    """
    d = np.diag(K).copy()
    nz = d > 0
    scale = np.zeros_like(d)
    scale[nz] = 1.0 / np.sqrt(d[nz])
    out = K * np.outer(scale, scale)
    out[~nz, :] = 0.0
    out[:, ~nz] = 0.0
    np.clip(out, 0.0, 1.0, out=out)
    idx = np.flatnonzero(nz)
    out[idx, idx] = 1.0
    return out


def psd_check(K: np.ndarray, jitter: float = 0.0) -> bool:
    """Whether K + jitter*I admits a Cholesky factorization."""
    if jitter < 0:
        raise ParameterError("jitter must be nonnegative")
    shifted = np.asarray(K, dtype=np.float64) + jitter * np.eye(len(K))
    try:
        np.linalg.cholesky(shifted)
    except np.linalg.LinAlgError:
        return False
    return True
