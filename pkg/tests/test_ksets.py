import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from math import comb

from ksetwl import ParameterError, enumerate_ksets
from ksetwl.ksets import KSetIndex


def test_counts():
    assert KSetIndex(4, 2).size == 6
    assert KSetIndex(3, 3).size == 1
    assert KSetIndex(2, 3).size == 0


def test_k_below_two_rejected():
    with pytest.raises(ParameterError):
        KSetIndex(5, 1)


def test_enumerate_from_graph(e1i):
    assert enumerate_ksets(e1i, 2).size == 3


def test_all_sets_rows_are_their_own_ranks():
    for n, k in [(4, 2), (6, 3), (7, 2), (5, 5), (6, 4)]:
        index = KSetIndex(n, k)
        sets = index.all_sets()
        assert len(sets) == comb(n, k)
        ranks = index.rank_rows(sets)
        assert np.array_equal(ranks, np.arange(index.size))
        # rows are strictly ascending tuples
        assert np.all(np.diff(sets, axis=1) > 0)


@given(st.integers(2, 4), st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_rank_unrank_roundtrip(k, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(k, 14))
    index = KSetIndex(n, k)
    for r in rng.integers(0, index.size, size=min(20, index.size)):
        r = int(r)
        t = index.unrank(r)
        assert index.rank(t) == r
        assert list(t) == sorted(set(t))


def test_unrank_out_of_range():
    index = KSetIndex(4, 2)
    with pytest.raises(ParameterError):
        index.unrank(6)


def test_unrank_monotone_in_colex_order():
    index = KSetIndex(6, 3)
    previous = None
    for r in range(index.size):
        t = index.unrank(r)
        key = tuple(reversed(t))  # colex compares from the largest element
        if previous is not None:
            assert key > previous
        previous = key
