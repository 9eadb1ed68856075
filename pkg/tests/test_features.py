import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ksetwl import (FeatureVector, LabelInterner, ParameterError,
                    cosine_normalize_gram, dot, gram_matrix, l1_normalize,
                    psd_check)
from ksetwl.pipeline import exact_kset_run, features_from_colorings

block = st.dictionaries(st.integers(0, 40), st.floats(0.0, 50.0), max_size=6)


def test_l1_single_label():
    v = l1_normalize(FeatureVector([{7: 3.0}]))
    assert v.blocks == [{7: 1.0}]


def test_l1_per_block():
    v = l1_normalize(FeatureVector([{1: 2.0, 2: 1.0}]))
    assert v.blocks[0][1] == pytest.approx(2 / 3)
    assert v.blocks[0][2] == pytest.approx(1 / 3)


def test_l1_zero_mass_block_unchanged():
    v = l1_normalize(FeatureVector([{}, {3: 4.0}]))
    assert v.blocks[0] == {}
    assert v.blocks[1] == {3: 1.0}


def test_l1_whole_vector():
    v = l1_normalize(FeatureVector([{1: 3.0}, {2: 1.0}]), "whole-vector")
    assert v.blocks[0][1] == pytest.approx(0.75)
    assert v.blocks[1][2] == pytest.approx(0.25)


def test_l1_scope_validated():
    with pytest.raises(ParameterError):
        l1_normalize(FeatureVector([{}]), "l2")


@given(st.lists(block, min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_l1_idempotent(blocks):
    v = FeatureVector(blocks)
    once = l1_normalize(v)
    twice = l1_normalize(once)
    for a, b in zip(once.blocks, twice.blocks):
        assert set(a) == set(b)
        for lab in a:
            assert a[lab] == pytest.approx(b[lab], abs=1e-12)


def test_dot_is_squared_norm():
    v = FeatureVector([{1: 2.0, 2: 1.0}, {5: 3.0}])
    assert dot(v, v) == pytest.approx(4 + 1 + 9)


def test_dot_disjoint_supports():
    assert dot(FeatureVector([{1: 2.0}]), FeatureVector([{2: 5.0}])) == 0.0


def test_dot_two_triangles():
    # exact 2-set features of two identical triangles at h=1: each block is
    # a single shared label of count 3, contributing 9 per block
    from ksetwl import build_graph
    tri = lambda: build_graph(3, [(0, 1), (1, 2), (0, 2)])
    feats = features_from_colorings(
        exact_kset_run([tri(), tri()], 2, 1, LabelInterner()))
    assert dot(feats[0], feats[1]) == pytest.approx(18.0)


def test_dot_span_mismatch():
    with pytest.raises(ParameterError):
        dot(FeatureVector([{}]), FeatureVector([{}, {}]))


def test_gram_single_vector():
    K = gram_matrix([FeatureVector([{1: 2.0}])])
    assert K.shape == (1, 1) and K[0, 0] == 4.0


def test_gram_duplicate_vectors_constant():
    v = FeatureVector([{1: 1.0, 2: 2.0}])
    K = gram_matrix([v, v.copy()])
    assert np.all(K == K[0, 0])


def test_gram_symmetric_and_psd_on_random_features():
    rng = np.random.default_rng(3)
    feats = [
        FeatureVector([{int(l): float(rng.integers(1, 5))
                        for l in rng.choice(30, size=5, replace=False)}])
        for _ in range(12)
    ]
    K = gram_matrix(feats)
    assert np.array_equal(K, K.T)
    assert psd_check(K, jitter=1e-8)


def test_cosine_unit_diagonal_and_range():
    rng = np.random.default_rng(4)
    K = None
    feats = [FeatureVector([{int(l): float(rng.integers(1, 9))
                             for l in rng.choice(10, size=4, replace=False)}])
             for _ in range(8)]
    K = cosine_normalize_gram(gram_matrix(feats))
    assert np.allclose(np.diag(K), 1.0)
    assert K.min() >= 0.0 and K.max() <= 1.0


def test_cosine_rank_one_all_ones():
    v = FeatureVector([{1: 2.0}])
    K = cosine_normalize_gram(gram_matrix([v, l1_normalize(v)]))
    assert np.allclose(K, 1.0)


def test_cosine_zero_row_convention():
    K = np.array([[4.0, 0.0], [0.0, 0.0]])
    normalized = cosine_normalize_gram(K)
    assert normalized[0, 0] == 1.0
    assert np.all(normalized[1, :] == 0.0) and np.all(normalized[:, 1] == 0.0)


def test_psd_examples():
    assert psd_check(np.eye(3))
    assert not psd_check(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ParameterError):
        psd_check(np.eye(2), jitter=-1)
