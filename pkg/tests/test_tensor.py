# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np
import pytest
from blockfusion import (
    ChunkIndexError, ShapeError, SketchPlan, assemble_block_superdiag, chunk,
    circular_convolve, count_sketch, matrix_rank_bruteforce, mode_n_product, outer3,
    refold, splitmix64, unfold)


@pytest.fixture
def ijk():
    """t[i, j, k] = i + j + k on a 2x2x2 grid."""
    i, j, k = np.indices((2, 2, 2))
    return (i + j + k).astype(np.float64)


def test_mode_n_product_vector(ijk):
    assert np.array_equal(mode_n_product(ijk, [1, 0], 1), [[0, 1], [1, 2]])

    y = mode_n_product(mode_n_product(ijk, [1, 1], 1), [1, 1], 1)
    assert np.array_equal(y, [4, 8])


@pytest.mark.parametrize('mode', [1, 2, 3])
def test_mode_n_product_identity(mode):
    t = np.random.default_rng(mode).standard_normal((2, 3, 4))
    eye = np.eye(t.shape[mode - 1])
    assert np.array_equal(mode_n_product(t, eye, mode), t)


def test_mode_n_product_matrix_shape():
    t = np.ones((2, 3, 4))
    assert mode_n_product(t, np.ones((3, 5)), 2).shape == (2, 5, 4)


def test_mode_n_product_mismatch():
    with pytest.raises(ShapeError) as excinfo:
        mode_n_product(np.ones((2, 3, 4)), np.ones(5), 2)
    message = str(excinfo.value)
    assert 'mode-2' in message
    assert '3' in message and '5' in message

    with pytest.raises(ShapeError):
        mode_n_product(np.ones((2, 3, 4)), np.ones(2), 4)


def test_contraction_order_independent():
    rng = np.random.default_rng(0)
    for _ in range(20):
        I, J, K = rng.integers(1, 9, size=3)
        t = rng.standard_normal((I, J, K))
        u = rng.standard_normal(I)
        v = rng.standard_normal(J)
        first = mode_n_product(mode_n_product(t, u, 1), v, 1)
        second = mode_n_product(mode_n_product(t, v, 2), u, 1)
        assert np.abs(first - second).max() < 1e-12


def test_unfold():
    i, j, k = np.indices((2, 2, 2))
    t = (4 * i + 2 * j + k).astype(np.float64)
    assert np.array_equal(unfold(t, 1), [[0, 1, 2, 3], [4, 5, 6, 7]])
    assert np.array_equal(unfold(np.full((1, 1, 1), 2.5), 3), [[2.5]])

    with pytest.raises(ShapeError):
        unfold(np.ones((2, 2)), 1)


@pytest.mark.parametrize('mode', [1, 2, 3])
def test_refold_inverts_unfold(mode):
    t = np.random.default_rng(mode).standard_normal((2, 3, 4))
    assert np.array_equal(refold(unfold(t, mode), mode, t.shape), t)


def test_outer3():
    t = outer3([1, 0], [0, 1], [1, 1])
    expected = np.zeros((2, 2, 2))
    expected[0, 1, 0] = expected[0, 1, 1] = 1
    assert np.array_equal(t, expected)

    assert np.array_equal(outer3([2], [3], [4]), [[[24]]])


def test_outer3_mode_ranks():
    rng = np.random.default_rng(1)
    t = outer3(rng.standard_normal(3), rng.standard_normal(4), rng.standard_normal(5))
    for mode in (1, 2, 3):
        assert matrix_rank_bruteforce(unfold(t, mode)) == 1


def test_assemble_block_superdiag():
    block = np.random.default_rng(2).standard_normal((2, 3, 4))
    assert np.array_equal(assemble_block_superdiag([block]), block)

    t = assemble_block_superdiag([[[[5.0]]], [[[7.0]]]])
    expected = np.zeros((2, 2, 2))
    expected[0, 0, 0] = 5
    expected[1, 1, 1] = 7
    assert np.array_equal(t, expected)


def test_assemble_block_superdiag_off_blocks_zero():
    rng = np.random.default_rng(3)
    blocks = [rng.standard_normal((2, 2, 2)) for _ in range(2)]
    t = assemble_block_superdiag(blocks)
    mask = np.zeros(t.shape, dtype=bool)
    mask[:2, :2, :2] = mask[2:, 2:, 2:] = True
    assert np.all(t[~mask] == 0.0)
    assert np.isclose((t ** 2).sum(), sum((b ** 2).sum() for b in blocks))


def test_assemble_block_superdiag_heterogeneous():
    with pytest.raises(ShapeError):
        assemble_block_superdiag([np.ones((1, 1, 1)), np.ones((2, 1, 1))])


def test_chunk():
    v = [1, 2, 3, 4]
    assert np.array_equal(chunk(v, 0, 2), [1, 2])
    assert np.array_equal(chunk(v, 1, 2), [3, 4])

    with pytest.raises(ChunkIndexError):
        chunk(v, 2, 2)
    with pytest.raises(ChunkIndexError):
        chunk(v, -1, 2)
    with pytest.raises(ShapeError):
        chunk(v, 0, 3)


def test_chunks_concatenate():
    v = np.random.default_rng(4).standard_normal(15)
    assert np.array_equal(np.concatenate([chunk(v, r, 3) for r in range(5)]), v)


def test_splitmix64_reproducible():
    assert np.array_equal(splitmix64(42, 8), splitmix64(42, 8))
    assert not np.array_equal(splitmix64(42, 8), splitmix64(43, 8))
    # First output of the reference generator seeded with 0.
    assert int(splitmix64(0, 1)[0]) == 0xE220A8397B1DCDAF


def test_sketch_plan_from_seed():
    plan = SketchPlan.from_seed(10, 4, seed=7)
    assert plan == SketchPlan.from_seed(10, 4, seed=7)
    assert plan.bucket.shape == plan.sign.shape == (10,)
    assert plan.bucket.min() >= 0 and plan.bucket.max() < 4
    assert set(plan.sign) <= {-1.0, 1.0}


def test_count_sketch():
    plan = SketchPlan(1, 4, bucket=[2], sign=[-1])
    assert np.array_equal(count_sketch([5], plan), [0, 0, -5, 0])

    plan = SketchPlan.from_seed(6, 3, seed=1)
    assert np.array_equal(count_sketch(np.zeros(6), plan), np.zeros(3))

    with pytest.raises(ShapeError):
        count_sketch(np.zeros(5), plan)


def test_count_sketch_linear():
    rng = np.random.default_rng(5)
    plan = SketchPlan.from_seed(8, 4, seed=3)
    # Integer-valued data keeps every sum exact.
    x = rng.integers(-5, 6, size=8).astype(np.float64)
    y = rng.integers(-5, 6, size=8).astype(np.float64)
    assert np.array_equal(count_sketch(2 * x - 3 * y, plan),
                          2 * count_sketch(x, plan) - 3 * count_sketch(y, plan))


def test_count_sketch_unbiased():
    rng = np.random.default_rng(6)
    x = rng.standard_normal(32)
    y = rng.standard_normal(32)
    estimates = np.array([
        count_sketch(x, p) @ count_sketch(y, p)
        for p in (SketchPlan.from_seed(32, 16, seed) for seed in range(10000))])
    stderr = estimates.std(ddof=1) / np.sqrt(len(estimates))
    assert abs(estimates.mean() - x @ y) < 3 * stderr


def test_circular_convolve():
    b = np.array([2.0, -1.0, 4.0])
    assert np.array_equal(circular_convolve([1, 0, 0], b), b)
    assert np.array_equal(circular_convolve([1, 1], [2, 3]), [5, 5])

    with pytest.raises(ShapeError):
        circular_convolve([1, 2], [1, 2, 3])


def test_sketch_of_outer_product():
    rng = np.random.default_rng(7)
    for seed in range(20):
        n1, n2, d = rng.integers(1, 9, size=3)
        plan1 = SketchPlan.from_seed(n1, d, seed)
        plan2 = SketchPlan.from_seed(n2, d, seed + 1000)
        x = rng.integers(-4, 5, size=n1).astype(np.float64)
        y = rng.integers(-4, 5, size=n2).astype(np.float64)
        convolved = circular_convolve(count_sketch(x, plan1), count_sketch(y, plan2))
        direct = count_sketch(np.outer(x, y).ravel(), plan1.pair(plan2))
        assert np.array_equal(convolved, direct)
