# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np
import pytest
from blockfusion import (
    FusionSpec, ShapeError, bilinear_direct, finite_diff_grad, get_fusion,
    init_params, matrix_rank_bruteforce, mode_n_product, reconstruct_full_tensor,
    unfold)
from blockfusion.verify import gradient_errors


def test_bilinear_direct():
    assert np.array_equal(bilinear_direct(np.ones((2, 2, 2)), [1, 1], [1, 1]), [4, 4])

    t = np.random.default_rng(0).standard_normal((3, 2, 4))
    assert np.array_equal(bilinear_direct(t, [1, 2, 3], [0, 0]), np.zeros(4))

    with pytest.raises(ShapeError):
        bilinear_direct(t, [1, 2], [0, 0])


def test_bilinear_direct_matches_mode_products():
    rng = np.random.default_rng(1)
    for _ in range(100):
        I, J, K = rng.integers(1, 9, size=3)
        t = rng.standard_normal((I, J, K))
        x1 = rng.standard_normal(I)
        x2 = rng.standard_normal(J)
        expected = mode_n_product(mode_n_product(t, x1, 1), x2, 1)
        assert np.abs(bilinear_direct(t, x1, x2) - expected).max() < 1e-12


def test_bilinear_direct_is_exact_on_integers():
    rng = np.random.default_rng(2)
    t = rng.integers(-3, 4, size=(3, 4, 2)).astype(np.float64)
    x1, y1 = rng.integers(-3, 4, size=(2, 3)).astype(np.float64)
    x2 = rng.integers(-3, 4, size=4).astype(np.float64)
    assert np.array_equal(bilinear_direct(t, 2 * x1 - y1, x2),
                          2 * bilinear_direct(t, x1, x2) - bilinear_direct(t, y1, x2))


def test_finite_diff_grad():
    grad = finite_diff_grad(lambda theta: theta @ theta, np.array([3.0]), step=1e-5)
    assert abs(grad[0] - 6.0) < 1e-6

    assert np.array_equal(finite_diff_grad(lambda theta: 1.5, np.ones(4)), np.zeros(4))

    with pytest.raises(ValueError):
        finite_diff_grad(lambda theta: 0.0, np.ones(2), step=0)


def test_finite_diff_matches_block_backward():
    rng = np.random.default_rng(3)
    spec = FusionSpec.block((5, 6), 4, (2, 3, 2), 2)
    fusion = get_fusion(spec)
    params = init_params(spec, 0)
    x1 = rng.standard_normal(5)
    x2 = rng.standard_normal(6)
    dy = rng.standard_normal(4)
    errors = gradient_errors(fusion, params, x1, x2, dy)
    assert list(errors) == ['params', 'x1', 'x2']
    assert max(errors.values()) < 1e-4


def test_matrix_rank_bruteforce():
    assert matrix_rank_bruteforce(np.eye(3)) == 3
    assert matrix_rank_bruteforce(np.zeros((2, 5))) == 0

    rng = np.random.default_rng(4)
    for _ in range(10):
        m, n = rng.integers(1, 9, size=2)
        outer = np.outer(rng.standard_normal(m), rng.standard_normal(n))
        assert matrix_rank_bruteforce(outer) == 1

    with pytest.raises(ShapeError):
        matrix_rank_bruteforce(np.ones((65, 2)))


def test_matrix_rank_transpose_invariant():
    rng = np.random.default_rng(5)
    for _ in range(10):
        r = rng.integers(1, 5)
        m = rng.standard_normal((7, r)) @ rng.standard_normal((r, 6))
        assert matrix_rank_bruteforce(m) == matrix_rank_bruteforce(m.T) == r


def test_matrix_rank_scaled():
    m = np.diag([1.0, 2.0, 0.0]) * 1e12
    assert matrix_rank_bruteforce(m) == 2
    assert matrix_rank_bruteforce(m * 1e-24) == 2


def test_tucker_mode_rank():
    spec = FusionSpec.tucker((6, 6), 6, (2, 2, 2))
    t = reconstruct_full_tensor(spec, init_params(spec, 0))
    for mode in (1, 2, 3):
        assert matrix_rank_bruteforce(unfold(t, mode)) == 2
