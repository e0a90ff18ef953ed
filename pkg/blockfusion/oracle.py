# coding: utf-8
"""Brute-force reference paths for checking the structured operators.

Nothing here is fast; everything here is simple.
"""
from __future__ import absolute_import, division, print_function

import numpy as np

from .exceptions import ShapeError
from .tensor import as_tensor


def bilinear_direct(t, x1, x2):
    """``y_k = sum_i sum_j T[i, j, k] x1[i] x2[j]`` by nested loops."""
    t = as_tensor(t)
    if t.ndim != 3:
        raise ShapeError('bilinear_direct expects an order-3 tensor')
    I, J, K = t.shape
    x1 = as_tensor(x1, name='x1')
    x2 = as_tensor(x2, name='x2')
    if x1.shape != (I,) or x2.shape != (J,):
        raise ShapeError('tensor {}x{}x{} cannot take inputs of length {} and {}'.format(
            I, J, K, x1.shape[-1], x2.shape[-1]))

    entries = t.tolist()
    u = x1.tolist()
    v = x2.tolist()
    y = []
    for k in range(K):
        total = 0.0
        for i in range(I):
            for j in range(J):
                total += entries[i][j][k] * u[i] * v[j]
        y.append(total)
    return np.array(y)


def finite_diff_grad(f, theta, step=1e-5):
    """Central-difference gradient of the scalar function `f` at `theta`."""
    if step <= 0:
        raise ValueError('step must be positive')
    theta = np.array(theta, dtype=np.float64)
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        original = theta[i]
        theta[i] = original + step
        upper = f(theta.copy())
        theta[i] = original - step
        lower = f(theta.copy())
        theta[i] = original
        grad[i] = (upper - lower) / (2 * step)
    return grad


def matrix_rank_bruteforce(m, tol=None):
    """Rank by Gaussian elimination with partial pivoting.

    Parameters:
        m: Matrix with both dimensions at most 64.
        tol: Pivot threshold; defaults to ``1e-9 * max|m|``.
    """
    m = as_tensor(m, name='matrix')
    if m.ndim != 2:
        raise ShapeError('matrix_rank_bruteforce expects a matrix')
    if max(m.shape) > 64:
        raise ShapeError('matrix {}x{} is too large for brute force'.format(*m.shape))

    a = m.copy()
    scale = np.abs(a).max()
    if scale == 0.0:
        return 0
    if tol is None:
        tol = 1e-9 * scale

    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = rank + int(np.argmax(np.abs(a[rank:, col])))
        if abs(a[pivot, col]) <= tol:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for row in range(rank + 1, rows):
            a[row] -= (a[row, col] / a[rank, col]) * a[rank]
        rank += 1
    return rank
