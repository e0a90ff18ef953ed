# coding: utf-8
"""Contractions shared by the block-term and Tucker operators.

A core is either dense, an array (L, M, N), or slice-factored, a pair of
arrays U (N, rho, L) and V (N, rho, M).
"""
from __future__ import absolute_import, division, print_function

import numpy as np

from ..tensor import chunk, mode_n_product, slice_core


def core_layout_shapes(block_dims, slice_rank):
    L, M, N = block_dims
    if slice_rank is None:
        return {'D': ((L, M, N), L * M)}
    return {'U': ((N, slice_rank, L), L), 'V': ((N, slice_rank, M), M)}


def contract(core, a, b):
    """``z[:, n] = core ×₁ a ×₂ b`` for batches a (B, L) and b (B, M)."""
    if isinstance(core, tuple):
        u, v = core
        pa = np.einsum('nql,bl->bnq', u, a)
        pb = np.einsum('nqm,bm->bnq', v, b)
        return (pa * pb).sum(axis=-1)
    return np.einsum('lmn,bl,bm->bn', core, a, b)


def contract_backward(core, a, b, dz):
    """Gradients of ``<dz, contract(core, a, b)>``.

    Returns:
        ``(dcore, da, db)``; `dcore` is a ``(dU, dV)`` pair for factored cores.
    """
    if isinstance(core, tuple):
        u, v = core
        pa = np.einsum('nql,bl->bnq', u, a)
        pb = np.einsum('nqm,bm->bnq', v, b)
        dpa = dz[:, :, None] * pb
        dpb = dz[:, :, None] * pa
        du = np.einsum('bnq,bl->nql', dpa, a)
        dv = np.einsum('bnq,bm->nqm', dpb, b)
        da = np.einsum('bnq,nql->bl', dpa, u)
        db = np.einsum('bnq,nqm->bm', dpb, v)
        return (du, dv), da, db
    dcore = np.einsum('bl,bm,bn->lmn', a, b, dz)
    da = np.einsum('lmn,bm,bn->bl', core, b, dz)
    db = np.einsum('lmn,bl,bn->bm', core, a, dz)
    return dcore, da, db


def dense(core):
    if isinstance(core, tuple):
        return slice_core(*core)
    return core


def expand_term(core, a, b, c):
    """``core ×₁ a ×₂ b ×₃ c`` with factor matrices a (I, L), b (J, M), c (K, N)."""
    t = mode_n_product(dense(core), a.T, 1)
    t = mode_n_product(t, b.T, 2)
    return mode_n_product(t, c.T, 3)


def forward_blocks(cores, a, b, c, x1, x2, block_dims):
    """Chunked block-term evaluation.

    Projects ``x̂1 = x1 a`` and ``x̂2 = x2 b``, merges chunk r of each with
    core r, concatenates the R outputs into z and returns ``(z cᵀ, cache)``.
    """
    L, M, _ = block_dims
    xh1 = x1 @ a
    xh2 = x2 @ b
    z = np.concatenate(
        [contract(core, chunk(xh1, r, L), chunk(xh2, r, M))
         for r, core in enumerate(cores)], axis=-1)
    return z @ c.T, dict(xh1=xh1, xh2=xh2, z=z)


def backward_blocks(cores, a, b, c, x1, x2, block_dims, cache, dy):
    """Reverse pass of :py:func:`forward_blocks`.

    Returns:
        ``(da, db, dc, dcores, dx1, dx2)`` with `dcores` in block order.
    """
    L, M, N = block_dims
    xh1, xh2 = cache['xh1'], cache['xh2']
    dz = dy @ c
    dc = dy.T @ cache['z']
    dxh1 = np.zeros_like(xh1)
    dxh2 = np.zeros_like(xh2)
    dcores = []
    for r, core in enumerate(cores):
        dcore, da_r, db_r = contract_backward(
            core, chunk(xh1, r, L), chunk(xh2, r, M), chunk(dz, r, N))
        dxh1[:, r * L:(r + 1) * L] = da_r
        dxh2[:, r * M:(r + 1) * M] = db_r
        dcores.append(dcore)
    return x1.T @ dxh1, x2.T @ dxh2, dc, dcores, dxh1 @ a.T, dxh2 @ b.T


def reconstruct_blocks(cores, a, b, c, block_dims):
    """``T = sum_r D_r ×₁ A_r ×₂ B_r ×₃ C_r``."""
    L, M, N = block_dims
    t = np.zeros((a.shape[0], b.shape[0], c.shape[0]))
    for r, core in enumerate(cores):
        t = t + expand_term(core, a[:, r * L:(r + 1) * L], b[:, r * M:(r + 1) * M],
                            c[:, r * N:(r + 1) * N])
    return t
