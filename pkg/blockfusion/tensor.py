# coding: utf-8
"""Dense multi-linear algebra on order 1-3 float64 arrays.

A dense tensor is a C-contiguous :py:class:`numpy.ndarray` of ``float64``.
Modes are numbered from 1 against the array that is passed in, so the
bilinear form ``T x1 x2`` is written as
``mode_n_product(mode_n_product(t, x1, 1), x2, 1)``.
"""
from __future__ import absolute_import, division, print_function

import numpy as np
from represent import ReprHelperMixin

from .exceptions import ChunkIndexError, ShapeError

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def as_tensor(value, name='tensor'):
    """Return `value` as a C-contiguous float64 array of order 1, 2 or 3.

    Raises:
        ~blockfusion.exceptions.ShapeError: Order outside 1-3 or an empty
            dimension.
    """
    t = np.ascontiguousarray(value, dtype=np.float64)
    if t.ndim not in (1, 2, 3):
        raise ShapeError('{} must have order 1, 2 or 3, got order {}'.format(
            name, t.ndim))
    if 0 in t.shape:
        raise ShapeError('{} has an empty dimension: shape {}'.format(name, t.shape))
    return t


def _axis(mode, order):
    if mode not in range(1, order + 1):
        raise ShapeError('mode must be in 1..{}, got {}'.format(order, mode))
    return mode - 1


def mode_n_product(t, m, mode):
    """Contract mode `mode` of `t` with a matrix or a vector.

    Parameters:
        t: Tensor of order 1-3.
        m: Matrix whose first dimension matches the mode, or a vector of that
            length.
        mode: 1-based mode of `t`.

    Returns:
        For a matrix, `t` with the mode's dimension replaced by ``m.shape[1]``.
        For a vector, `t` with the mode contracted away (order drops by one;
        contracting a vector returns a 0-d array).

    Raises:
        ~blockfusion.exceptions.ShapeError: Dimension mismatch.
    """
    t = as_tensor(t)
    m = as_tensor(m, name='operand')
    if m.ndim > 2:
        raise ShapeError('mode-{} operand must be a matrix or a vector'.format(mode))
    axis = _axis(mode, t.ndim)
    if m.shape[0] != t.shape[axis]:
        raise ShapeError(
            'mode-{} product: tensor mode has size {} but operand has size {}'.format(
                mode, t.shape[axis], m.shape[0]))

    out = np.tensordot(t, m, axes=([axis], [0]))
    if m.ndim == 2:
        out = np.moveaxis(out, -1, axis)
    return np.ascontiguousarray(out)


def unfold(t, mode):
    """Mode-n unfolding of an order-3 tensor.

    Rows are indexed by `mode`, columns by the two remaining modes in
    ascending order, last index fastest.
    """
    t = as_tensor(t)
    if t.ndim != 3:
        raise ShapeError('unfold expects an order-3 tensor, got order {}'.format(t.ndim))
    axis = _axis(mode, 3)
    return np.ascontiguousarray(np.moveaxis(t, axis, 0).reshape(t.shape[axis], -1))


def refold(m, mode, shape):
    """Inverse of :py:func:`unfold` for a tensor of the given shape."""
    m = as_tensor(m, name='matrix')
    shape = tuple(int(s) for s in shape)
    if len(shape) != 3:
        raise ShapeError('refold target shape must have three entries')
    axis = _axis(mode, 3)
    rest = [s for i, s in enumerate(shape) if i != axis]
    if m.shape != (shape[axis], rest[0] * rest[1]):
        raise ShapeError('matrix of shape {} is not a mode-{} unfolding of {}'.format(
            m.shape, mode, shape))
    return np.ascontiguousarray(
        np.moveaxis(m.reshape([shape[axis]] + rest), 0, axis))


def outer3(a, b, c):
    """Outer product ``a ∘ b ∘ c``."""
    a = as_tensor(a, name='a')
    b = as_tensor(b, name='b')
    c = as_tensor(c, name='c')
    for name, v in (('a', a), ('b', b), ('c', c)):
        if v.ndim != 1:
            raise ShapeError('{} must be a vector'.format(name))
    return a[:, None, None] * b[None, :, None] * c[None, None, :]


def assemble_block_superdiag(blocks):
    """Place R equally shaped blocks along the superdiagonal of a zero tensor.

    Returns:
        Tensor of shape (L*R, M*R, N*R) with block ``r`` at offset
        ``(r*L, r*M, r*N)``.
    """
    blocks = [as_tensor(b, name='block') for b in blocks]
    if not blocks:
        raise ShapeError('at least one block is required')
    shape = blocks[0].shape
    for r, block in enumerate(blocks):
        if block.ndim != 3 or block.shape != shape:
            raise ShapeError('block {} has shape {}, expected {}'.format(
                r, block.shape, shape))

    L, M, N = shape
    R = len(blocks)
    out = np.zeros((L * R, M * R, N * R))
    for r, block in enumerate(blocks):
        out[r * L:(r + 1) * L, r * M:(r + 1) * M, r * N:(r + 1) * N] = block
    return out


def chunk(v, r, size):
    """Return chunk `r` (0-based) of length `size` along the last axis of `v`."""
    v = np.asarray(v, dtype=np.float64)
    n = v.shape[-1]
    if size <= 0 or n % size:
        raise ShapeError('length {} is not divisible into chunks of {}'.format(n, size))
    if not 0 <= r < n // size:
        raise ChunkIndexError('chunk {} out of range for {} chunks'.format(r, n // size))
    return v[..., r * size:(r + 1) * size]


def slice_core(u, v):
    """Materialize a slice-factored block.

    Parameters:
        u: Array (N, rho, L).
        v: Array (N, rho, M).

    Returns:
        Block (L, M, N) whose mode-3 slice ``n`` is
        ``sum_q outer(u[n, q], v[n, q])``.
    """
    u = as_tensor(u, name='U')
    v = as_tensor(v, name='V')
    if u.ndim != 3 or v.ndim != 3 or u.shape[:2] != v.shape[:2]:
        raise ShapeError('slice factors have shapes {} and {}'.format(u.shape, v.shape))
    return np.einsum('nql,nqm->lmn', u, v)


def splitmix64(seed, count):
    """Return `count` consecutive outputs of a SplitMix64 stream as uint64."""
    state = np.uint64(int(seed) & _MASK64)
    steps = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over='ignore'):
        z = state + steps * _GOLDEN_GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    return z


class SketchPlan(ReprHelperMixin, object):
    """Hash buckets and signs of a count sketch from R^n to R^d.

    .. attribute:: input_dim

       Input dimension n.

    .. attribute:: sketch_dim

       Sketch dimension d.

    .. attribute:: bucket

       Integer array of length n with entries in ``[0, d)``.

    .. attribute:: sign

       Float array of length n with entries ``+1.0`` or ``-1.0``.

    .. attribute:: seed

       Seed the plan was drawn from, or None for a plan built by hand or by
       :py:meth:`pair`.
    """
    __slots__ = ('input_dim', 'sketch_dim', 'bucket', 'sign', 'seed')

    def __init__(self, input_dim, sketch_dim, bucket, sign, seed=None):
        bucket = np.asarray(bucket, dtype=np.intp)
        sign = np.asarray(sign, dtype=np.float64)
        if input_dim < 1 or sketch_dim < 1:
            raise ShapeError('sketch dimensions must be positive')
        if bucket.shape != (input_dim,) or sign.shape != (input_dim,):
            raise ShapeError('bucket and sign must have length {}'.format(input_dim))
        if bucket.min() < 0 or bucket.max() >= sketch_dim:
            raise ShapeError('buckets must lie in [0, {})'.format(sketch_dim))
        if not np.all(np.abs(sign) == 1.0):
            raise ShapeError('signs must be +1 or -1')
        bucket.setflags(write=False)
        sign.setflags(write=False)
        self.input_dim = int(input_dim)
        self.sketch_dim = int(sketch_dim)
        self.bucket = bucket
        self.sign = sign
        self.seed = seed

    @classmethod
    def from_seed(cls, input_dim, sketch_dim, seed):
        """Draw buckets uniformly from ``[0, d)`` and signs uniformly from ±1."""
        stream = splitmix64(seed, 2 * input_dim)
        bucket = (stream[:input_dim] % np.uint64(sketch_dim)).astype(np.intp)
        sign = np.where(stream[input_dim:] >> np.uint64(63), 1.0, -1.0)
        return cls(input_dim, sketch_dim, bucket, sign, seed=seed)

    def pair(self, other):
        """Induced plan on the row-major flattening of outer products.

        Sketching ``x ∘ y`` with the returned plan equals the circular
        convolution of ``self``'s sketch of x with ``other``'s sketch of y.
        """
        if other.sketch_dim != self.sketch_dim:
            raise ShapeError('cannot pair sketches of dimension {} and {}'.format(
                self.sketch_dim, other.sketch_dim))
        bucket = (self.bucket[:, None] + other.bucket[None, :]) % self.sketch_dim
        sign = self.sign[:, None] * other.sign[None, :]
        return SketchPlan(self.input_dim * other.input_dim, self.sketch_dim,
                          bucket.ravel(), sign.ravel())

    def _repr_helper_(self, r):
        r.keyword_from_attr('input_dim')
        r.keyword_from_attr('sketch_dim')
        r.keyword_from_attr('seed')

    def __eq__(self, other):
        if isinstance(other, SketchPlan):
            return (self.input_dim == other.input_dim and
                    self.sketch_dim == other.sketch_dim and
                    np.array_equal(self.bucket, other.bucket) and
                    np.array_equal(self.sign, other.sign) and
                    self.seed == other.seed)
        else:
            return NotImplemented

    __hash__ = None


def count_sketch(v, plan):
    """Count sketch of `v` (last axis) under `plan`."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape[-1] != plan.input_dim:
        raise ShapeError('count sketch expects length {}, got {}'.format(
            plan.input_dim, v.shape[-1]))
    out = np.zeros(v.shape[:-1] + (plan.sketch_dim,))
    np.add.at(out.T, plan.bucket, (v * plan.sign).T)
    return out


def _circulant_index(d):
    k = np.arange(d)
    return (k[:, None] - k[None, :]) % d


def circular_convolve(a, b):
    """``out[k] = sum_j a[j] b[(k - j) mod d]`` along the last axis, in O(d²)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape[-1] != b.shape[-1]:
        raise ShapeError('circular convolution of lengths {} and {}'.format(
            a.shape[-1], b.shape[-1]))
    idx = _circulant_index(a.shape[-1])
    return np.einsum('...j,...kj->...k', a, b[..., idx])


def circular_correlate(g, b):
    """Adjoint of convolving with `b`: ``out[j] = sum_k g[k] b[(k - j) mod d]``."""
    g = np.asarray(g, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if g.shape[-1] != b.shape[-1]:
        raise ShapeError('circular correlation of lengths {} and {}'.format(
            g.shape[-1], b.shape[-1]))
    idx = _circulant_index(g.shape[-1])
    return np.einsum('...k,...kj->...j', g, b[..., idx])
