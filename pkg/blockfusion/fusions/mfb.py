# coding: utf-8
"""Factorized bilinear pooling and its higher-order cascade.

Each factorized block projects both inputs to ``k·o`` dimensions, multiplies
them elementwise and sum-pools consecutive windows of ``k`` to get ``o``
outputs. The cascade multiplies block q's product by block q-1's product
before pooling.
"""
from __future__ import absolute_import, division, print_function

import numpy as np

from ..params import ParamSlot
from .base import BilinearMixin, FusionBase


def sum_pool(v, window):
    return v.reshape(v.shape[:-1] + (-1, window)).sum(axis=-1)


def sum_pool_backward(g, window):
    return np.repeat(g, window, axis=-1)


class MFBFusion(BilinearMixin, FusionBase):
    """Factorized bilinear pooling: ``y = W sumpool((x1 U) * (x2 V), k)``."""
    schemes = ('mfb',)
    input_names = ('U', 'V')

    def param_layout(self):
        I, J = self.spec.input_dims
        K = self.spec.output_dim
        k, o = self.spec.factor_rank, self.spec.pooled_dim
        return [
            ParamSlot('U', (I, k * o), I),
            ParamSlot('V', (J, k * o), J),
            ParamSlot('W', (K, o), o),
        ]

    def _forward(self, params, x1, x2):
        p1 = x1 @ params['U']
        p2 = x2 @ params['V']
        pooled = sum_pool(p1 * p2, self.spec.factor_rank)
        return pooled @ params['W'].T, dict(p1=p1, p2=p2, pooled=pooled)

    def _backward(self, params, tape, dy):
        cache = tape.cache
        dprod = sum_pool_backward(dy @ params['W'], self.spec.factor_rank)
        dp1 = dprod * cache['p2']
        dp2 = dprod * cache['p1']
        grads = dict(U=tape.x1.T @ dp1, V=tape.x2.T @ dp2, W=dy.T @ cache['pooled'])
        return grads, dp1 @ params['U'].T, dp2 @ params['V'].T

    def _reconstruct(self, params):
        w = np.repeat(params['W'], self.spec.factor_rank, axis=1)
        return np.einsum('ic,jc,kc->ijk', params['U'], params['V'], w)


class MFHFusion(FusionBase):
    """Cascade of Q factorized blocks; polynomial of degree 2Q in the inputs.

    Block q owns ``U{q}`` and ``V{q}``; W (K, Q·o) maps the concatenated
    pooled outputs to K.
    """
    schemes = ('mfh',)
    input_names = ('U', 'V')

    def param_layout(self):
        I, J = self.spec.input_dims
        K = self.spec.output_dim
        Q, k, o = self.spec.depth, self.spec.factor_rank, self.spec.pooled_dim
        layout = []
        for q in range(Q):
            layout.append(ParamSlot('U{}'.format(q), (I, k * o), I))
            layout.append(ParamSlot('V{}'.format(q), (J, k * o), J))
        layout.append(ParamSlot('W', (K, Q * o), Q * o))
        return layout

    def _forward(self, params, x1, x2):
        k = self.spec.factor_rank
        p1, p2, prev, pooled = [], [], [], []
        product = np.ones((x1.shape[0], k * self.spec.pooled_dim))
        for q in range(self.spec.depth):
            prev.append(product)
            p1.append(x1 @ params['U{}'.format(q)])
            p2.append(x2 @ params['V{}'.format(q)])
            product = p1[q] * p2[q] * product
            pooled.append(sum_pool(product, k))
        z = np.concatenate(pooled, axis=-1)
        return z @ params['W'].T, dict(p1=p1, p2=p2, prev=prev, z=z)

    def _backward(self, params, tape, dy):
        cache = tape.cache
        k, o = self.spec.factor_rank, self.spec.pooled_dim
        dz = dy @ params['W']
        grads = dict(W=dy.T @ cache['z'])
        dx1 = np.zeros_like(tape.x1)
        dx2 = np.zeros_like(tape.x2)
        carry = 0.0
        for q in reversed(range(self.spec.depth)):
            p1, p2, prev = cache['p1'][q], cache['p2'][q], cache['prev'][q]
            g = sum_pool_backward(dz[:, q * o:(q + 1) * o], k) + carry
            dp1 = g * p2 * prev
            dp2 = g * p1 * prev
            carry = g * p1 * p2
            u, v = params['U{}'.format(q)], params['V{}'.format(q)]
            grads['U{}'.format(q)] = tape.x1.T @ dp1
            grads['V{}'.format(q)] = tape.x2.T @ dp2
            dx1 += dp1 @ u.T
            dx2 += dp2 @ v.T
        return grads, dx1, dx2
