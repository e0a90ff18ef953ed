# coding: utf-8
"""Baselines that are not bilinear: a projected sum and a concatenation MLP."""
from __future__ import absolute_import, division, print_function

import numpy as np

from ..params import ParamSlot
from .base import FusionBase


class LinearSumFusion(FusionBase):
    """``y = W (P1 x1 + P2 x2)`` with a shared d-dimensional space, no biases."""
    schemes = ('linear_sum',)
    input_names = ('P1', 'P2')

    def param_layout(self):
        I, J = self.spec.input_dims
        d = self.spec.hidden
        return [
            ParamSlot('P1', (d, I), I),
            ParamSlot('P2', (d, J), J),
            ParamSlot('W', (self.spec.output_dim, d), d),
        ]

    def _forward(self, params, x1, x2):
        h = x1 @ params['P1'].T + x2 @ params['P2'].T
        return h @ params['W'].T, dict(h=h)

    def _backward(self, params, tape, dy):
        dh = dy @ params['W']
        grads = dict(P1=dh.T @ tape.x1, P2=dh.T @ tape.x2, W=dy.T @ tape.cache['h'])
        return grads, dh @ params['P1'], dh @ params['P2']


def relu(x):
    return np.maximum(x, 0.0)


class ConcatMLPFusion(FusionBase):
    """Three affine layers with ReLU between them, applied to ``[x1, x2]``."""
    schemes = ('concat_mlp',)
    input_names = ('W1[:, :I]', 'W1[:, I:]')

    def param_layout(self):
        I, J = self.spec.input_dims
        h = self.spec.hidden
        K = self.spec.output_dim
        return [
            ParamSlot('W1', (h, I + J), I + J),
            ParamSlot('b1', (h,), I + J),
            ParamSlot('W2', (h, h), h),
            ParamSlot('b2', (h,), h),
            ParamSlot('W3', (K, h), h),
            ParamSlot('b3', (K,), h),
        ]

    def _forward(self, params, x1, x2):
        x = np.concatenate([x1, x2], axis=-1)
        a1 = x @ params['W1'].T + params['b1']
        h1 = relu(a1)
        a2 = h1 @ params['W2'].T + params['b2']
        h2 = relu(a2)
        y = h2 @ params['W3'].T + params['b3']
        return y, dict(x=x, a1=a1, h1=h1, a2=a2, h2=h2)

    def _backward(self, params, tape, dy):
        c = tape.cache
        dh2 = dy @ params['W3']
        da2 = dh2 * (c['a2'] > 0)
        dh1 = da2 @ params['W2']
        da1 = dh1 * (c['a1'] > 0)
        dx = da1 @ params['W1']
        grads = dict(
            W3=dy.T @ c['h2'], b3=dy.sum(axis=0),
            W2=da2.T @ c['h1'], b2=da2.sum(axis=0),
            W1=da1.T @ c['x'], b1=da1.sum(axis=0))
        I = self.spec.input_dims[0]
        return grads, dx[:, :I], dx[:, I:]
