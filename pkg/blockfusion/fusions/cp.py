# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np

from ..params import ParamSlot
from .base import BilinearMixin, FusionBase


class CPFusion(BilinearMixin, FusionBase):
    """Rank-R CP fusion, ``y = C((x1 A) * (x2 B))``.

    Column r of A (I, R), B (J, R) and C (K, R) is the r-th rank-1 term.
    """
    schemes = ('cp',)
    input_names = ('A', 'B')

    def param_layout(self):
        I, J = self.spec.input_dims
        K = self.spec.output_dim
        R = self.spec.rank
        return [
            ParamSlot('A', (I, R), I),
            ParamSlot('B', (J, R), J),
            ParamSlot('C', (K, R), R),
        ]

    def _forward(self, params, x1, x2):
        xh1 = x1 @ params['A']
        xh2 = x2 @ params['B']
        z = xh1 * xh2
        return z @ params['C'].T, dict(xh1=xh1, xh2=xh2, z=z)

    def _backward(self, params, tape, dy):
        cache = tape.cache
        dz = dy @ params['C']
        dxh1 = dz * cache['xh2']
        dxh2 = dz * cache['xh1']
        grads = dict(A=tape.x1.T @ dxh1, B=tape.x2.T @ dxh2, C=dy.T @ cache['z'])
        return grads, dxh1 @ params['A'].T, dxh2 @ params['B'].T

    def _reconstruct(self, params):
        return np.einsum('ir,jr,kr->ijk', params['A'], params['B'], params['C'])
