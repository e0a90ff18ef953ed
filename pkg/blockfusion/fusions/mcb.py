# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np

from ..params import ParamSlot
from ..tensor import (
    SketchPlan, circular_convolve, circular_correlate, count_sketch, splitmix64)
from .base import BilinearMixin, FusionBase


def sketch_plans(spec):
    """Fixed count-sketch plans for both inputs, derived from ``spec.seed``."""
    I, J = spec.input_dims
    second_seed = int(splitmix64(spec.seed, 1)[0])
    return (SketchPlan.from_seed(I, spec.sketch_dim, spec.seed),
            SketchPlan.from_seed(J, spec.sketch_dim, second_seed))


class MCBFusion(BilinearMixin, FusionBase):
    """Compact bilinear pooling: ``y = W (sketch(x1) ⊛ sketch(x2))``.

    The hashes are fixed by ``FusionSpec.seed``; only W (K, d) is learned.
    """
    schemes = ('mcb',)
    input_names = ('sketch1', 'sketch2')

    def __init__(self, spec):
        super(MCBFusion, self).__init__(spec)
        self.plans = sketch_plans(spec)

    def param_layout(self):
        d = self.spec.sketch_dim
        return [ParamSlot('W', (self.spec.output_dim, d), d)]

    def _forward(self, params, x1, x2):
        plan1, plan2 = self.plans
        s1 = count_sketch(x1, plan1)
        s2 = count_sketch(x2, plan2)
        c = circular_convolve(s1, s2)
        return c @ params['W'].T, dict(s1=s1, s2=s2, c=c)

    def _backward(self, params, tape, dy):
        plan1, plan2 = self.plans
        cache = tape.cache
        dc = dy @ params['W']
        ds1 = circular_correlate(dc, cache['s2'])
        ds2 = circular_correlate(dc, cache['s1'])
        dx1 = ds1[:, plan1.bucket] * plan1.sign
        dx2 = ds2[:, plan2.bucket] * plan2.sign
        return dict(W=dy.T @ cache['c']), dx1, dx2

    def _reconstruct(self, params):
        plan1, plan2 = self.plans
        cell = (plan1.bucket[:, None] + plan2.bucket[None, :]) % self.spec.sketch_dim
        signs = plan1.sign[:, None] * plan2.sign[None, :]
        return signs[:, :, None] * params['W'].T[cell]
