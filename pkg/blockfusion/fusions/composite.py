# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np

from ..params import ParamSlot
from .base import FusionBase


def _prefix(index):
    return 'branch{}.'.format(index)


class CompositeFusion(FusionBase):
    """One fusion per feature type, concatenated, then ``y = W x`` (no bias).

    The operator's two inputs are the concatenations of the branches' first
    and second inputs, in branch order. Branch parameters are stored under
    ``branch<i>.<name>``.
    """
    schemes = ('composite',)

    def __init__(self, spec, factory):
        super(CompositeFusion, self).__init__(spec)
        self.branches = [factory(child) for child in spec.children]

    def param_layout(self):
        layout = []
        for i, branch in enumerate(self.branches):
            layout.extend(slot.renamed(_prefix(i)) for slot in branch.param_layout())
        width = sum(child.output_dim for child in self.spec.children)
        layout.append(ParamSlot('W', (self.spec.output_dim, width), width))
        return layout

    def _split(self, x, axis_dims):
        return np.split(x, np.cumsum(axis_dims)[:-1], axis=-1)

    def _forward(self, params, x1, x2):
        x1s = self._split(x1, [c.input_dims[0] for c in self.spec.children])
        x2s = self._split(x2, [c.input_dims[1] for c in self.spec.children])
        outputs, branch_params, tapes = [], [], []
        for i, branch in enumerate(self.branches):
            p = params.subset(_prefix(i))
            y, tape = branch.forward(p, x1s[i], x2s[i])
            outputs.append(y)
            branch_params.append(p)
            tapes.append(tape)
        x = np.concatenate(outputs, axis=-1)
        return x @ params['W'].T, dict(x=x, params=branch_params, tapes=tapes)

    def _backward(self, params, tape, dy):
        cache = tape.cache
        grads = dict(W=dy.T @ cache['x'])
        dx = self._split(dy @ params['W'], [c.output_dim for c in self.spec.children])
        dx1s, dx2s = [], []
        for i, branch in enumerate(self.branches):
            branch_grads, dx1, dx2 = branch.backward(
                cache['params'][i], cache['tapes'][i], dx[i])
            for name, value in branch_grads.items():
                grads[_prefix(i) + name] = value
            dx1s.append(dx1)
            dx2s.append(dx2)
        return grads, np.concatenate(dx1s, axis=-1), np.concatenate(dx2s, axis=-1)
