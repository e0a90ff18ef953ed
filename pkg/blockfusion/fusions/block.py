# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np

from ..params import ParamSlot
from .base import BilinearMixin, FusionBase
from .cores import (
    backward_blocks, core_layout_shapes, forward_blocks, reconstruct_blocks)


class BlockTermMixin(object):
    """Shared plumbing for operators built from R rank-(L, M, N) terms.

    Subclasses define :py:attr:`num_blocks` and how cores are stored.
    """
    input_names = ('A', 'B')

    @property
    def num_blocks(self):
        raise NotImplementedError

    def _cores(self, params):
        raise NotImplementedError

    def _core_grads(self, dcores):
        raise NotImplementedError

    def _forward(self, params, x1, x2):
        return forward_blocks(self._cores(params), params['A'], params['B'],
                              params['C'], x1, x2, self.spec.block_dims)

    def _backward(self, params, tape, dy):
        da, db, dc, dcores, dx1, dx2 = backward_blocks(
            self._cores(params), params['A'], params['B'], params['C'],
            tape.x1, tape.x2, self.spec.block_dims, tape.cache, dy)
        grads = dict(A=da, B=db, C=dc)
        grads.update(self._core_grads(dcores))
        return grads, dx1, dx2

    def _reconstruct(self, params):
        return reconstruct_blocks(self._cores(params), params['A'], params['B'],
                                  params['C'], self.spec.block_dims)

    def param_layout(self):
        I, J = self.spec.input_dims
        K = self.spec.output_dim
        L, M, N = self.spec.block_dims
        R = self.num_blocks
        layout = [
            ParamSlot('A', (I, L * R), I),
            ParamSlot('B', (J, M * R), J),
            ParamSlot('C', (K, N * R), N * R),
        ]
        for name, (shape, fan_in) in core_layout_shapes(
                self.spec.block_dims, self.spec.slice_rank).items():
            layout.append(self._core_slot(name, shape, fan_in))
        return layout


class BlockFusion(BlockTermMixin, BilinearMixin, FusionBase):
    """Block-term fusion.

    Parameters are A (I, L·R), B (J, M·R), C (K, N·R) and either dense cores
    D (R, L, M, N) or, with a slice rank ρ, factors U (R, N, ρ, L) and
    V (R, N, ρ, M) with ``D_r[:, :, n] = sum_q U[r, n, q] ∘ V[r, n, q]``.
    Factored cores are never materialized during evaluation.
    """
    schemes = ('block',)

    @property
    def num_blocks(self):
        return self.spec.rank

    def _core_slot(self, name, shape, fan_in):
        return ParamSlot(name, (self.spec.rank,) + shape, fan_in)

    def _cores(self, params):
        R = self.spec.rank
        if 'D' in params:
            return [params['D'][r] for r in range(R)]
        return [(params['U'][r], params['V'][r]) for r in range(R)]

    def _core_grads(self, dcores):
        if isinstance(dcores[0], tuple):
            return dict(U=np.stack([d[0] for d in dcores]),
                        V=np.stack([d[1] for d in dcores]))
        return dict(D=np.stack(dcores))


class TuckerFusion(BlockTermMixin, BilinearMixin, FusionBase):
    """Tucker fusion, a single (L, M, N) core; with a slice rank it is MUTAN.

    Parameters are A (I, L), B (J, M), C (K, N) and D (L, M, N), or U (N, ρ, L)
    and V (N, ρ, M) when the slices are rank-constrained.
    """
    schemes = ('tucker', 'mutan')
    num_blocks = 1

    def _core_slot(self, name, shape, fan_in):
        return ParamSlot(name, shape, fan_in)

    def _cores(self, params):
        if 'D' in params:
            return [params['D']]
        return [(params['U'], params['V'])]

    def _core_grads(self, dcores):
        (dcore,) = dcores
        if isinstance(dcore, tuple):
            return dict(U=dcore[0], V=dcore[1])
        return dict(D=dcore)
