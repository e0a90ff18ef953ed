# coding: utf-8
"""The fusion operator family.

Every operator is looked up from its :py:class:`~blockfusion.spec.FusionSpec`
with :py:func:`get_fusion`; the module-level functions are thin wrappers for
one-off calls.
"""
from __future__ import absolute_import, division, print_function

import numpy as np

from ..exceptions import ShapeError, SpecError
from ..spec import core_param_count, param_count
from .base import BilinearMixin, FusionBase, Tape
from .block import BlockFusion, TuckerFusion
from .composite import CompositeFusion
from .cp import CPFusion
from .linear import ConcatMLPFusion, LinearSumFusion
from .mcb import MCBFusion
from .mfb import MFBFusion, MFHFusion

FUSIONS = {
    'block': BlockFusion,
    'cp': CPFusion,
    'tucker': TuckerFusion,
    'mutan': TuckerFusion,
    'mfb': MFBFusion,
    'mfh': MFHFusion,
    'mcb': MCBFusion,
    'linear_sum': LinearSumFusion,
    'concat_mlp': ConcatMLPFusion,
}


def get_fusion(spec):
    """Return the operator object for `spec`."""
    if spec.scheme == 'composite':
        return CompositeFusion(spec, get_fusion)
    try:
        cls = FUSIONS[spec.scheme]
    except KeyError:
        raise SpecError('unknown scheme {!r}'.format(spec.scheme))
    return cls(spec)


def init_params(spec, seed):
    """Draw parameters uniform on ±1/sqrt(fan_in); deterministic in `seed`."""
    return get_fusion(spec).init_params(seed)


def fuse_forward(spec, params, x1, x2):
    """Evaluate `spec` on ``(x1, x2)``. Returns ``(y, tape)``."""
    return get_fusion(spec).forward(params, x1, x2)


def fuse_backward(spec, params, tape, dy):
    """Exact gradients of ``<dy, y>``. Returns ``(grads, dx1, dx2)``."""
    return get_fusion(spec).backward(params, tape, dy)


def reconstruct_full_tensor(spec, params):
    """Full I×J×K tensor of a bilinear scheme.

    Raises:
        ~blockfusion.exceptions.UnsupportedSchemeError: `spec` is not one of
            the pure bilinear schemes.
    """
    return get_fusion(spec).reconstruct(params)


def composite_fuse(spec, params, inputs):
    """Evaluate a composite on one ``(x_s, x_o)`` pair per branch.

    Raises:
        ~blockfusion.exceptions.SpecError: `spec` is not a composite.
        ~blockfusion.exceptions.ShapeError: Wrong number of pairs.
    """
    if spec.scheme != 'composite':
        raise SpecError('composite_fuse needs a composite spec, got {}'.format(spec.scheme))
    inputs = list(inputs)
    if len(inputs) != len(spec.children):
        raise ShapeError('composite has {} branches but {} input pairs were given'.format(
            len(spec.children), len(inputs)))
    x1 = np.concatenate([np.asarray(x_s, dtype=np.float64) for x_s, _ in inputs], axis=-1)
    x2 = np.concatenate([np.asarray(x_o, dtype=np.float64) for _, x_o in inputs], axis=-1)
    y, _ = get_fusion(spec).forward(params, x1, x2)
    return y


def param_breakdown(spec):
    """Per-tensor ``(name, shape, count)`` rows in flat-view order."""
    return [(slot.name, slot.shape, slot.size) for slot in get_fusion(spec).param_layout()]


__all__ = (
    'BilinearMixin',
    'BlockFusion',
    'CompositeFusion',
    'ConcatMLPFusion',
    'core_param_count',
    'CPFusion',
    'composite_fuse',
    'FUSIONS',
    'fuse_backward',
    'fuse_forward',
    'FusionBase',
    'get_fusion',
    'init_params',
    'LinearSumFusion',
    'MCBFusion',
    'MFBFusion',
    'MFHFusion',
    'param_breakdown',
    'param_count',
    'reconstruct_full_tensor',
    'Tape',
    'TuckerFusion',
)
