# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np

from ..exceptions import ShapeError, TapeMismatchError, UnsupportedSchemeError
from ..params import FusionParams, init_uniform


class Tape(object):
    """Intermediates cached by a forward pass for the matching backward pass."""
    __slots__ = ('spec', 'params', 'x1', 'x2', 'batched', 'cache')

    def __init__(self, spec, params, x1, x2, batched, cache):
        self.spec = spec
        self.params = params
        self.x1 = x1
        self.x2 = x2
        self.batched = batched
        self.cache = cache


class FusionBase(object):
    """Base class for fusion operators that provides input checking, tapes and
    parameter plumbing.

    Subclasses implement :py:meth:`param_layout`, ``_forward`` and
    ``_backward`` on batches: inputs of shape (B, I) and (B, J), outputs of
    shape (B, K). Public methods also accept single vectors.
    """
    schemes = ()
    input_names = ('x1', 'x2')

    def __init__(self, spec):
        if spec.scheme not in self.schemes:
            raise TypeError('{} cannot evaluate {} specs'.format(
                type(self).__name__, spec.scheme))
        self.spec = spec

    def param_layout(self):
        raise NotImplementedError

    def init_params(self, seed):
        return init_uniform(self.param_layout(), seed)

    def _check_params(self, params):
        if params.layout != tuple(self.param_layout()):
            raise ShapeError('parameters do not belong to {}'.format(self.spec.summary()))

    def _check_inputs(self, x1, x2):
        x1 = np.asarray(x1, dtype=np.float64)
        x2 = np.asarray(x2, dtype=np.float64)
        if x1.ndim != x2.ndim or x1.ndim not in (1, 2):
            raise ShapeError('inputs must both be vectors or both be batches')
        batched = x1.ndim == 2
        if not batched:
            x1, x2 = x1[None, :], x2[None, :]
        if x1.shape[0] != x2.shape[0]:
            raise ShapeError('batch sizes differ: {} and {}'.format(
                x1.shape[0], x2.shape[0]))
        I, J = self.spec.input_dims
        for x, dim, name in ((x1, I, self.input_names[0]), (x2, J, self.input_names[1])):
            if x.shape[1] != dim:
                raise ShapeError('projection {} expects dimension {}, got {}'.format(
                    name, dim, x.shape[1]))
        return x1, x2, batched

    def forward(self, params, x1, x2):
        """Evaluate the operator.

        Parameters:
            params: :py:class:`~blockfusion.params.FusionParams` for this spec.
            x1: Vector of dimension I, or batch (B, I).
            x2: Vector of dimension J, or batch (B, J).

        Returns:
            Tuple ``(y, tape)``; `y` has dimension K (or shape (B, K)).

        Raises:
            ~blockfusion.exceptions.ShapeError: Input dimensions don't match
                ``input_dims``.
        """
        self._check_params(params)
        x1, x2, batched = self._check_inputs(x1, x2)
        y, cache = self._forward(params, x1, x2)
        tape = Tape(self.spec, params, x1, x2, batched, cache)
        return (y if batched else y[0]), tape

    def backward(self, params, tape, dy):
        """Gradients of ``<dy, y>`` for the forward pass recorded in `tape`.

        Returns:
            Tuple ``(grads, dx1, dx2)`` where `grads` is a
            :py:class:`~blockfusion.params.FusionParams` with the layout of
            `params`, summed over the batch.

        Raises:
            ~blockfusion.exceptions.TapeMismatchError: The tape was recorded
                for another spec or another parameter object.
        """
        if not isinstance(tape, Tape) or tape.spec != self.spec or tape.params is not params:
            raise TapeMismatchError(
                'tape was not produced by forward() with these parameters')
        dy = np.asarray(dy, dtype=np.float64)
        if not tape.batched and dy.ndim == 1:
            dy = dy[None, :]
        if dy.shape != (tape.x1.shape[0], self.spec.output_dim):
            raise ShapeError('dy has shape {} for a forward pass with {} outputs'.format(
                dy.shape, self.spec.output_dim))

        grads, dx1, dx2 = self._backward(params, tape, dy)
        grads = FusionParams(params.layout, grads)
        if not tape.batched:
            dx1, dx2 = dx1[0], dx2[0]
        return grads, dx1, dx2

    def reconstruct(self, params):
        raise UnsupportedSchemeError(
            '{} is not a bilinear scheme; no full tensor exists'.format(self.spec.scheme),
            scheme=self.spec.scheme)


class BilinearMixin(object):
    """Mixin for pure bilinear schemes, y = T x1 x2.

    Subclasses implement ``_reconstruct`` returning the I×J×K tensor.
    """
    def reconstruct(self, params):
        """Return the full tensor T with ``forward(x1, x2) = T ×₁ x1 ×₂ x2``."""
        self._check_params(params)
        return self._reconstruct(params)
