# coding: utf-8
from __future__ import absolute_import, division, print_function

from collections import OrderedDict

import numpy as np
from represent import ReprHelperMixin

from .exceptions import ShapeError


class ParamSlot(ReprHelperMixin, object):
    """Name, shape and initialisation fan-in of one parameter tensor."""
    __slots__ = ('name', 'shape', 'fan_in')

    def __init__(self, name, shape, fan_in):
        self.name = name
        self.shape = tuple(int(s) for s in shape)
        self.fan_in = int(fan_in)

    @property
    def size(self):
        return int(np.prod(self.shape, dtype=np.int64))

    def renamed(self, prefix):
        return ParamSlot(prefix + self.name, self.shape, self.fan_in)

    def _repr_helper_(self, r):
        r.positional_from_attr('name')
        r.positional_from_attr('shape')
        r.keyword_from_attr('fan_in')

    def __eq__(self, other):
        if isinstance(other, ParamSlot):
            params = ('name', 'shape', 'fan_in')
            return all(getattr(self, p) == getattr(other, p) for p in params)
        else:
            return NotImplemented

    def __hash__(self):
        return hash((self.name, self.shape, self.fan_in))


class FusionParams(ReprHelperMixin, object):
    """Learned parameter tensors of one operator instance.

    Tensors are read-only; derive updated parameters with :py:meth:`replace`
    or :py:meth:`from_flat`. The flat view orders scalars slot by slot in
    layout order, row-major within each tensor.

    .. attribute:: layout

       Tuple of :py:class:`ParamSlot`.
    """
    __slots__ = ('layout', '_tensors')

    def __init__(self, layout, tensors):
        self.layout = tuple(layout)
        names = [slot.name for slot in self.layout]
        if set(names) != set(tensors):
            raise ShapeError('parameters {} do not match layout {}'.format(
                sorted(tensors), names))

        self._tensors = OrderedDict()
        for slot in self.layout:
            value = np.array(tensors[slot.name], dtype=np.float64)
            if value.shape != slot.shape:
                raise ShapeError('parameter {} has shape {}, expected {}'.format(
                    slot.name, value.shape, slot.shape))
            value.setflags(write=False)
            self._tensors[slot.name] = value

    @classmethod
    def from_flat(cls, layout, flat):
        """Unflatten a vector produced by :py:meth:`flatten`."""
        flat = np.array(flat, dtype=np.float64)
        total = sum(slot.size for slot in layout)
        if flat.shape != (total,):
            raise ShapeError('flat vector has shape {}, layout needs ({},)'.format(
                flat.shape, total))
        tensors = {}
        offset = 0
        for slot in layout:
            tensors[slot.name] = flat[offset:offset + slot.size].reshape(slot.shape)
            offset += slot.size
        return cls(layout, tensors)

    def flatten(self):
        if not self.layout:
            return np.zeros(0)
        return np.concatenate([t.ravel() for t in self._tensors.values()])

    def replace(self, **tensors):
        merged = dict(self._tensors)
        merged.update(tensors)
        return FusionParams(self.layout, merged)

    def subset(self, prefix):
        """Parameters whose names start with `prefix`, with the prefix removed."""
        layout = [ParamSlot(slot.name[len(prefix):], slot.shape, slot.fan_in)
                  for slot in self.layout if slot.name.startswith(prefix)]
        tensors = {slot.name: self._tensors[prefix + slot.name] for slot in layout}
        return FusionParams(layout, tensors)

    def __getitem__(self, name):
        return self._tensors[name]

    def __contains__(self, name):
        return name in self._tensors

    def __len__(self):
        return sum(slot.size for slot in self.layout)

    def names(self):
        return list(self._tensors)

    def items(self):
        return list(self._tensors.items())

    def _repr_helper_(self, r):
        for slot in self.layout:
            r.keyword_with_value(slot.name.replace('.', '_'), slot.shape)

    def __eq__(self, other):
        if isinstance(other, FusionParams):
            return (self.layout == other.layout and
                    all(np.array_equal(self[n], other[n]) for n in self.names()))
        else:
            return NotImplemented

    __hash__ = None


def init_uniform(layout, seed):
    """Fill every slot i.i.d. uniform on ±1/sqrt(fan_in), deterministic in seed."""
    rng = np.random.default_rng(seed)
    tensors = {}
    for slot in layout:
        bound = 1.0 / np.sqrt(slot.fan_in)
        tensors[slot.name] = rng.uniform(-bound, bound, size=slot.shape)
    return FusionParams(layout, tensors)
