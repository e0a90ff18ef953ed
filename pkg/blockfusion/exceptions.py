# coding: utf-8
from __future__ import absolute_import, division, print_function


class BlockFusionError(Exception):
    """Base exception."""
    def __init__(self, *args, **kwargs):
        super(BlockFusionError, self).__init__(*args, **kwargs)


class ShapeError(BlockFusionError, ValueError):
    """Raised when tensor orders or dimensions don't match."""
    def __init__(self, *args, **kwargs):
        super(ShapeError, self).__init__(*args, **kwargs)


class ChunkIndexError(BlockFusionError, IndexError):
    """Raised when a chunk index falls outside the chunked vector."""
    def __init__(self, *args, **kwargs):
        super(ChunkIndexError, self).__init__(*args, **kwargs)


class SpecError(BlockFusionError, ValueError):
    """Raised for an invalid fusion spec, task spec or training config."""
    def __init__(self, *args, **kwargs):
        super(SpecError, self).__init__(*args, **kwargs)


class UnsupportedSchemeError(BlockFusionError):
    """Raised when an operation is not defined for a fusion scheme.

    .. attribute:: scheme

       Name of the offending scheme.

    """
    def __init__(self, *args, **kwargs):
        self.scheme = kwargs.pop('scheme')
        super(UnsupportedSchemeError, self).__init__(*args, **kwargs)


class TapeMismatchError(BlockFusionError):
    """Raised when a backward pass is given a tape from another forward pass."""
    def __init__(self, *args, **kwargs):
        super(TapeMismatchError, self).__init__(*args, **kwargs)


class InvalidTargetError(BlockFusionError, ValueError):
    """Raised when loss targets fall outside what the loss accepts."""
    def __init__(self, *args, **kwargs):
        super(InvalidTargetError, self).__init__(*args, **kwargs)


class TrainingDivergedError(BlockFusionError, ArithmeticError):
    """Raised when the training loss stops being finite.

    .. attribute:: epoch

       1-based epoch in which the loss diverged.

    .. attribute:: batch

       1-based batch index within that epoch.

    """
    def __init__(self, *args, **kwargs):
        self.epoch = kwargs.pop('epoch')
        self.batch = kwargs.pop('batch')
        super(TrainingDivergedError, self).__init__(*args, **kwargs)


class ConfigError(BlockFusionError):
    """Raised when an experiment config can't be parsed or fails the schema.

    .. attribute:: lineno

       1-based line of the offending entry.

    .. attribute:: colno

       1-based column of the offending entry.

    """
    def __init__(self, *args, **kwargs):
        self.lineno = kwargs.pop('lineno', None)
        self.colno = kwargs.pop('colno', None)
        super(ConfigError, self).__init__(*args, **kwargs)

    def __str__(self):
        message = super(ConfigError, self).__str__()
        if self.lineno is None:
            return message
        return 'line {}, column {}: {}'.format(self.lineno, self.colno or 1, message)
