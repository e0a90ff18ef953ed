# coding: utf-8
from __future__ import absolute_import, division, print_function

import numbers

from represent import ReprHelperMixin

from .exceptions import SpecError

SCHEMES = (
    'linear_sum', 'concat_mlp', 'mcb', 'tucker', 'cp', 'mfb', 'mutan', 'mfh',
    'block', 'composite')

# Schemes whose operator is exactly y = T x1 x2 for a reconstructible T.
BILINEAR_SCHEMES = ('block', 'cp', 'tucker', 'mutan', 'mfb', 'mcb')

_OPTIONS = ('block_dims', 'rank', 'slice_rank', 'factor_rank', 'pooled_dim',
            'depth', 'sketch_dim', 'seed', 'hidden')

_REQUIRED = {
    'linear_sum': ('hidden',),
    'concat_mlp': ('hidden',),
    'mcb': ('sketch_dim', 'seed'),
    'tucker': ('block_dims',),
    'cp': ('rank',),
    'mfb': ('factor_rank', 'pooled_dim'),
    'mutan': ('block_dims', 'slice_rank'),
    'mfh': ('depth', 'factor_rank', 'pooled_dim'),
    'block': ('block_dims', 'rank'),
    'composite': (),
}

_OPTIONAL = {
    'tucker': ('slice_rank',),
    'block': ('slice_rank',),
}

_SUMMARY_NAMES = {
    'rank': 'R', 'slice_rank': 'rho', 'factor_rank': 'k', 'pooled_dim': 'o',
    'depth': 'Q', 'sketch_dim': 'd', 'seed': 'seed', 'hidden': 'h',
}


def _integer(value):
    if isinstance(value, numbers.Integral) and not isinstance(value, bool):
        return int(value)
    return value


def _positive(name, value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise SpecError('{} must be a positive integer, got {!r}'.format(name, value))
    return value


class FusionSpec(ReprHelperMixin, object):
    """Scheme tag and hyperparameters that fully determine a fusion operator.

    Use the named constructors (:py:meth:`block`, :py:meth:`cp`, ...) rather
    than the initialiser where possible.

    .. attribute:: scheme

       One of :py:data:`SCHEMES`.

    .. attribute:: input_dims

       ``(I, J)``. For composites, the sums over the branches.

    .. attribute:: output_dim

       ``K``.

    .. attribute:: block_dims

       ``(L, M, N)`` for ``block``, ``tucker`` and ``mutan``.

    .. attribute:: rank

       Number of blocks R for ``block``, rank R for ``cp``.

    .. attribute:: slice_rank

       Rank bound on every mode-3 slice of the core(s), or None.

    .. attribute:: children

       Tuple of branch specs for ``composite``.
    """
    __slots__ = ('scheme', 'input_dims', 'output_dim', 'children') + _OPTIONS

    def __init__(self, scheme, input_dims, output_dim, block_dims=None, rank=None,
                 slice_rank=None, factor_rank=None, pooled_dim=None, depth=None,
                 sketch_dim=None, seed=None, hidden=None, children=()):
        if scheme not in SCHEMES:
            raise SpecError('unknown scheme {!r}; expected one of {}'.format(
                scheme, ', '.join(SCHEMES)))
        self.scheme = scheme
        self.input_dims = tuple(_integer(v) for v in input_dims)
        self.output_dim = _integer(output_dim)
        if block_dims is not None:
            block_dims = tuple(_integer(v) for v in block_dims)
        self.block_dims = block_dims
        self.rank = _integer(rank)
        self.slice_rank = _integer(slice_rank)
        self.factor_rank = _integer(factor_rank)
        self.pooled_dim = _integer(pooled_dim)
        self.depth = _integer(depth)
        self.sketch_dim = _integer(sketch_dim)
        self.seed = _integer(seed)
        self.hidden = _integer(hidden)
        self.children = tuple(children)
        self._validate()

    def _validate(self):
        scheme = self.scheme
        if len(self.input_dims) != 2:
            raise SpecError('input_dims must be a pair (I, J)')
        for name, value in zip(('I', 'J'), self.input_dims):
            _positive(name, value)
        _positive('K', self.output_dim)

        allowed = _REQUIRED[scheme] + _OPTIONAL.get(scheme, ())
        for option in _OPTIONS:
            value = getattr(self, option)
            if option in _REQUIRED[scheme] and value is None:
                raise SpecError('{} requires {}'.format(scheme, option))
            if option not in allowed and value is not None:
                raise SpecError('{} does not take {}'.format(scheme, option))

        if self.block_dims is not None:
            if len(self.block_dims) != 3:
                raise SpecError('block_dims must be (L, M, N)')
            for name, value in zip('LMN', self.block_dims):
                _positive(name, value)
        for option in ('rank', 'factor_rank', 'pooled_dim', 'depth',
                       'sketch_dim', 'hidden', 'slice_rank'):
            if getattr(self, option) is not None:
                _positive(option, getattr(self, option))
        if self.seed is not None and not isinstance(self.seed, int):
            raise SpecError('seed must be an integer')
        if self.slice_rank is not None:
            L, M, _ = self.block_dims
            if self.slice_rank > min(L, M):
                raise SpecError('slice_rank {} exceeds min(L, M) = {}'.format(
                    self.slice_rank, min(L, M)))

        if scheme == 'composite':
            if not self.children:
                raise SpecError('composite requires at least one child spec')
            dims = (sum(c.input_dims[0] for c in self.children),
                    sum(c.input_dims[1] for c in self.children))
            if self.input_dims != dims:
                raise SpecError('composite input_dims {} differ from branch sums {}'
                                .format(self.input_dims, dims))
        elif self.children:
            raise SpecError('{} does not take children'.format(scheme))

    @classmethod
    def block(cls, input_dims, output_dim, block_dims, rank, slice_rank=None):
        return cls('block', input_dims, output_dim, block_dims=block_dims,
                   rank=rank, slice_rank=slice_rank)

    @classmethod
    def cp(cls, input_dims, output_dim, rank):
        return cls('cp', input_dims, output_dim, rank=rank)

    @classmethod
    def tucker(cls, input_dims, output_dim, block_dims, slice_rank=None):
        return cls('tucker', input_dims, output_dim, block_dims=block_dims,
                   slice_rank=slice_rank)

    @classmethod
    def mutan(cls, input_dims, output_dim, block_dims, slice_rank):
        return cls('mutan', input_dims, output_dim, block_dims=block_dims,
                   slice_rank=slice_rank)

    @classmethod
    def mfb(cls, input_dims, output_dim, factor_rank, pooled_dim):
        return cls('mfb', input_dims, output_dim, factor_rank=factor_rank,
                   pooled_dim=pooled_dim)

    @classmethod
    def mfh(cls, input_dims, output_dim, depth, factor_rank, pooled_dim):
        return cls('mfh', input_dims, output_dim, depth=depth,
                   factor_rank=factor_rank, pooled_dim=pooled_dim)

    @classmethod
    def mcb(cls, input_dims, output_dim, sketch_dim, seed=0):
        return cls('mcb', input_dims, output_dim, sketch_dim=sketch_dim, seed=seed)

    @classmethod
    def linear_sum(cls, input_dims, output_dim, hidden):
        return cls('linear_sum', input_dims, output_dim, hidden=hidden)

    @classmethod
    def concat_mlp(cls, input_dims, output_dim, hidden):
        return cls('concat_mlp', input_dims, output_dim, hidden=hidden)

    @classmethod
    def composite(cls, children, output_dim):
        children = tuple(children)
        if not children:
            raise SpecError('composite requires at least one child spec')
        dims = (sum(c.input_dims[0] for c in children),
                sum(c.input_dims[1] for c in children))
        return cls('composite', dims, output_dim, children=children)

    def options(self):
        """Return the scheme options that are set, in canonical order."""
        return [(name, getattr(self, name)) for name in _OPTIONS
                if getattr(self, name) is not None]

    def summary(self):
        """One-line description, e.g. ``block(I=4, J=4, K=3, L=2, M=2, N=2, R=2)``."""
        I, J = self.input_dims
        parts = ['I={}'.format(I), 'J={}'.format(J), 'K={}'.format(self.output_dim)]
        for name, value in self.options():
            if name == 'block_dims':
                parts.extend('{}={}'.format(n, v) for n, v in zip('LMN', value))
            else:
                parts.append('{}={}'.format(_SUMMARY_NAMES[name], value))
        if self.children:
            parts.append('[{}]'.format('; '.join(c.summary() for c in self.children)))
        return '{}({})'.format(self.scheme, ', '.join(parts))

    def _repr_helper_(self, r):
        r.keyword_from_attr('scheme')
        r.keyword_from_attr('input_dims')
        r.keyword_from_attr('output_dim')
        for name, value in self.options():
            r.keyword_with_value(name, value)
        if self.children:
            r.keyword_from_attr('children')

    def __eq__(self, other):
        if isinstance(other, FusionSpec):
            params = self.__slots__
            return all(getattr(self, p) == getattr(other, p) for p in params)
        else:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(getattr(self, p) for p in self.__slots__))


def core_param_count(spec):
    """Scalars in the core tensor(s): R·L·M·N, or R·ρ·N·(L+M) when slices are
    rank-constrained, and R for CP, whose core is the R×R×R superdiagonal.
    Zero for schemes without a core.
    """
    if spec.scheme in ('block', 'tucker', 'mutan'):
        L, M, N = spec.block_dims
        blocks = spec.rank if spec.scheme == 'block' else 1
        if spec.slice_rank is None:
            return blocks * L * M * N
        return blocks * spec.slice_rank * N * (L + M)
    if spec.scheme == 'cp':
        return spec.rank
    return 0


def param_count(spec):
    """Closed-form number of learned scalars of the operator `spec` describes."""
    I, J = spec.input_dims
    K = spec.output_dim
    scheme = spec.scheme

    if scheme == 'block':
        L, M, N = spec.block_dims
        R = spec.rank
        return I * L * R + J * M * R + K * N * R + core_param_count(spec)
    elif scheme == 'cp':
        return spec.rank * (I + J + K)
    elif scheme in ('tucker', 'mutan'):
        L, M, N = spec.block_dims
        return I * L + J * M + K * N + core_param_count(spec)
    elif scheme == 'mcb':
        return spec.sketch_dim * K
    elif scheme == 'linear_sum':
        d = spec.hidden
        return I * d + J * d + d * K
    elif scheme == 'concat_mlp':
        h = spec.hidden
        return (I + J + 1) * h + (h + 1) * h + (h + 1) * K
    elif scheme == 'mfb':
        k, o = spec.factor_rank, spec.pooled_dim
        return (I + J) * k * o + o * K
    elif scheme == 'mfh':
        Q, k, o = spec.depth, spec.factor_rank, spec.pooled_dim
        return Q * (I + J) * k * o + Q * o * K
    elif scheme == 'composite':
        branch_out = sum(c.output_dim for c in spec.children)
        return sum(param_count(c) for c in spec.children) + branch_out * K
    raise SpecError('unknown scheme {!r}'.format(scheme))
