# coding: utf-8
"""Randomized verification suites for the fusion operators.

Each check draws a random spec and inputs from a seed and returns None on
success or a short description of what went wrong.
"""
from __future__ import absolute_import, division, print_function

from collections import OrderedDict

import numpy as np
from represent import ReprHelperMixin

from .exceptions import BlockFusionError
from .fusions import get_fusion
from .log import logger
from .oracle import bilinear_direct, finite_diff_grad, matrix_rank_bruteforce
from .params import FusionParams
from .spec import BILINEAR_SCHEMES, SCHEMES, FusionSpec
from .tensor import slice_core

ORACLE_TOLERANCE = 1e-10
BILINEARITY_TOLERANCE = 1e-10
GRADIENT_TOLERANCE = 1e-4
GRADIENT_STEP = 1e-5


class Failure(ReprHelperMixin, object):
    """First failing instance of a suite, with what's needed to reproduce it."""
    __slots__ = ('spec', 'seed', 'detail')

    def __init__(self, spec, seed, detail):
        self.spec = spec
        self.seed = seed
        self.detail = detail

    def _repr_helper_(self, r):
        r.keyword_from_attr('spec')
        r.keyword_from_attr('seed')
        r.keyword_from_attr('detail')

    def __str__(self):
        return '{} (seed {}): {}'.format(self.spec.summary(), self.seed, self.detail)


class SuiteResult(ReprHelperMixin, object):
    """Pass/fail counts of one suite."""
    __slots__ = ('name', 'passed', 'failed', 'first_failure')

    def __init__(self, name, passed=0, failed=0, first_failure=None):
        self.name = name
        self.passed = passed
        self.failed = failed
        self.first_failure = first_failure

    @property
    def ok(self):
        return self.failed == 0

    def _repr_helper_(self, r):
        r.positional_from_attr('name')
        r.keyword_from_attr('passed')
        r.keyword_from_attr('failed')


def _draw(rng, high, low=1):
    return int(rng.integers(low, high + 1))


def random_spec(scheme, rng, max_in=8, max_out=6):
    """Draw a small random spec of the given scheme."""
    dims = (_draw(rng, max_in), _draw(rng, max_in))
    K = _draw(rng, max_out)
    if scheme in ('block', 'tucker', 'mutan'):
        L, M, N = _draw(rng, 3), _draw(rng, 3), _draw(rng, 3)
        slice_rank = None
        if scheme == 'mutan' or rng.random() < 0.5:
            slice_rank = _draw(rng, min(L, M))
        if scheme == 'block':
            return FusionSpec.block(dims, K, (L, M, N), _draw(rng, 3), slice_rank)
        return FusionSpec(scheme, dims, K, block_dims=(L, M, N), slice_rank=slice_rank)
    elif scheme == 'cp':
        return FusionSpec.cp(dims, K, _draw(rng, 6))
    elif scheme == 'mfb':
        return FusionSpec.mfb(dims, K, _draw(rng, 3), _draw(rng, 4))
    elif scheme == 'mfh':
        return FusionSpec.mfh(dims, K, _draw(rng, 3), _draw(rng, 3), _draw(rng, 3))
    elif scheme == 'mcb':
        return FusionSpec.mcb(dims, K, _draw(rng, 8), int(rng.integers(0, 2 ** 31)))
    elif scheme == 'linear_sum':
        return FusionSpec.linear_sum(dims, K, _draw(rng, 6))
    elif scheme == 'concat_mlp':
        return FusionSpec.concat_mlp(dims, K, _draw(rng, 6))
    elif scheme == 'composite':
        leaves = [s for s in SCHEMES if s != 'composite']
        children = [random_spec(leaves[int(rng.integers(len(leaves)))], rng, 4, 3)
                    for _ in range(_draw(rng, 3))]
        return FusionSpec.composite(children, K)
    raise ValueError('unknown scheme {!r}'.format(scheme))


def _inputs(spec, rng):
    I, J = spec.input_dims
    return rng.standard_normal(I), rng.standard_normal(J)


def check_oracle_equivalence(spec, seed):
    """Structured forward vs triple-loop evaluation of the reconstructed tensor."""
    rng = np.random.default_rng(seed)
    fusion = get_fusion(spec)
    params = fusion.init_params(seed)
    x1, x2 = _inputs(spec, rng)
    y, _ = fusion.forward(params, x1, x2)
    expected = bilinear_direct(fusion.reconstruct(params), x1, x2)
    error = np.abs(y - expected).max() / (1.0 + np.abs(y).max())
    if not error < ORACLE_TOLERANCE:
        return 'forward differs from full tensor by {:.3g}'.format(error)


def check_bilinearity(spec, seed):
    """Linearity in each input separately."""
    rng = np.random.default_rng(seed)
    fusion = get_fusion(spec)
    params = fusion.init_params(seed)
    x1, x2 = _inputs(spec, rng)
    x1b, x2b = _inputs(spec, rng)
    alpha, beta = rng.standard_normal(2)

    def f(a, b):
        return fusion.forward(params, a, b)[0]

    pairs = (
        ('x1', f(alpha * x1 + beta * x1b, x2), alpha * f(x1, x2) + beta * f(x1b, x2)),
        ('x2', f(x1, alpha * x2 + beta * x2b), alpha * f(x1, x2) + beta * f(x1, x2b)),
    )
    for name, lhs, rhs in pairs:
        error = np.abs(lhs - rhs).max() / (1.0 + np.abs(lhs).max())
        if not error < BILINEARITY_TOLERANCE:
            return 'not linear in {}: error {:.3g}'.format(name, error)


def gradient_errors(fusion, params, x1, x2, dy, step=GRADIENT_STEP):
    """Scaled max error of each analytic gradient against central differences.

    The error of gradient g against numeric n is
    ``max|g - n| / max(1, max|n|)``.

    Returns:
        OrderedDict with keys ``params``, ``x1`` and ``x2``.
    """
    _, tape = fusion.forward(params, x1, x2)
    grads, dx1, dx2 = fusion.backward(params, tape, dy)
    layout = params.layout

    def objective(p, a, b):
        return float(np.dot(dy, fusion.forward(p, a, b)[0]))

    numeric = OrderedDict([
        ('params', (grads.flatten(), finite_diff_grad(
            lambda theta: objective(FusionParams.from_flat(layout, theta), x1, x2),
            params.flatten(), step))),
        ('x1', (dx1, finite_diff_grad(lambda a: objective(params, a, x2), x1, step))),
        ('x2', (dx2, finite_diff_grad(lambda b: objective(params, x1, b), x2, step))),
    ])
    errors = OrderedDict()
    for name, (analytic, approx) in numeric.items():
        if analytic.size == 0:
            errors[name] = 0.0
            continue
        scale = max(1.0, np.abs(approx).max())
        errors[name] = np.abs(analytic - approx).max() / scale
    return errors


def check_gradients(spec, seed):
    """Analytic backward against central finite differences."""
    rng = np.random.default_rng(seed)
    fusion = get_fusion(spec)
    params = fusion.init_params(seed)
    x1, x2 = _inputs(spec, rng)
    dy = rng.standard_normal(spec.output_dim)
    for name, error in gradient_errors(fusion, params, x1, x2, dy).items():
        if not error < GRADIENT_TOLERANCE:
            return 'gradient of {} off by {:.3g}'.format(name, error)


def _cp_collapse(spec, seed):
    I, J = spec.input_dims
    R = spec.rank
    cp = FusionSpec.cp((I, J), spec.output_dim, R)
    block = FusionSpec.block((I, J), spec.output_dim, (1, 1, 1), R)
    cp_params = get_fusion(cp).init_params(seed)
    block_fusion = get_fusion(block)
    block_params = FusionParams(block_fusion.param_layout(), dict(
        A=cp_params['A'], B=cp_params['B'], C=cp_params['C'], D=np.ones((R, 1, 1, 1))))
    x1, x2 = _inputs(cp, np.random.default_rng(seed))
    y_cp, _ = get_fusion(cp).forward(cp_params, x1, x2)
    y_block, _ = block_fusion.forward(block_params, x1, x2)
    if not np.array_equal(y_cp, y_block):
        return 'unit-core block fusion differs from CP'


def _tucker_collapse(spec, seed):
    dims, K = spec.input_dims, spec.output_dim
    block = FusionSpec.block(dims, K, spec.block_dims, 1, spec.slice_rank)
    tucker = FusionSpec.tucker(dims, K, spec.block_dims, spec.slice_rank)
    block_fusion = get_fusion(block)
    tucker_fusion = get_fusion(tucker)
    block_params = block_fusion.init_params(seed)
    shared = {name: value[0] if name in ('D', 'U', 'V') else value
              for name, value in block_params.items()}
    tucker_params = FusionParams(tucker_fusion.param_layout(), shared)
    x1, x2 = _inputs(block, np.random.default_rng(seed))
    if not np.array_equal(block_fusion.forward(block_params, x1, x2)[0],
                          tucker_fusion.forward(tucker_params, x1, x2)[0]):
        return 'single-block fusion differs from Tucker'
    if not np.array_equal(block_fusion.reconstruct(block_params),
                          tucker_fusion.reconstruct(tucker_params)):
        return 'single-block tensor differs from Tucker tensor'


def check_collapse(spec, seed):
    """CP and Tucker as special cases of the block-term operator, exactly."""
    if spec.scheme in ('block', 'cp'):
        rank = spec.rank
        cp = FusionSpec.cp(spec.input_dims, spec.output_dim, rank)
        detail = _cp_collapse(cp, seed)
        if detail:
            return detail
    if spec.scheme in ('block', 'tucker'):
        return _tucker_collapse(spec, seed)


def check_slice_rank(spec, seed):
    """Every mode-3 slice of every factored block has rank at most rho."""
    params = get_fusion(spec).init_params(seed)
    u, v = params['U'], params['V']
    if spec.scheme != 'block':
        u, v = u[None], v[None]
    for r in range(u.shape[0]):
        block = slice_core(u[r], v[r])
        for n in range(block.shape[2]):
            rank = matrix_rank_bruteforce(block[:, :, n])
            if rank > spec.slice_rank:
                return 'block {} slice {} has rank {} > {}'.format(
                    r, n, rank, spec.slice_rank)


def _with_slice_rank(spec, rng):
    if spec.slice_rank is not None:
        return spec
    L, M, _ = spec.block_dims
    return FusionSpec(spec.scheme, spec.input_dims, spec.output_dim,
                      block_dims=spec.block_dims, rank=spec.rank,
                      slice_rank=_draw(rng, min(L, M, 3)))


SUITES = OrderedDict([
    ('oracle-equivalence', (BILINEAR_SCHEMES, check_oracle_equivalence)),
    ('special-case-collapse', (('block', 'cp', 'tucker'), check_collapse)),
    ('slice-rank', (('block', 'tucker', 'mutan'), check_slice_rank)),
    ('bilinearity', (BILINEAR_SCHEMES, check_bilinearity)),
    ('gradient-check', (SCHEMES, check_gradients)),
])


def run_suite(name, schemes=None, instances=20, seed=0):
    """Run suite `name` on `instances` random specs of each applicable scheme."""
    applicable, check = SUITES[name]
    result = SuiteResult(name)
    for scheme in applicable:
        if schemes is not None and scheme not in schemes:
            continue
        for i in range(instances):
            instance_seed = seed + i
            rng = np.random.default_rng((instance_seed, SCHEMES.index(scheme)))
            max_in = 6 if name == 'gradient-check' else 8
            spec = random_spec(scheme, rng, max_in=max_in)
            if name == 'slice-rank':
                spec = _with_slice_rank(spec, rng)
            try:
                detail = check(spec, instance_seed)
            except (BlockFusionError, ArithmeticError, ValueError, IndexError) as exc:
                detail = '{}: {}'.format(type(exc).__name__, exc)
            if detail is None:
                result.passed += 1
            else:
                result.failed += 1
                logger.debug('{name}: {summary} (seed {seed}): {detail}', name=name,
                             summary=spec.summary(), seed=instance_seed, detail=detail)
                if result.first_failure is None:
                    result.first_failure = Failure(spec, instance_seed, detail)
    logger.debug('Suite {name}: {passed} passed, {failed} failed', name=name,
                 passed=result.passed, failed=result.failed)
    return result


def suites_for(scheme=None):
    """Names of the suites that apply to `scheme` (all suites for None)."""
    return [name for name, (applicable, _) in SUITES.items()
            if scheme is None or scheme in applicable]


def run_suites(scheme=None, instances=20, seed=0):
    schemes = None if scheme is None else (scheme,)
    return [run_suite(name, schemes, instances, seed) for name in suites_for(scheme)]
