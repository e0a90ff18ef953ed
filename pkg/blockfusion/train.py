# coding: utf-8
"""Teacher-student tasks, Adam training with early stopping, and block sweeps."""
from __future__ import absolute_import, division, print_function

import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from represent import ReprHelperMixin

from .exceptions import (
    InvalidTargetError, ShapeError, SpecError, TrainingDivergedError)
from .fusions import get_fusion
from .log import logger
from .params import FusionParams
from .spec import FusionSpec, core_param_count, param_count

TASK_KINDS = ('regression', 'classification', 'multilabel')
LOSSES = ('mse', 'cross_entropy', 'binary_cross_entropy')
SWEEP_MODES = ('fixed_core_size', 'fixed_param_budget')

# Loss used when TrainConfig.loss is None, and the losses each task accepts.
DEFAULT_LOSS = {
    'regression': 'mse',
    'classification': 'cross_entropy',
    'multilabel': 'binary_cross_entropy',
}


def _slotted_eq(self, other, params):
    if isinstance(other, type(self)):
        return all(getattr(self, p) == getattr(other, p) for p in params)
    else:
        return NotImplemented


class SyntheticTaskSpec(ReprHelperMixin, object):
    """Recipe for a dataset whose targets come from a fixed teacher operator.

    .. attribute:: teacher

       :py:class:`~blockfusion.spec.FusionSpec` of the teacher.

    .. attribute:: teacher_seed

       Seed for the teacher's parameters.

    .. attribute:: task_kind

       ``regression`` (noisy teacher outputs), ``classification`` (argmax of
       the noisy outputs) or ``multilabel`` (sign of each noisy output).

    """
    __slots__ = ('teacher', 'teacher_seed', 'task_kind', 'noise_std', 'n_train',
                 'n_val', 'n_test', 'data_seed')

    def __init__(self, teacher, n_train, n_val, n_test, teacher_seed=0,
                 task_kind='regression', noise_std=0.0, data_seed=0):
        if not isinstance(teacher, FusionSpec):
            raise SpecError('teacher must be a FusionSpec')
        if task_kind not in TASK_KINDS:
            raise SpecError('unknown task kind {!r}; expected one of {}'.format(
                task_kind, ', '.join(TASK_KINDS)))
        if not noise_std >= 0:
            raise SpecError('noise_std must be non-negative, got {!r}'.format(noise_std))
        for name, value in (('n_train', n_train), ('n_val', n_val), ('n_test', n_test)):
            if int(value) != value or value < 1:
                raise SpecError('{} must be a positive integer, got {!r}'.format(name, value))

        self.teacher = teacher
        self.teacher_seed = int(teacher_seed)
        self.task_kind = task_kind
        self.noise_std = float(noise_std)
        self.n_train = int(n_train)
        self.n_val = int(n_val)
        self.n_test = int(n_test)
        self.data_seed = int(data_seed)

    @property
    def input_dims(self):
        return self.teacher.input_dims

    @property
    def output_dim(self):
        return self.teacher.output_dim

    def replace(self, **changes):
        fields = {name: getattr(self, name) for name in self.__slots__}
        fields.update(changes)
        return SyntheticTaskSpec(**fields)

    def _repr_helper_(self, r):
        for name in self.__slots__:
            r.keyword_from_attr(name)

    def __eq__(self, other):
        return _slotted_eq(self, other, self.__slots__)

    __hash__ = None


class Split(ReprHelperMixin, object):
    """Aligned rows of inputs and targets.

    Targets are floats for regression and multilabel tasks and integer class
    indices for classification.
    """
    __slots__ = ('x1', 'x2', 'target')

    def __init__(self, x1, x2, target):
        if not len(x1) == len(x2) == len(target):
            raise ShapeError('split columns have lengths {}, {} and {}'.format(
                len(x1), len(x2), len(target)))
        self.x1 = x1
        self.x2 = x2
        self.target = target

    def __len__(self):
        return len(self.target)

    def take(self, index):
        return Split(self.x1[index], self.x2[index], self.target[index])

    def _repr_helper_(self, r):
        r.keyword_with_value('rows', len(self))

    def __eq__(self, other):
        if isinstance(other, Split):
            return all(np.array_equal(getattr(self, p), getattr(other, p))
                       for p in self.__slots__)
        else:
            return NotImplemented

    __hash__ = None


class Dataset(ReprHelperMixin, object):
    """Train, validation and test splits of one task.

    .. attribute:: seeds

       Ordered mapping of the seeds that produced the data, recorded in every
       :py:class:`RunRecord` trained on it.

    """
    __slots__ = ('train', 'val', 'test', 'task_kind', 'input_dims', 'output_dim',
                 'seeds')

    def __init__(self, train, val, test, task_kind, input_dims, output_dim, seeds):
        self.train = train
        self.val = val
        self.test = test
        self.task_kind = task_kind
        self.input_dims = tuple(input_dims)
        self.output_dim = output_dim
        self.seeds = OrderedDict(seeds)

    def _repr_helper_(self, r):
        r.keyword_from_attr('task_kind')
        r.keyword_from_attr('input_dims')
        r.keyword_from_attr('output_dim')
        r.keyword_with_value('sizes', (len(self.train), len(self.val), len(self.test)))

    def __eq__(self, other):
        return _slotted_eq(self, other, self.__slots__)

    __hash__ = None


class TrainConfig(ReprHelperMixin, object):
    """Optimizer and early-stopping settings.

    `loss` may be None to use the loss matching the task kind.
    """
    __slots__ = ('learning_rate', 'batch_size', 'betas', 'epsilon', 'max_epochs',
                 'patience', 'loss', 'seed')

    def __init__(self, learning_rate=1e-4, batch_size=200, betas=(0.9, 0.999),
                 epsilon=1e-8, max_epochs=100, patience=10, loss=None, seed=0):
        if not learning_rate > 0:
            raise SpecError('learning_rate must be positive, got {!r}'.format(learning_rate))
        if int(patience) != patience or patience < 1:
            raise SpecError('patience must be at least 1, got {!r}'.format(patience))
        if int(batch_size) != batch_size or batch_size < 1:
            raise SpecError('batch_size must be at least 1, got {!r}'.format(batch_size))
        if int(max_epochs) != max_epochs or max_epochs < 1:
            raise SpecError('max_epochs must be at least 1, got {!r}'.format(max_epochs))
        betas = tuple(float(b) for b in betas)
        if len(betas) != 2 or not all(0 <= b < 1 for b in betas):
            raise SpecError('betas must be two numbers in [0, 1), got {!r}'.format(betas))
        if not epsilon > 0:
            raise SpecError('epsilon must be positive, got {!r}'.format(epsilon))
        if loss is not None and loss not in LOSSES:
            raise SpecError('unknown loss {!r}; expected one of {}'.format(
                loss, ', '.join(LOSSES)))

        self.learning_rate = float(learning_rate)
        self.batch_size = int(batch_size)
        self.betas = betas
        self.epsilon = float(epsilon)
        self.max_epochs = int(max_epochs)
        self.patience = int(patience)
        self.loss = loss
        self.seed = int(seed)

    def replace(self, **changes):
        fields = {name: getattr(self, name) for name in self.__slots__}
        fields.update(changes)
        return TrainConfig(**fields)

    def _repr_helper_(self, r):
        for name in self.__slots__:
            r.keyword_from_attr(name)

    def __eq__(self, other):
        return _slotted_eq(self, other, self.__slots__)

    __hash__ = None


class AdamState(ReprHelperMixin, object):
    """First and second moment estimates and the step counter."""
    __slots__ = ('m', 'v', 't')

    def __init__(self, m, v, t=0):
        self.m = m
        self.v = v
        self.t = t

    @classmethod
    def zeros(cls, size):
        return cls(np.zeros(size), np.zeros(size), 0)

    def _repr_helper_(self, r):
        r.keyword_with_value('size', self.m.size)
        r.keyword_from_attr('t')


class EpochRecord(ReprHelperMixin, object):
    __slots__ = ('epoch', 'train_loss', 'val_metric')

    def __init__(self, epoch, train_loss, val_metric):
        self.epoch = epoch
        self.train_loss = train_loss
        self.val_metric = val_metric

    def _repr_helper_(self, r):
        r.positional_from_attr('epoch')
        r.keyword_from_attr('train_loss')
        r.keyword_from_attr('val_metric')

    def __eq__(self, other):
        return _slotted_eq(self, other, self.__slots__)

    __hash__ = None


class RunRecord(ReprHelperMixin, object):
    """Outcome of one training run.

    .. attribute:: epochs

       Tuple of :py:class:`EpochRecord`, one per epoch actually run.

    .. attribute:: best_epoch

       Epoch whose parameters were kept and scored on the test split.

    .. attribute:: final_train_loss

       Training loss of the kept parameters.

    .. attribute:: seeds

       Ordered mapping of every seed involved: ``model`` plus those of the
       dataset.

    .. attribute:: unspent_budget

       Parameter budget left over after rounding the block size down, for
       fixed-budget sweeps; None otherwise.

    """
    __slots__ = ('spec_summary', 'param_count', 'core_param_count', 'epochs',
                 'best_epoch', 'final_train_loss', 'test_metric', 'seconds', 'seeds',
                 'unspent_budget')

    def __init__(self, spec_summary, param_count, core_param_count, epochs, best_epoch,
                 final_train_loss, test_metric, seconds, seeds, unspent_budget=None):
        self.spec_summary = spec_summary
        self.param_count = param_count
        self.core_param_count = core_param_count
        self.epochs = tuple(epochs)
        self.best_epoch = best_epoch
        self.final_train_loss = final_train_loss
        self.test_metric = test_metric
        self.seconds = seconds
        self.seeds = OrderedDict(seeds)
        self.unspent_budget = unspent_budget

    @property
    def stopping_epoch(self):
        return len(self.epochs)

    def metrics(self):
        """Everything except the wall-clock time, for determinism checks."""
        return tuple(getattr(self, name) for name in self.__slots__ if name != 'seconds')

    def _repr_helper_(self, r):
        r.keyword_from_attr('spec_summary')
        r.keyword_from_attr('param_count')
        r.keyword_with_value('stopping_epoch', self.stopping_epoch)
        r.keyword_from_attr('best_epoch')
        r.keyword_from_attr('test_metric')


class SweepPoint(ReprHelperMixin, object):
    """Aggregate of the runs of one R in a block sweep.

    `metric_std` is the population standard deviation over the splits.
    """
    __slots__ = ('R', 'block_dim', 'core_param_count', 'param_count', 'runs',
                 'metric_mean', 'metric_std', 'seconds', 'unspent_budget')

    def __init__(self, R, block_dim, runs, unspent_budget=None):
        runs = tuple(runs)
        metrics = np.array([run.test_metric for run in runs])
        self.R = R
        self.block_dim = block_dim
        self.core_param_count = runs[0].core_param_count
        self.param_count = runs[0].param_count
        self.runs = runs
        self.metric_mean = float(metrics.mean())
        self.metric_std = float(metrics.std())
        self.seconds = float(sum(run.seconds for run in runs))
        self.unspent_budget = unspent_budget

    def _repr_helper_(self, r):
        r.keyword_from_attr('R')
        r.keyword_from_attr('block_dim')
        r.keyword_from_attr('core_param_count')
        r.keyword_from_attr('metric_mean')
        r.keyword_from_attr('metric_std')


def generate_task(spec):
    """Draw a dataset from `spec`.

    Inputs are i.i.d. standard normal. Regression targets are the teacher's
    outputs plus Gaussian noise; the other kinds threshold the noisy outputs.
    The same spec always yields the same arrays.
    """
    teacher = get_fusion(spec.teacher)
    params = teacher.init_params(spec.teacher_seed)
    rng = np.random.default_rng(spec.data_seed)
    I, J = spec.input_dims
    sizes = (spec.n_train, spec.n_val, spec.n_test)
    n = sum(sizes)
    x1 = rng.standard_normal((n, I))
    x2 = rng.standard_normal((n, J))

    splits = []
    start = 0
    for size in sizes:
        a, b = x1[start:start + size], x2[start:start + size]
        start += size
        y, _ = teacher.forward(params, a, b)
        if spec.noise_std > 0:
            y = y + spec.noise_std * rng.standard_normal(y.shape)
        if spec.task_kind == 'classification':
            target = np.argmax(y, axis=1)
        elif spec.task_kind == 'multilabel':
            target = (y > 0).astype(np.float64)
        else:
            target = y
        splits.append(Split(a, b, target))

    seeds = [('teacher', spec.teacher_seed), ('data', spec.data_seed)]
    return Dataset(splits[0], splits[1], splits[2], spec.task_kind, spec.input_dims,
                   spec.output_dim, seeds)


def resplit(dataset, seed):
    """Shuffle train and validation rows together into a fresh partition of the
    same sizes. The test split is untouched.
    """
    pooled = Split(np.concatenate([dataset.train.x1, dataset.val.x1]),
                   np.concatenate([dataset.train.x2, dataset.val.x2]),
                   np.concatenate([dataset.train.target, dataset.val.target]))
    order = np.random.default_rng(seed).permutation(len(pooled))
    n_train = len(dataset.train)
    seeds = list(dataset.seeds.items()) + [('split', seed)]
    return Dataset(pooled.take(order[:n_train]), pooled.take(order[n_train:]),
                   dataset.test, dataset.task_kind, dataset.input_dims,
                   dataset.output_dim, seeds)


def adam_step(params, grads, state, config):
    """One bias-corrected Adam update.

    Returns:
        Tuple ``(params, state)``; the inputs are not modified.
    """
    params = np.asarray(params, dtype=np.float64)
    grads = np.asarray(grads, dtype=np.float64)
    if params.shape != grads.shape or params.shape != state.m.shape:
        raise ShapeError('parameters, gradients and Adam state differ in shape')
    beta1, beta2 = config.betas
    t = state.t + 1
    m = beta1 * state.m + (1 - beta1) * grads
    v = beta2 * state.v + (1 - beta2) * grads * grads
    m_hat = m / (1 - beta1 ** t)
    v_hat = v / (1 - beta2 ** t)
    params = params - config.learning_rate * m_hat / (np.sqrt(v_hat) + config.epsilon)
    return params, AdamState(m, v, t)


def _class_targets(target, batch, classes):
    target = np.asarray(target)
    if target.shape != (batch,):
        raise InvalidTargetError('expected {} class indices, got shape {}'.format(
            batch, target.shape))
    if not np.all(np.equal(np.mod(target, 1), 0)):
        raise InvalidTargetError('class targets must be integers')
    target = target.astype(np.int64)
    bad = (target < 0) | (target >= classes)
    if bad.any():
        raise InvalidTargetError('class target {} outside [0, {})'.format(
            target[bad][0], classes))
    return target


def loss_and_grad(kind, y, target):
    """Batch-mean loss and its exact gradient with respect to `y`.

    Parameters:
        kind: ``mse``, ``cross_entropy`` (softmax plus negative log likelihood)
            or ``binary_cross_entropy`` (per-coordinate sigmoid, averaged over
            coordinates).
        y: Outputs, shape (K,) or (B, K).
        target: Same shape as `y` for ``mse`` and ``binary_cross_entropy``;
            class indices of shape () or (B,) for ``cross_entropy``.

    Returns:
        Tuple ``(loss, dy)`` with `dy` shaped like `y`.

    Raises:
        ~blockfusion.exceptions.InvalidTargetError: Targets outside what the
            loss accepts.
    """
    y = np.asarray(y, dtype=np.float64)
    single = y.ndim == 1
    if single:
        y = y[None, :]
        target = np.asarray(target)[None, ...]
    B, K = y.shape

    if kind == 'mse':
        target = np.asarray(target, dtype=np.float64)
        if target.shape != y.shape:
            raise InvalidTargetError('mse target has shape {}, outputs {}'.format(
                target.shape, y.shape))
        diff = y - target
        loss = np.mean(diff * diff)
        dy = 2 * diff / diff.size
    elif kind == 'cross_entropy':
        target = _class_targets(target, B, K)
        shifted = y - y.max(axis=1, keepdims=True)
        log_z = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
        log_p = shifted - log_z
        loss = -np.mean(log_p[np.arange(B), target])
        dy = np.exp(log_p)
        dy[np.arange(B), target] -= 1
        dy /= B
    elif kind == 'binary_cross_entropy':
        target = np.asarray(target, dtype=np.float64)
        if target.shape != y.shape:
            raise InvalidTargetError('binary_cross_entropy target has shape {}, outputs {}'
                                     .format(target.shape, y.shape))
        if not np.all((target == 0) | (target == 1)):
            raise InvalidTargetError('binary_cross_entropy targets must be 0 or 1')
        loss = np.mean(np.maximum(y, 0) - y * target + np.log1p(np.exp(-np.abs(y))))
        sigmoid = np.exp(-np.logaddexp(0, -y))
        dy = (sigmoid - target) / y.size
    else:
        raise SpecError('unknown loss {!r}'.format(kind))

    return float(loss), (dy[0] if single else dy)


def evaluate(fusion, params, split, task_kind):
    """Score `split`; higher is better.

    The metric is negative MSE for regression, accuracy for classification
    and per-label accuracy for multilabel tasks.
    """
    y, _ = fusion.forward(params, split.x1, split.x2)
    if task_kind == 'classification':
        return float(np.mean(np.argmax(y, axis=1) == split.target))
    elif task_kind == 'multilabel':
        return float(np.mean((y > 0) == (split.target > 0.5)))
    diff = y - split.target
    return -float(np.mean(diff * diff))


def _check_loss(loss, task_kind):
    compatible = {
        'regression': ('mse',),
        'classification': ('cross_entropy',),
        'multilabel': ('binary_cross_entropy', 'mse'),
    }
    if loss not in compatible[task_kind]:
        raise SpecError('loss {} cannot train a {} task'.format(loss, task_kind))


def train_model(fusion_spec, dataset, config):
    """Train a fresh operator on `dataset` with mini-batch Adam.

    After every epoch the validation metric is computed; training stops once
    it has failed to strictly improve for ``config.patience`` epochs or after
    ``config.max_epochs``. The parameters of the best validation epoch are
    scored on the test split.

    Raises:
        ~blockfusion.exceptions.ShapeError: Spec and dataset dimensions differ.
        ~blockfusion.exceptions.TrainingDivergedError: A batch loss was not
            finite.
    """
    if (fusion_spec.input_dims != dataset.input_dims or
            fusion_spec.output_dim != dataset.output_dim):
        raise ShapeError('{} does not fit data with inputs {} and {} outputs'.format(
            fusion_spec.summary(), dataset.input_dims, dataset.output_dim))
    loss_kind = config.loss or DEFAULT_LOSS[dataset.task_kind]
    _check_loss(loss_kind, dataset.task_kind)

    started = time.perf_counter()
    fusion = get_fusion(fusion_spec)
    params = fusion.init_params(config.seed)
    layout = params.layout
    theta = params.flatten()
    state = AdamState.zeros(theta.size)
    rng = np.random.default_rng((config.seed, 1))
    train = dataset.train
    n = len(train)

    best = (-np.inf, 0, theta)
    stale = 0
    epochs = []
    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(n)
        for batch, start in enumerate(range(0, n, config.batch_size), 1):
            rows = train.take(order[start:start + config.batch_size])
            current = FusionParams.from_flat(layout, theta)
            y, tape = fusion.forward(current, rows.x1, rows.x2)
            loss, dy = loss_and_grad(loss_kind, y, rows.target)
            if not np.isfinite(loss):
                raise TrainingDivergedError(
                    'loss became {} in epoch {}, batch {}'.format(loss, epoch, batch),
                    epoch=epoch, batch=batch)
            grads, _, _ = fusion.backward(current, tape, dy)
            theta, state = adam_step(theta, grads.flatten(), state, config)

        current = FusionParams.from_flat(layout, theta)
        y, _ = fusion.forward(current, train.x1, train.x2)
        train_loss, _ = loss_and_grad(loss_kind, y, train.target)
        val_metric = evaluate(fusion, current, dataset.val, dataset.task_kind)
        epochs.append(EpochRecord(epoch, train_loss, val_metric))
        logger.debug('Epoch {epoch}: train loss {loss:.6g}, val metric {metric:.6g}',
                     epoch=epoch, loss=train_loss, metric=val_metric)

        if val_metric > best[0]:
            best = (val_metric, epoch, theta)
            stale = 0
        else:
            stale += 1
            if stale >= config.patience:
                logger.debug('Stopping after epoch {epoch}; best was epoch {best}',
                             epoch=epoch, best=best[1])
                break

    _, best_epoch, theta = best
    if best_epoch == 0:
        # Validation metric was never finite; keep the last parameters.
        best_epoch = len(epochs)
    kept = FusionParams.from_flat(layout, theta)
    test_metric = evaluate(fusion, kept, dataset.test, dataset.task_kind)
    seeds = [('model', config.seed)] + list(dataset.seeds.items())
    return RunRecord(
        spec_summary=fusion_spec.summary(),
        param_count=param_count(fusion_spec),
        core_param_count=core_param_count(fusion_spec),
        epochs=epochs,
        best_epoch=best_epoch,
        final_train_loss=epochs[best_epoch - 1].train_loss,
        test_metric=test_metric,
        seconds=time.perf_counter() - started,
        seeds=seeds)


def fixed_core_block_dim(core_dim, R):
    """Block size L with R·L = core_dim.

    Raises:
        ~blockfusion.exceptions.SpecError: R does not divide `core_dim`.
    """
    if R < 1 or core_dim % R:
        raise SpecError('R={} does not divide core_dim {}'.format(R, core_dim))
    return core_dim // R


def fixed_budget_block_dim(budget, R):
    """Largest L with R·L³ <= budget.

    Raises:
        ~blockfusion.exceptions.SpecError: Not even L=1 fits.
    """
    if R < 1 or R > budget:
        raise SpecError('R={} leaves no room for a block in budget {}'.format(R, budget))
    L = int(round((budget / R) ** (1 / 3)))
    while R * (L + 1) ** 3 <= budget:
        L += 1
    while R * L ** 3 > budget:
        L -= 1
    return L


def _train_split(job):
    spec, dataset, split_seed, config = job
    return train_model(spec, resplit(dataset, split_seed), config)


def sweep_blocks(mode, base, r_values, config, budget=None, core_dim=None, splits=3,
                 split_seeds=None, workers=1):
    """Train a block-term student for every R in `r_values`.

    Block sizes are L=M=N, either ``core_dim / R`` (``fixed_core_size``) or
    the largest cube with R·L³ <= `budget` (``fixed_param_budget``). Each R is
    trained on `splits` reshuffled train/validation partitions of the task
    drawn from `base`.

    Parameters:
        split_seeds: Seeds for :py:func:`resplit`; defaults to
            ``data_seed + i`` for split i.
        workers: Number of worker processes.

    Returns:
        List of :py:class:`SweepPoint` in the order of `r_values`.

    Raises:
        ~blockfusion.exceptions.SpecError: Empty `r_values`, a missing or
            invalid mode argument, or an R the mode can't accommodate.
    """
    r_values = list(r_values)
    if not r_values:
        raise SpecError('r_values is empty')
    if mode == 'fixed_core_size':
        if core_dim is None:
            raise SpecError('fixed_core_size sweeps need core_dim')
        dims = [fixed_core_block_dim(core_dim, R) for R in r_values]
        unspent = [None] * len(r_values)
    elif mode == 'fixed_param_budget':
        if budget is None:
            raise SpecError('fixed_param_budget sweeps need budget')
        dims = [fixed_budget_block_dim(budget, R) for R in r_values]
        unspent = [budget - R * L ** 3 for R, L in zip(r_values, dims)]
    else:
        raise SpecError('unknown sweep mode {!r}; expected one of {}'.format(
            mode, ', '.join(SWEEP_MODES)))

    if split_seeds is None:
        split_seeds = [base.data_seed + i for i in range(splits)]
    split_seeds = list(split_seeds)
    if not split_seeds:
        raise SpecError('a sweep needs at least one split')

    dataset = generate_task(base)
    students = [FusionSpec.block(base.input_dims, base.output_dim, (L, L, L), R)
                for R, L in zip(r_values, dims)]
    jobs = [(spec, dataset, seed, config) for spec in students for seed in split_seeds]

    logger.debug('Sweeping {mode} over R={r_values} with {jobs} runs',
                 mode=mode, r_values=r_values, jobs=len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            runs = list(executor.map(_train_split, jobs))
    else:
        runs = [_train_split(job) for job in jobs]

    points = []
    per_r = len(split_seeds)
    for i, (R, L) in enumerate(zip(r_values, dims)):
        records = runs[i * per_r:(i + 1) * per_r]
        for record in records:
            record.unspent_budget = unspent[i]
        point = SweepPoint(R, L, records, unspent_budget=unspent[i])
        logger.debug('R={R}, L={L}: metric {mean:.6g} ± {std:.3g}',
                     R=R, L=L, mean=point.metric_mean, std=point.metric_std)
        points.append(point)
    return points
