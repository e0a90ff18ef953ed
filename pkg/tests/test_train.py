# coding: utf-8
from __future__ import absolute_import, division, print_function

import numpy as np
import pytest
from blockfusion import (
    SCHEMES, AdamState, Dataset, FusionSpec, InvalidTargetError, SpecError, Split,
    SyntheticTaskSpec, TrainConfig, TrainingDivergedError, adam_step,
    finite_diff_grad, fixed_budget_block_dim, fixed_core_block_dim, fuse_forward,
    generate_task, init_params, loss_and_grad, resplit, sweep_blocks, train_model)
from blockfusion.verify import random_spec


@pytest.fixture
def teacher():
    return FusionSpec.block((4, 4), 2, (2, 2, 2), 2)


@pytest.fixture
def task(teacher):
    return SyntheticTaskSpec(teacher, n_train=60, n_val=20, n_test=20, data_seed=3)


@pytest.fixture
def quick():
    return TrainConfig(learning_rate=1e-2, batch_size=20, max_epochs=3, patience=2)


def test_generate_task_noiseless(task):
    dataset = generate_task(task)
    params = init_params(task.teacher, task.teacher_seed)
    for split in (dataset.train, dataset.val, dataset.test):
        y, _ = fuse_forward(task.teacher, params, split.x1, split.x2)
        assert np.array_equal(split.target, y)
    assert (len(dataset.train), len(dataset.val), len(dataset.test)) == (60, 20, 20)


def test_generate_task_deterministic(task):
    assert generate_task(task) == generate_task(task)
    assert generate_task(task) != generate_task(task.replace(data_seed=4))


def test_generate_task_noise(task):
    clean = generate_task(task)
    noisy = generate_task(task.replace(noise_std=0.5))
    assert np.array_equal(clean.train.x1, noisy.train.x1)
    assert not np.array_equal(clean.train.target, noisy.train.target)


def test_classification_not_degenerate():
    teacher = FusionSpec.block((6, 6), 3, (2, 2, 2), 2)
    balanced = []
    for teacher_seed in range(5):
        spec = SyntheticTaskSpec(teacher, n_train=10000, n_val=10, n_test=10,
                                 teacher_seed=teacher_seed, task_kind='classification')
        target = generate_task(spec).train.target
        frequencies = np.bincount(target, minlength=3) / len(target)
        balanced.append(np.all((frequencies > 0.1) & (frequencies < 0.9)))
    assert any(balanced)


def test_multilabel_targets(task):
    dataset = generate_task(task.replace(task_kind='multilabel'))
    assert set(np.unique(dataset.train.target)) <= {0.0, 1.0}


def test_task_validation(teacher):
    with pytest.raises(SpecError):
        SyntheticTaskSpec(teacher, 10, 10, 10, task_kind='ranking')
    with pytest.raises(SpecError):
        SyntheticTaskSpec(teacher, 10, 10, 10, noise_std=-1)
    with pytest.raises(SpecError):
        SyntheticTaskSpec(teacher, 0, 10, 10)


def test_resplit(task):
    dataset = generate_task(task)
    shuffled = resplit(dataset, seed=0)
    assert len(shuffled.train) == len(dataset.train)
    assert len(shuffled.val) == len(dataset.val)
    assert shuffled.test == dataset.test
    before = np.sort(np.concatenate([dataset.train.target, dataset.val.target]), axis=0)
    after = np.sort(np.concatenate([shuffled.train.target, shuffled.val.target]), axis=0)
    assert np.array_equal(before, after)
    assert shuffled.seeds['split'] == 0
    assert resplit(dataset, seed=0) == shuffled


def test_train_config_validation():
    with pytest.raises(SpecError):
        TrainConfig(learning_rate=0)
    with pytest.raises(SpecError):
        TrainConfig(patience=0)
    with pytest.raises(SpecError):
        TrainConfig(loss='hinge')
    config = TrainConfig()
    assert (config.learning_rate, config.batch_size) == (1e-4, 200)
    assert config.betas == (0.9, 0.999) and config.epsilon == 1e-8


def test_adam_step_by_hand():
    config = TrainConfig(learning_rate=0.1)
    theta, state = adam_step(np.zeros(1), np.ones(1), AdamState.zeros(1), config)
    assert state.t == 1
    assert abs(theta[0] - (-0.1 / (1 + 1e-8))) < 1e-15
    assert abs(theta[0] + 0.0999999990) < 1e-10


def test_adam_step_zero_gradient():
    theta = np.array([1.5, -2.0])
    updated, _ = adam_step(theta, np.zeros(2), AdamState.zeros(2), TrainConfig())
    assert np.array_equal(updated, theta)


def test_adam_step_bounded():
    config = TrainConfig(learning_rate=0.01)
    g = np.random.default_rng(0).standard_normal(100) * 1e3
    theta, _ = adam_step(np.zeros(100), g, AdamState.zeros(100), config)
    assert np.all(np.abs(theta) <= config.learning_rate * (1 + 1e-12))


def test_loss_examples():
    loss, _ = loss_and_grad('cross_entropy', np.zeros(4), 2)
    assert np.isclose(loss, np.log(4))

    loss, dy = loss_and_grad('mse', [1.0, 2.0], [1.0, 2.0])
    assert loss == 0 and np.all(dy == 0)

    loss, dy = loss_and_grad('binary_cross_entropy', np.zeros(5), np.zeros(5))
    assert np.isclose(loss, np.log(2))
    assert np.allclose(dy, 0.5 / 5)


@pytest.mark.parametrize('kind', ['mse', 'cross_entropy', 'binary_cross_entropy'])
def test_loss_gradient(kind):
    rng = np.random.default_rng(1)
    y = rng.standard_normal((3, 4))
    if kind == 'cross_entropy':
        target = np.array([0, 3, 1])
    elif kind == 'binary_cross_entropy':
        target = (rng.random((3, 4)) > 0.5).astype(np.float64)
    else:
        target = rng.standard_normal((3, 4))
    _, dy = loss_and_grad(kind, y, target)
    numeric = finite_diff_grad(
        lambda flat: loss_and_grad(kind, flat.reshape(3, 4), target)[0], y.ravel())
    assert np.allclose(dy.ravel(), numeric, rtol=0, atol=1e-8)


def test_invalid_targets():
    with pytest.raises(InvalidTargetError):
        loss_and_grad('cross_entropy', np.zeros(4), 4)
    with pytest.raises(InvalidTargetError):
        loss_and_grad('cross_entropy', np.zeros(4), 1.5)
    with pytest.raises(InvalidTargetError):
        loss_and_grad('binary_cross_entropy', np.zeros(2), [0, 2])
    with pytest.raises(InvalidTargetError):
        loss_and_grad('mse', np.zeros(2), [0, 1, 2])


def test_train_deterministic(teacher, task, quick):
    dataset = generate_task(task)
    first = train_model(teacher, dataset, quick)
    second = train_model(teacher, dataset, quick)
    assert first.metrics() == second.metrics()
    assert len(first.epochs) == first.stopping_epoch
    assert first.seeds == {'model': 0, 'teacher': 0, 'data': 3}


def test_train_stops_on_plateau():
    teacher = FusionSpec.cp((3, 3), 1, 2)
    task = SyntheticTaskSpec(teacher, 40, 20, 20, task_kind='classification')
    config = TrainConfig(batch_size=20, max_epochs=10, patience=1)
    record = train_model(teacher, generate_task(task), config)
    assert record.stopping_epoch == 2
    assert record.best_epoch == 1
    assert record.test_metric == 1.0


def test_train_diverged(teacher, task, quick):
    dataset = generate_task(task)
    train = dataset.train
    broken = Dataset(Split(train.x1, train.x2, np.full(train.target.shape, np.inf)),
                     dataset.val, dataset.test, 'regression', dataset.input_dims,
                     dataset.output_dim, dataset.seeds)
    with pytest.raises(TrainingDivergedError) as excinfo:
        train_model(teacher, broken, quick)
    assert (excinfo.value.epoch, excinfo.value.batch) == (1, 1)
    assert 'epoch 1, batch 1' in str(excinfo.value)


def test_train_rejects_wrong_loss(teacher, task):
    with pytest.raises(SpecError):
        train_model(teacher, generate_task(task), TrainConfig(loss='cross_entropy'))


@pytest.mark.parametrize('scheme', SCHEMES)
def test_first_epoch_finite(scheme):
    spec = random_spec(scheme, np.random.default_rng(2), max_in=6)
    task = SyntheticTaskSpec(spec, 200, 50, 50)
    record = train_model(spec, generate_task(task), TrainConfig(max_epochs=1))
    assert np.isfinite(record.epochs[0].train_loss)


def test_teacher_fit_keeps_improving():
    teacher = FusionSpec.block((16, 16), 4, (2, 2, 2), 4)
    task = SyntheticTaskSpec(teacher, n_train=2000, n_val=500, n_test=500)
    dataset = generate_task(task)
    losses = []
    for seed in (1, 2, 3):
        config = TrainConfig(max_epochs=500, patience=500, seed=seed)
        record = train_model(teacher, dataset, config)
        assert record.final_train_loss < 0.25 * record.epochs[0].train_loss
        assert record.best_epoch > 450
        losses.append(record.final_train_loss)
    assert min(losses) < 2e-3


def test_block_dims():
    assert fixed_budget_block_dim(555000, 20) == 30
    assert fixed_budget_block_dim(8, 1) == 2
    assert fixed_core_block_dim(500, 20) == 25
    with pytest.raises(SpecError) as excinfo:
        fixed_core_block_dim(12, 5)
    assert 'R=5' in str(excinfo.value)
    with pytest.raises(SpecError):
        fixed_budget_block_dim(10, 20)


def test_sweep_fixed_core(task, quick):
    r_values = [1, 2, 3, 4, 6, 12]
    points = sweep_blocks('fixed_core_size', task, r_values, quick, core_dim=12)
    assert [p.R for p in points] == r_values
    assert [p.block_dim for p in points] == [12, 6, 4, 3, 2, 1]
    assert [p.core_param_count for p in points] == [1728, 432, 192, 108, 48, 12]
    assert all(len(p.runs) == 3 for p in points)

    again = sweep_blocks('fixed_core_size', task, r_values, quick, core_dim=12)
    for a, b in zip(points, again):
        assert [r.metrics() for r in a.runs] == [r.metrics() for r in b.runs]
        assert (a.metric_mean, a.metric_std) == (b.metric_mean, b.metric_std)


def test_sweep_single_r_matches_train_model(task, quick):
    (point,) = sweep_blocks('fixed_core_size', task, [2], quick, core_dim=4)
    dataset = generate_task(task)
    student = FusionSpec.block(task.input_dims, task.output_dim, (2, 2, 2), 2)
    expected = [train_model(student, resplit(dataset, task.data_seed + i), quick)
                for i in range(3)]
    assert [r.metrics() for r in point.runs] == [r.metrics() for r in expected]


def test_sweep_std_zero_for_shared_seeds(task, quick):
    (point,) = sweep_blocks('fixed_core_size', task, [1], quick, core_dim=2,
                            split_seeds=[7, 7, 7])
    assert point.metric_std == 0.0
    (point,) = sweep_blocks('fixed_core_size', task, [1], quick, core_dim=2, splits=1)
    assert point.metric_std == 0.0


def test_sweep_fixed_budget(task, quick):
    points = sweep_blocks('fixed_param_budget', task, [1, 2], quick, budget=20,
                          splits=1)
    assert [p.block_dim for p in points] == [2, 2]
    assert [p.unspent_budget for p in points] == [12, 4]
    assert points[0].runs[0].unspent_budget == 12


def test_sweep_errors(task, quick):
    with pytest.raises(SpecError):
        sweep_blocks('fixed_core_size', task, [], quick, core_dim=12)
    with pytest.raises(SpecError) as excinfo:
        sweep_blocks('fixed_core_size', task, [1, 5], quick, core_dim=12)
    assert 'R=5' in str(excinfo.value)
    with pytest.raises(SpecError):
        sweep_blocks('fixed_core_size', task, [1], quick)
    with pytest.raises(SpecError):
        sweep_blocks('nosuch', task, [1], quick, core_dim=12)


def test_sweep_parallel_matches_serial(task, quick):
    serial = sweep_blocks('fixed_core_size', task, [1, 2], quick, core_dim=2, splits=2)
    parallel = sweep_blocks('fixed_core_size', task, [1, 2], quick, core_dim=2,
                            splits=2, workers=2)
    for a, b in zip(serial, parallel):
        assert [r.metrics() for r in a.runs] == [r.metrics() for r in b.runs]
