# coding: utf-8
from __future__ import absolute_import, division, print_function

import textwrap

import pytest
from blockfusion import ConfigError, ExperimentConfig, FusionSpec, TrainConfig

CONFIG = textwrap.dedent("""\
    [fusion]
    scheme = block
    input_dims = 4 4
    output_dim = 2
    block_dims = 2 2 2
    rank = 2

    [teacher]
    scheme = cp
    input_dims = 4 4
    output_dim = 2
    rank = 3

    [task]
    kind = regression
    noise_std = 0.1
    n_train = 60
    n_val = 20
    n_test = 20
    data_seed = 5

    [train]
    learning_rate = 0.01
    batch_size = 20
    max_epochs = 3

    [output]
    path = run.csv
    """)

COMPOSITE = textwrap.dedent("""\
    [fusion]
    scheme = composite
    output_dim = 2
    branches = 2

    [fusion.0]
    scheme = mcb
    input_dims = 2 3
    output_dim = 2
    sketch_dim = 4
    seed = 9

    [fusion.1]
    scheme = tucker
    input_dims = 2 1
    output_dim = 3
    block_dims = 2 1 2
    slice_rank = 1

    [teacher]
    scheme = linear_sum
    input_dims = 4 4
    output_dim = 2
    hidden = 3

    [task]
    kind = multilabel
    n_train = 10
    n_val = 10
    n_test = 10

    [output]
    path = out.csv
    """)


def test_loads():
    config = ExperimentConfig.loads(CONFIG)
    assert config.fusion == FusionSpec.block((4, 4), 2, (2, 2, 2), 2)
    assert config.task.teacher == FusionSpec.cp((4, 4), 2, 3)
    assert config.task.noise_std == 0.1
    assert config.task.data_seed == 5
    assert config.train == TrainConfig(learning_rate=0.01, batch_size=20, max_epochs=3)
    assert config.output_path == 'run.csv'


def test_loads_composite():
    config = ExperimentConfig.loads(COMPOSITE)
    assert config.fusion.scheme == 'composite'
    assert config.fusion.input_dims == (4, 4)
    assert [c.scheme for c in config.fusion.children] == ['mcb', 'tucker']
    assert config.fusion.children[0].seed == 9
    assert config.task.task_kind == 'multilabel'


@pytest.mark.parametrize('text', [CONFIG, COMPOSITE])
def test_round_trip(text):
    config = ExperimentConfig.loads(text)
    dumped = config.dumps()
    assert ExperimentConfig.loads(dumped) == config
    assert ExperimentConfig.loads(dumped).dumps() == dumped


def test_load(tmpdir):
    path = tmpdir.join('experiment.ini')
    path.write(CONFIG)
    assert ExperimentConfig.load(str(path)) == ExperimentConfig.loads(CONFIG)


def error_for(text):
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.loads(text)
    return excinfo.value


def test_syntax_error_position():
    error = error_for(CONFIG.replace('rank = 2\n', 'rank 2\n', 1))
    assert error.lineno == 6
    assert str(error).startswith('line 6, column 1:')


def test_unknown_key():
    error = error_for(CONFIG.replace('max_epochs = 3', 'max_epochs = 3\nmomentum = 0.9'))
    assert 'momentum' in str(error)
    assert (error.lineno, error.colno) == (26, 1)


def test_unknown_section():
    error = error_for(CONFIG + '\n[extra]\nkey = 1\n')
    assert 'extra' in str(error)
    assert error.lineno == 30


def test_bad_value():
    error = error_for(CONFIG.replace('n_val = 20', 'n_val = twenty'))
    assert 'n_val' in str(error)
    assert (error.lineno, error.colno) == (18, 9)

    error = error_for(CONFIG.replace('input_dims = 4 4\noutput_dim = 2\nblock_dims',
                                     'input_dims = 4\noutput_dim = 2\nblock_dims'))
    assert 'input_dims' in str(error)


def test_missing_key():
    error = error_for(CONFIG.replace('n_test = 20\n', ''))
    assert 'n_test' in str(error)
    assert error.lineno == 14

    error = error_for(CONFIG.replace('path = run.csv\n', ''))
    assert 'path' in str(error)


def test_missing_section():
    error = error_for(CONFIG.replace('\n[output]\npath = run.csv\n', ''))
    assert '[output]' in str(error)
    assert (error.lineno, error.colno) == (25, 1)
    assert str(error).startswith('line 25, column 1:')

    teacher = '[teacher]\nscheme = cp\ninput_dims = 4 4\noutput_dim = 2\nrank = 3\n\n'
    error = error_for(CONFIG.replace(teacher, ''))
    assert '[teacher]' in str(error)
    assert error.lineno == 22


def test_invalid_spec():
    error = error_for(CONFIG.replace('rank = 2', 'rank = 2\nhidden = 4', 1))
    assert 'block does not take hidden' in str(error)
    assert error.lineno == 1


def test_dimension_mismatch():
    error = error_for(CONFIG.replace('input_dims = 4 4\noutput_dim = 2\nrank = 3',
                                     'input_dims = 4 5\noutput_dim = 2\nrank = 3'))
    assert 'differ in dimensions' in str(error)
    assert error.lineno == 1


def test_orphan_branch_section():
    error = error_for(CONFIG + '\n[fusion.0]\nscheme = cp\n')
    assert 'fusion.0' in str(error)
