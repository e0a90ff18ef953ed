# coding: utf-8
from __future__ import absolute_import, division, print_function

import sys
import textwrap
from unittest.mock import patch

import pandas
import pytest
from blockfusion import FusionSpec, param_count
from blockfusion.__main__ import format_count_row, main, parse_r_list
from blockfusion.fusions import BlockFusion

CONFIG = textwrap.dedent("""\
    [fusion]
    scheme = block
    input_dims = 4 4
    output_dim = 2
    block_dims = 2 2 2
    rank = 2

    [teacher]
    scheme = block
    input_dims = 4 4
    output_dim = 2
    block_dims = 2 2 2
    rank = 2

    [task]
    kind = regression
    n_train = 60
    n_val = 20
    n_test = 20
    data_seed = 3

    [train]
    learning_rate = 0.01
    batch_size = 20
    max_epochs = 3
    patience = 2

    [output]
    path = {path}
    """)


@pytest.fixture
def config(tmpdir):
    path = tmpdir.join('experiment.ini')
    path.write(CONFIG.format(path=tmpdir.join('out.csv')))
    return path


def run(argv, code=0):
    with patch.object(sys, 'argv', [''] + argv):
        with pytest.raises(SystemExit) as excinfo:
            main()
    assert excinfo.value.code == code


def test_verify(capsys):
    run(['verify', '--scheme', 'block', '--instances', '3'])
    out, _ = capsys.readouterr()
    lines = out.splitlines()
    assert len(lines) >= 5
    assert all(line.endswith('ok') for line in lines)
    assert lines[0].startswith('oracle-equivalence')


def test_verify_reports_failure(capsys):
    original = BlockFusion.backward

    def flipped(self, params, tape, dy):
        grads, dx1, dx2 = original(self, params, tape, dy)
        return grads, -dx1, dx2

    with patch.object(BlockFusion, 'backward', flipped):
        run(['verify', '--scheme', 'block', '--instances', '3'], code=1)
    out, err = capsys.readouterr()
    assert 'FAILED' in out
    assert 'gradient-check' in err
    assert 'block' in err


def test_verify_unknown_scheme(capsys):
    run(['verify', '--scheme', 'nosuch'], code=2)
    _, err = capsys.readouterr()
    assert 'nosuch' in err


def test_count(capsys):
    run(['count', '--scheme', 'tucker', '--in', '500', '500', '--out', '500',
         '--core', '500', '500', '500'])
    out, _ = capsys.readouterr()
    lines = out.splitlines()
    assert lines[-2] == format_count_row('core', 125000000)
    assert lines[0] == format_count_row('A', 250000, (500, 500))

    run(['count', '--scheme', 'cp', '--in', '4', '5', '--out', '6', '--rank', '10'])
    out, _ = capsys.readouterr()
    assert out.splitlines()[-2] == format_count_row('core', 10)
    assert out.splitlines()[-1] == format_count_row('total', 150)


@pytest.mark.parametrize('R', [1, 2, 4, 5, 10, 20, 50, 100, 250, 500])
def test_count_block_schedule(R, capsys):
    L = 500 // R
    run(['count', '--scheme', 'block', '--in', '500', '500', '--out', '500',
         '--core', str(L), str(L), str(L), '--rank', str(R)])
    out, _ = capsys.readouterr()
    lines = out.splitlines()
    assert lines[-2] == format_count_row('core', R * L ** 3)
    spec = FusionSpec.block((500, 500), 500, (L, L, L), R)
    assert lines[-1] == format_count_row('total', param_count(spec))


def test_count_errors(capsys):
    run(['count', '--scheme', 'cp', '--out', '6', '--rank', '10'], code=2)
    _, err = capsys.readouterr()
    assert '--in' in err

    run(['count', '--scheme', 'cp', '--in', '4', '5', '--out', '6'], code=2)
    _, err = capsys.readouterr()
    assert 'cp requires rank' in err


def test_train(config, tmpdir, capsys):
    run(['train', str(config)])
    out, _ = capsys.readouterr()
    assert 'block' in out

    path = tmpdir.join('out.csv')
    first = path.read_binary()
    assert first.splitlines()[0] == b'epoch,train_loss,val_metric'
    table = pandas.read_csv(str(path))
    assert list(table['epoch'])[-1] == 'test'

    run(['train', str(config)])
    assert path.read_binary() == first

    other = tmpdir.join('other.csv')
    run(['train', str(config), '--seed', '1', '--out', str(other)])
    assert other.read_binary() != first


def test_train_malformed_config(tmpdir, capsys):
    path = tmpdir.join('bad.ini')
    path.write('[fusion]\nscheme = block\nrank\n')
    run(['train', str(path)], code=2)
    _, err = capsys.readouterr()
    assert 'line 3' in err

    path.write('[fusion]\nscheme = cp\ninput_dims = 2 2\noutput_dim = 2\nrank = 2\n')
    run(['train', str(path)], code=2)
    _, err = capsys.readouterr()
    assert 'line 5, column 1: missing section [teacher]' in err


def test_train_missing_config(tmpdir, capsys):
    run(['train', str(tmpdir.join('nosuch.ini'))], code=2)


def test_sweep(config, tmpdir, capsys):
    out_path = tmpdir.join('sweep.csv')
    run(['sweep', str(config), '--r', '1,2,3,4,6,12', '--core-dim', '12',
         '--splits', '2', '--out', str(out_path)])
    out, _ = capsys.readouterr()
    assert len(out.splitlines()) == 6

    table = pandas.read_csv(str(out_path))
    assert list(table['R']) == [1, 2, 3, 4, 6, 12]
    assert list(table['L']) == [12, 6, 4, 3, 2, 1]
    assert list(table['param_count']) == [1728, 432, 192, 108, 48, 12]


def test_sweep_single_split(config, tmpdir, capsys):
    out_path = tmpdir.join('sweep.csv')
    run(['sweep', str(config), '--r', '1,2', '--core-dim', '4', '--splits', '1',
         '--out', str(out_path)])
    table = pandas.read_csv(str(out_path))
    assert list(table['metric_std']) == [0.0, 0.0]


def test_sweep_errors(config, capsys):
    run(['sweep', str(config), '--r', '1,5', '--core-dim', '12'], code=2)
    _, err = capsys.readouterr()
    assert 'R=5' in err

    run(['sweep', str(config), '--r', 'one', '--core-dim', '12'], code=2)
    _, err = capsys.readouterr()
    assert 'comma-separated' in err


def test_parse_r_list():
    assert parse_r_list(None, None, '1,2, 4') == [1, 2, 4]
    assert parse_r_list(None, None, None) is None
