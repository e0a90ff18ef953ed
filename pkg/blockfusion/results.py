# coding: utf-8
"""CSV tables of training runs and sweeps.

Floats are written with 17 significant digits so that reading a file back
gives the exact values.
"""
from __future__ import absolute_import, division, print_function

import pandas

FLOAT_FORMAT = '%.17g'

RUN_COLUMNS = ['epoch', 'train_loss', 'val_metric']
SWEEP_COLUMNS = ['R', 'L', 'param_count', 'metric_mean', 'metric_std', 'seconds']


def run_table(record):
    """One row per epoch, then a ``test`` row holding the kept parameters'
    training loss and test metric.
    """
    rows = [(e.epoch, e.train_loss, e.val_metric) for e in record.epochs]
    rows.append(('test', record.final_train_loss, record.test_metric))
    return pandas.DataFrame(rows, columns=RUN_COLUMNS)


def sweep_table(points):
    """One row per R; ``param_count`` is the core tensor's share."""
    rows = [(p.R, p.block_dim, p.core_param_count, p.metric_mean, p.metric_std,
             p.seconds) for p in points]
    return pandas.DataFrame(rows, columns=SWEEP_COLUMNS)


def write_csv(table, path):
    table.to_csv(path, index=False, float_format=FLOAT_FORMAT)
