# coding: utf-8
from __future__ import absolute_import, division, print_function

from .config import ExperimentConfig
from .exceptions import (
    BlockFusionError, ChunkIndexError, ConfigError, InvalidTargetError, ShapeError,
    SpecError, TapeMismatchError, TrainingDivergedError, UnsupportedSchemeError)
from .fusions import (
    composite_fuse, core_param_count, fuse_backward, fuse_forward, get_fusion,
    init_params, param_breakdown, param_count, reconstruct_full_tensor)
from .log import logger
from .oracle import bilinear_direct, finite_diff_grad, matrix_rank_bruteforce
from .params import FusionParams, ParamSlot
from .spec import BILINEAR_SCHEMES, SCHEMES, FusionSpec
from .tensor import (
    SketchPlan, as_tensor, assemble_block_superdiag, chunk, circular_convolve,
    circular_correlate, count_sketch, mode_n_product, outer3, refold, slice_core,
    splitmix64, unfold)
from .train import (
    AdamState, Dataset, EpochRecord, RunRecord, Split, SweepPoint,
    SyntheticTaskSpec, TrainConfig, adam_step, evaluate, fixed_budget_block_dim,
    fixed_core_block_dim, generate_task, loss_and_grad, resplit, sweep_blocks,
    train_model)

__author__ = 'Frazer McLean <frazer@frazermclean.co.uk>'
__version__ = '0.1.0'
__license__ = 'MIT'
__description__ = 'Block-term bilinear fusion operators with reference checks.'

__all__ = (
    'AdamState',
    'adam_step',
    'as_tensor',
    'assemble_block_superdiag',
    'BILINEAR_SCHEMES',
    'bilinear_direct',
    'BlockFusionError',
    'ChunkIndexError',
    'chunk',
    'circular_convolve',
    'circular_correlate',
    'composite_fuse',
    'ConfigError',
    'core_param_count',
    'count_sketch',
    'Dataset',
    'EpochRecord',
    'evaluate',
    'ExperimentConfig',
    'finite_diff_grad',
    'fixed_budget_block_dim',
    'fixed_core_block_dim',
    'fuse_backward',
    'fuse_forward',
    'FusionParams',
    'FusionSpec',
    'generate_task',
    'get_fusion',
    'init_params',
    'InvalidTargetError',
    'logger',
    'loss_and_grad',
    'matrix_rank_bruteforce',
    'mode_n_product',
    'outer3',
    'param_breakdown',
    'param_count',
    'ParamSlot',
    'reconstruct_full_tensor',
    'refold',
    'resplit',
    'RunRecord',
    'SCHEMES',
    'ShapeError',
    'SketchPlan',
    'slice_core',
    'SpecError',
    'Split',
    'splitmix64',
    'sweep_blocks',
    'SweepPoint',
    'SyntheticTaskSpec',
    'TapeMismatchError',
    'TrainConfig',
    'train_model',
    'TrainingDivergedError',
    'unfold',
    'UnsupportedSchemeError',
)
