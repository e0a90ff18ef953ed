# coding: utf-8
"""Package logger. Training logs epochs and early stops, sweeps log progress
per R and verification logs each suite and every failing instance.
"""
from __future__ import absolute_import, division, print_function

from logbook import Logger

logger = Logger('blockfusion')
logger.disabled = True
