#!/usr/bin/env python3
"""
circuit_models/__init__.py
Calendarios de puertas y ejecución de ensayos para todos los circuitos del laboratorio
"""

from .config import ModelConfig
from .encoding import BRANCHES, InvalidBranchError, encode_logical, initial_state, logical_zero_state
from .record import GateCode, MeasurementRecord, StepRecord, TrialEvent, TrialOutput
from .trial import DimensionMismatchError, apply_event, layer_schedule, replay_record, run_trial

__all__ = [
    'ModelConfig',
    'BRANCHES', 'InvalidBranchError', 'encode_logical', 'initial_state', 'logical_zero_state',
    'GateCode', 'MeasurementRecord', 'StepRecord', 'TrialEvent', 'TrialOutput',
    'DimensionMismatchError', 'apply_event', 'layer_schedule', 'replay_record', 'run_trial',
]
