#!/usr/bin/env python3
"""
decoders/__init__.py
Decodificadores (errores localizados, suma de caminos, MWPM, membranas) y verificación
"""

from .backbone import BackboneGraph, CheckLayer, perfect_layers_from_bits
from .located import decode_located, decode_located_history, located_sign
from .membrane import decode_membrane, membrane_sum_sign
from .mwpm import OddDefectCountError, build_matching, detection_events, mwpm_correction, mwpm_decode
from .path_sum import PathSumEngine, PathSumPrecisionError, PathSumValue, decode_path_sum, path_sum_sign
from .verdict import DecodeVerdict, QuantumContext, prepare_quantum
from .verification import RecoveryConditionError, RecoveryReport, verify_recovery_conditions

__all__ = [
    'BackboneGraph', 'CheckLayer', 'perfect_layers_from_bits',
    'decode_located', 'decode_located_history', 'located_sign',
    'decode_membrane', 'membrane_sum_sign',
    'OddDefectCountError', 'build_matching', 'detection_events', 'mwpm_correction', 'mwpm_decode',
    'PathSumEngine', 'PathSumPrecisionError', 'PathSumValue', 'decode_path_sum', 'path_sum_sign',
    'DecodeVerdict', 'QuantumContext', 'prepare_quantum',
    'RecoveryConditionError', 'RecoveryReport', 'verify_recovery_conditions',
]
