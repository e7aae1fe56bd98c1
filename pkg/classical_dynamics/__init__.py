#!/usr/bin/env python3
"""
classical_dynamics/__init__.py
Muestreo clásico rápido de historiales de síndromes para los decodificadores
"""

from .fixtures import dumps_history, load_history, loads_history, save_history
from .history import ClassicalHistory, sample_from_config, sample_history, sample_toric_history

__all__ = [
    'dumps_history', 'load_history', 'loads_history', 'save_history',
    'ClassicalHistory', 'sample_from_config', 'sample_history', 'sample_toric_history',
]
