#!/usr/bin/env python3
"""
stabilizer_core/__init__.py
Formalismo de estabilizadores mixtos: Cliffords, medidas de Pauli, desfase y entropías
"""

from .clifford import (CNOT, CZ, HADAMARD, PHASE, SWAP, CliffordGate, NonSymplecticGateError,
                       all_cliffords, random_clifford, rung_couplings, z2_symmetric_cliffords)
from .pauli import NonHermitianPauliError, PauliOperator, SiteOutOfRangeError, global_x, pauli_x, pauli_z
from .state import (MeasurementResult, StabilizerInvariantError, StabilizerState, apply_clifford,
                    apply_dephasing, entanglement_entropy, measure_pauli, mutual_information,
                    stabilizer_contains)

__all__ = [
    'CNOT', 'CZ', 'HADAMARD', 'PHASE', 'SWAP',
    'CliffordGate', 'NonSymplecticGateError', 'all_cliffords', 'random_clifford',
    'rung_couplings', 'z2_symmetric_cliffords',
    'NonHermitianPauliError', 'PauliOperator', 'SiteOutOfRangeError', 'global_x', 'pauli_x', 'pauli_z',
    'MeasurementResult', 'StabilizerInvariantError', 'StabilizerState',
    'apply_clifford', 'apply_dephasing', 'entanglement_entropy', 'measure_pauli',
    'mutual_information', 'stabilizer_contains',
]
