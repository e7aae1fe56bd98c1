#!/usr/bin/env python3
"""
stabilizer_core/oracle.py
Oráculo denso (matriz densidad explícita) para validar el simulador con n ≤ 10
"""

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import null_space

from .clifford import CliffordGate
from .pauli import PauliOperator
from .state import StabilizerState

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    """Matriz 2^n × 2^n de p; el qubit 0 es el factor más significativo."""
    m = np.ones((1, 1), dtype=complex)
    for xb, zb in zip(p.x_bits(), p.z_bits()):
        local = _I2
        if xb and zb:
            local = _X @ _Z
        elif xb:
            local = _X
        elif zb:
            local = _Z
        m = np.kron(m, local)
    return (1j ** p.exponent) * m


@lru_cache(maxsize=4096)
def clifford_unitary(gate: CliffordGate) -> np.ndarray:
    """Unitario (salvo fase global) que realiza la tabla de conjugación de la puerta."""
    m = gate.n_qubits
    d = 2 ** m
    eye = np.eye(d, dtype=complex)
    bloques = []
    for s in range(m):
        for idx, local in ((2 * s, PauliOperator.from_sites(m, x_sites=[s])),
                           (2 * s + 1, PauliOperator.from_sites(m, z_sites=[s]))):
            p = pauli_matrix(local)
            q = pauli_matrix(gate.images[idx])
            # U P = Q U  con vec por filas: (I ⊗ Pᵀ − Q ⊗ I) vec(U) = 0
            bloques.append(np.kron(eye, p.T) - np.kron(q, eye))
    nucleo = null_space(np.vstack(bloques))
    u = nucleo[:, 0].reshape(d, d)
    return u * np.sqrt(d) / np.linalg.norm(u)


class DenseOracle:
    """Matriz densidad explícita; cada operación actualiza ρ in-place."""

    MAX_QUBITS = 10

    def __init__(self, rho: np.ndarray):
        d = rho.shape[0]
        n = int(round(np.log2(d)))
        if 2 ** n != d or n > self.MAX_QUBITS:
            raise ValueError(f"dimensión no soportada por el oráculo: {d}")
        self.n = n
        self.rho = np.array(rho, dtype=complex)

    @classmethod
    def from_state(cls, state: StabilizerState) -> "DenseOracle":
        if state.n > cls.MAX_QUBITS:
            raise ValueError(f"el oráculo denso admite como mucho {cls.MAX_QUBITS} qubits")
        d = 2 ** state.n
        rho = np.eye(d, dtype=complex)
        for g in state.generators():
            rho = rho @ (np.eye(d) + pauli_matrix(g)) / 2
        return cls(rho / 2 ** (state.n - state.k))

    def copy(self) -> "DenseOracle":
        return DenseOracle(self.rho.copy())

    def expectation(self, p: PauliOperator) -> float:
        return float(np.real(np.trace(self.rho @ pauli_matrix(p))))

    def measure(self, p: PauliOperator, outcome: int) -> float:
        """Proyecta sobre el autoespacio `outcome` de p y devuelve su probabilidad."""
        d = 2 ** self.n
        proyector = (np.eye(d) + outcome * pauli_matrix(p)) / 2
        nuevo = proyector @ self.rho @ proyector
        prob = float(np.real(np.trace(nuevo)))
        if prob > 1e-12:
            self.rho = nuevo / prob
        return prob

    def dephase(self, p: PauliOperator) -> None:
        pm = pauli_matrix(p)
        self.rho = (self.rho + pm @ self.rho @ pm.conj().T) / 2

    def apply_pauli(self, p: PauliOperator) -> None:
        pm = pauli_matrix(p)
        self.rho = pm @ self.rho @ pm.conj().T

    def apply_clifford(self, gate: CliffordGate, sites: Sequence[int]) -> None:
        self._apply_operator(clifford_unitary(gate), list(sites))

    def _apply_operator(self, op: np.ndarray, sites: list) -> None:
        n, m = self.n, len(sites)
        t = self.rho.reshape((2,) * (2 * n))
        opt = op.reshape((2,) * (2 * m))
        t = np.tensordot(opt, t, axes=(list(range(m, 2 * m)), sites))
        t = np.moveaxis(t, list(range(m)), sites)
        t = np.tensordot(t, np.conj(opt), axes=([n + s for s in sites], list(range(m, 2 * m))))
        t = np.moveaxis(t, list(range(2 * n - m, 2 * n)), [n + s for s in sites])
        self.rho = t.reshape(2 ** n, 2 ** n)

    def entropy(self, region: Iterable[int]) -> float:
        """Entropía de von Neumann (bits) de la reducción a `region`."""
        region = sorted(set(int(s) for s in region))
        if not region:
            return 0.0
        n = self.n
        resto = [s for s in range(n) if s not in region]
        t = self.rho.reshape((2,) * (2 * n))
        orden = region + resto + [n + s for s in region] + [n + s for s in resto]
        t = np.transpose(t, orden)
        da, db = 2 ** len(region), 2 ** len(resto)
        reducida = np.einsum("ijkj->ik", t.reshape(da, db, da, db))
        autovalores = np.linalg.eigvalsh(reducida)
        autovalores = autovalores[autovalores > 1e-12]
        return float(-np.sum(autovalores * np.log2(autovalores)))

    def trace_distance(self, other: "DenseOracle") -> float:
        return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(self.rho - other.rho))))
