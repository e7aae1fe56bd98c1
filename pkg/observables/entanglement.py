#!/usr/bin/env python3
"""
observables/entanglement.py
Información mutua entre regiones, razón cruzada y coeficiente crítico h_EE
"""

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from stabilizer_core import StabilizerState

# Coeficiente universal de (1/4)·I_{A,Ā} en el punto crítico coherente, en nats
H_EE = math.sqrt(3) * math.log(2) / (4 * math.pi)


def mutual_information(state: StabilizerState, A: Iterable[int], B: Iterable[int]) -> int:
    """I(A:B) = S_A + S_B − S_{A∪B} en bits; A y B deben ser disjuntas."""
    A, B = set(int(s) for s in A), set(int(s) for s in B)
    if A & B:
        raise ValueError("las regiones A y B se solapan")
    return state.mutual_information(sorted(A), sorted(B))


def chord_length(L: int, x) -> np.ndarray:
    """Distancia de cuerda (L/π)·sin(π x / L) en un anillo de L sitios."""
    return (L / np.pi) * np.sin(np.pi * np.asarray(x, dtype=float) / L)


def cross_ratio(L: int, x1: float, x2: float, x3: float, x4: float) -> float:
    """η = w12·w34 / (w13·w24) con w_ij = sin(π |x_i − x_j| / L), A = [x1, x2], B = [x3, x4]."""
    def w(a, b):
        return math.sin(math.pi * abs(a - b) / L)
    den = w(x1, x3) * w(x2, x4)
    if den == 0:
        raise ValueError("extremos degenerados: la razón cruzada no está definida")
    return w(x1, x2) * w(x3, x4) / den


def interval_mutual_information(state: StabilizerState, L: int, x: int, offset: int = 0) -> int:
    """I_{A,Ā} con A = [offset, offset + x) y Ā el resto de la cadena [offset, offset + L)."""
    if not 0 < x < L:
        raise ValueError(f"longitud de intervalo fuera de (0, {L}): {x}")
    A = [offset + k for k in range(x)]
    resto = [offset + k for k in range(x, L)]
    return state.mutual_information(A, resto)


def half_cut_mutual_information(state: StabilizerState, L: int, part: str = "system") -> int:
    """
    I entre las dos mitades de una cadena de L sitios. En la escalera, `part`
    elige la cadena del sistema (qubits 0..L−1) o la del baño (L..2L−1).
    """
    if part not in ("system", "bath"):
        raise ValueError(f"parte desconocida: {part!r}")
    offset = 0 if part == "system" else L
    if offset + L > state.n:
        raise ValueError(f"el estado no tiene cadena '{part}' de {L} qubits")
    return interval_mutual_information(state, L, L // 2, offset)


@dataclass(frozen=True)
class EntanglementFit:
    slope: float
    intercept: float
    stderr: float
    rvalue: float

    def relative_error(self, expected: float = H_EE) -> float:
        return abs(self.slope - expected) / expected


def fit_entanglement_coefficient(L: int, xs: Sequence[int], mean_mi_bits: Sequence[float]) -> EntanglementFit:
    """
    Ajuste lineal de (1/4)·I_{A,Ā} (pasada a nats) frente a ln(cuerda(x)).
    La pendiente se compara con H_EE.
    """
    xs = np.asarray(xs, dtype=float)
    y = 0.25 * math.log(2) * np.asarray(mean_mi_bits, dtype=float)
    if xs.size < 3:
        raise ValueError("se necesitan al menos tres longitudes para el ajuste")
    res = stats.linregress(np.log(chord_length(L, xs)), y)
    return EntanglementFit(slope=float(res.slope), intercept=float(res.intercept),
                           stderr=float(res.stderr), rvalue=float(res.rvalue))
