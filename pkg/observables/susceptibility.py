#!/usr/bin/env python3
"""
observables/susceptibility.py
Susceptibilidades χ_SG y χ_PM por ensayo, por la vía del estado o de la red de enlaces
"""

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import stats

from percolation_map import QUASI_GHZ, SG, BondLattice, top_boundary_labels
from stabilizer_core import StabilizerState
from stabilizer_core.gf2 import pack_bits

from .regions import RegionSpec, interval_sites

logger = logging.getLogger(__name__)


def _check(state: StabilizerState, regions: RegionSpec) -> None:
    if regions.L > state.n:
        raise ValueError(f"regiones sobre {regions.L} sitios para un estado de {state.n} qubits")


def _count_stabilized(state: StabilizerState, x_bits: np.ndarray, z_bits: np.ndarray) -> int:
    dentro = state.contains_rows(pack_bits(x_bits), pack_bits(z_bits))
    return int(np.count_nonzero(dentro))


def chi_sg(state: StabilizerState, regions: RegionSpec) -> float:
    """(1/L)·Σ_{i∈A, j∈B} |⟨Z_i Z_j⟩|², con |⟨Z_i Z_j⟩|² ∈ {0, 1}."""
    _check(state, regions)
    pares = regions.pairs()
    filas = np.arange(len(pares))
    z = np.zeros((len(pares), state.n), dtype=bool)
    z[filas, pares[:, 0]] = True
    z[filas, pares[:, 1]] = True
    return _count_stabilized(state, np.zeros_like(z), z) / regions.L


def chi_pm(state: StabilizerState, regions: RegionSpec) -> float:
    """(1/L)·Σ_{i∈A, j∈B} |⟨X_i X_{i+1} ⋯ X_j⟩|² sobre la cadena contigua entre i y j."""
    _check(state, regions)
    pares = regions.pairs()
    x = np.zeros((len(pares), state.n), dtype=bool)
    for k, (i, j) in enumerate(pares):
        x[k, list(interval_sites(int(i), int(j)))] = True
    return _count_stabilized(state, x, np.zeros_like(x)) / regions.L


def chi_sg_from_lattice(lattice: BondLattice, regions: RegionSpec) -> float:
    """Z_iZ_j es estabilizador si i y j comparten cluster conectado en la última rebanada."""
    etiquetas = top_boundary_labels(lattice, SG)
    pares = regions.pairs()
    return int(np.count_nonzero(etiquetas[pares[:, 0]] == etiquetas[pares[:, 1]])) / regions.L


def chi_pm_from_lattice(lattice: BondLattice, regions: RegionSpec) -> float:
    """
    La cadena X sobre [i, j] es estabilizador si el intervalo es unión de las
    huellas superiores completas de clusters conectados o decorados.
    """
    etiquetas = top_boundary_labels(lattice, QUASI_GHZ)
    totales = np.bincount(etiquetas)
    cuenta = 0
    for i, j in regions.pairs():
        tramo = etiquetas[list(interval_sites(int(i), int(j)))]
        valores, veces = np.unique(tramo, return_counts=True)
        if np.array_equal(veces, totales[valores]):
            cuenta += 1
    return cuenta / regions.L


@dataclass(frozen=True)
class EnsembleEstimate:
    mean: float
    stderr: float
    n: int

    def agrees_with(self, other: "EnsembleEstimate", sigmas: float = 3.0) -> bool:
        """Compatibilidad de dos medias dentro de `sigmas` errores combinados."""
        return abs(self.mean - other.mean) <= sigmas * float(np.hypot(self.stderr, other.stderr))


def ensemble_estimate(values: Iterable[float]) -> EnsembleEstimate:
    """Media aritmética sobre ensayos y error estándar de la media."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError("no hay ensayos para promediar")
    stderr = float(stats.sem(arr)) if arr.size > 1 else 0.0
    return EnsembleEstimate(mean=float(arr.mean()), stderr=0.0 if np.isnan(stderr) else stderr, n=int(arr.size))
