#!/usr/bin/env python3
"""
percolation_map/lattice.py
Red de enlaces (d+1)-dimensional con tres especies y traducción desde registros de circuito

Nodos (s, τ) con τ = 0..T, índice τ·n + s. La fila t−1 de `temporal` guarda el
enlace vertical (s, t−1)–(s, t); la fila t−1 de `spatial` guarda los enlaces
horizontales de la rebanada τ = t en la dirección `spatial_axis[t−1]`
(−1 si el paso no tiene capa espacial).
"""

import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple

import numpy as np

from circuit_models.geometry import grid_bonds, ring_bonds
from circuit_models.record import GateCode, MeasurementRecord

logger = logging.getLogger(__name__)

NO_AXIS = -1


class BondSpecies(IntEnum):
    BROKEN = 0
    CONNECTED = 1
    DECORATED = 2


class MalformedRecordError(ValueError):
    """Registro incompleto o inconsistente."""


class RecordNotMappableError(ValueError):
    """El registro contiene puertas sin traducción a percolación (unitarios, código tórico)."""


@dataclass
class BondLattice:
    dims: Tuple[int, ...]
    T: int
    temporal: np.ndarray
    spatial_axis: np.ndarray
    spatial: np.ndarray
    outcomes: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) not in (1, 2):
            raise MalformedRecordError(f"dimensión espacial no soportada: {self.dims}")
        forma = (self.T, self.n_sites)
        self.temporal = np.asarray(self.temporal, dtype=np.int8)
        self.spatial = np.asarray(self.spatial, dtype=np.int8)
        self.outcomes = np.asarray(self.outcomes, dtype=np.int8)
        self.spatial_axis = np.asarray(self.spatial_axis, dtype=np.int8)
        if (self.temporal.shape != forma or self.spatial.shape != forma
                or self.outcomes.shape != forma or self.spatial_axis.shape != (self.T,)):
            raise MalformedRecordError(f"formas inconsistentes para dims={self.dims}, T={self.T}")
        conectado = self.spatial == BondSpecies.CONNECTED
        if np.any(self.outcomes[conectado] == 0) or np.any(self.outcomes[~conectado] != 0):
            raise MalformedRecordError("hay resultados fuera de los enlaces espaciales conectados")
        sin_capa = self.spatial_axis == NO_AXIS
        if np.any(self.spatial[sin_capa] != BondSpecies.BROKEN):
            raise MalformedRecordError("enlaces espaciales en un paso sin capa espacial")
        if np.any(self.spatial_axis >= len(self.dims)):
            raise MalformedRecordError("eje espacial fuera de rango")

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def n_sites(self) -> int:
        return int(np.prod(self.dims))

    @property
    def n_nodes(self) -> int:
        return (self.T + 1) * self.n_sites

    def node(self, s: int, tau: int) -> int:
        return tau * self.n_sites + s

    def bond_pairs(self, axis: int) -> np.ndarray:
        if self.d == 1:
            return ring_bonds(self.dims[0])
        return grid_bonds(self.dims[0], self.dims[1], axis)

    def seam_mask(self, axis: int) -> np.ndarray:
        """Enlaces espaciales que cruzan la frontera periódica del eje `axis`."""
        if self.d == 1:
            mask = np.zeros(self.dims[0], dtype=bool)
            mask[-1] = True
            return mask
        Lx, Ly = self.dims
        y, x = np.divmod(np.arange(Lx * Ly), Lx)
        return (x == Lx - 1) if axis == 0 else (y == Ly - 1)

    def bond_between(self, s1: int, s2: int, axis: int) -> Optional[int]:
        pares = self.bond_pairs(axis)
        if pares[s1, 1] == s2:
            return s1
        if pares[s2, 1] == s1:
            return s2
        return None

    @classmethod
    def empty(cls, dims, T: int, spatial_axis=None) -> "BondLattice":
        """Red sin puertas: verticales conectados y horizontales rotos."""
        n = int(np.prod(dims))
        ejes = np.full(T, NO_AXIS, dtype=np.int8) if spatial_axis is None else np.asarray(spatial_axis)
        return cls(dims=tuple(dims), T=T,
                   temporal=np.full((T, n), BondSpecies.CONNECTED, dtype=np.int8),
                   spatial_axis=ejes,
                   spatial=np.zeros((T, n), dtype=np.int8),
                   outcomes=np.zeros((T, n), dtype=np.int8))

    def copy(self) -> "BondLattice":
        return BondLattice(self.dims, self.T, self.temporal.copy(), self.spatial_axis.copy(),
                           self.spatial.copy(), self.outcomes.copy())

    def species_counts(self) -> dict:
        return {
            "temporal": {e.name: int(np.sum(self.temporal == e)) for e in BondSpecies},
            "spatial": {e.name: int(np.sum(self.spatial[self.spatial_axis != NO_AXIS] == e)) for e in BondSpecies},
        }


_SPATIAL_LAYERS = {"zz": 0, "zz_x": 0, "zz_y": 1}
_TEMPORAL_FROM_GATE = {
    GateCode.NONE: BondSpecies.CONNECTED,
    GateCode.MEASURE: BondSpecies.BROKEN,
    GateCode.DEPHASE: BondSpecies.DECORATED,
    GateCode.COUPLING: BondSpecies.DECORATED,
}
_SPATIAL_FROM_GATE = {
    GateCode.NONE: BondSpecies.BROKEN,
    GateCode.MEASURE: BondSpecies.CONNECTED,
    GateCode.DEPHASE: BondSpecies.DECORATED,
}


def _translate(gates: np.ndarray, tabla: dict, t: int) -> np.ndarray:
    salida = np.zeros(gates.shape, dtype=np.int8)
    vistos = np.zeros(gates.shape, dtype=bool)
    for codigo, especie in tabla.items():
        sel = gates == codigo
        salida[sel] = especie
        vistos |= sel
    if not vistos.all():
        codigo = GateCode(int(gates[~vistos][0]))
        raise RecordNotMappableError(f"puerta {codigo.name} en t={t} sin traducción a enlaces")
    return salida


def circuit_to_bonds(record: MeasurementRecord) -> BondLattice:
    """
    Traducción determinista de un registro a la red de enlaces.

    Medida ZZ → horizontal conectado (con su resultado); desfase ZZ → horizontal
    decorado; medida X → vertical roto; desfase X o acoplamiento al baño → vertical
    decorado; ranura vacía → vertical conectado. Las capas del baño no afectan
    a la red del sistema.
    """
    cfg = record.config
    if cfg.kind == "Toric2D":
        raise RecordNotMappableError("el código tórico no tiene traducción a percolación de enlaces")
    lattice = BondLattice.empty(cfg.dims, cfg.T)
    vistos = np.zeros(cfg.T, dtype=int)
    for paso in record.steps:
        if paso.layer in ("bath_u", "bath_z"):
            continue
        if not 1 <= paso.t <= cfg.T:
            raise MalformedRecordError(f"paso fuera de rango: t={paso.t}")
        fila = paso.t - 1
        vistos[fila] += 1
        if paso.gates.shape != (lattice.n_sites,):
            raise MalformedRecordError(f"capa {paso.layer} en t={paso.t} con {paso.gates.size} ranuras")
        if paso.layer in _SPATIAL_LAYERS:
            lattice.spatial_axis[fila] = _SPATIAL_LAYERS[paso.layer]
            lattice.spatial[fila] = _translate(paso.gates, _SPATIAL_FROM_GATE, paso.t)
            conectado = lattice.spatial[fila] == BondSpecies.CONNECTED
            if np.any(np.abs(paso.outcomes[conectado]) != 1):
                raise MalformedRecordError(f"medida sin resultado en t={paso.t}")
            lattice.outcomes[fila] = np.where(conectado, paso.outcomes, 0)
        elif paso.layer == "site":
            lattice.temporal[fila] = _translate(paso.gates, _TEMPORAL_FROM_GATE, paso.t)
        else:
            raise RecordNotMappableError(f"capa {paso.layer} sin traducción a enlaces")
    if np.any(vistos != 1):
        raise MalformedRecordError("el registro no cubre exactamente una capa del sistema por paso")
    lattice.__post_init__()
    return lattice
