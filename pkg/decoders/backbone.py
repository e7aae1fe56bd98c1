#!/usr/bin/env python3
"""
decoders/backbone.py
Subgrafo "backbone": lo que ve el decodificador de un historial de síndromes

Solo se conocen los chequeos medidos y sus resultados; todos los enlaces
temporales se suponen conectados y se recorren en un único sentido.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from circuit_models.geometry import grid_bonds, plaquettes, ring_bonds
from circuit_models.record import GateCode, MeasurementRecord
from percolation_map import NO_AXIS, BondLattice, BondSpecies

# Familias de chequeos de tipo Z que entran en el backbone
Z_FAMILIES = ("zz", "zz_x", "zz_y", "plaquette")


def code_of(kind: str) -> str:
    return "toric" if kind == "Toric2D" else "repetition"


def final_families(code: str, dims: Tuple[int, ...]) -> List[str]:
    """Familias que la capa final perfecta mide, en orden."""
    if code == "toric":
        return ["plaquette"]
    return ["zz"] if len(dims) == 1 else ["zz_x", "zz_y"]


def check_supports(code: str, dims: Tuple[int, ...], family: str) -> np.ndarray:
    """Qubits de cada chequeo de la familia: (n_checks, 2) o (L², 4) en el toro."""
    if family == "plaquette":
        return plaquettes(dims[0])
    if family == "zz":
        return ring_bonds(dims[0])
    if family in ("zz_x", "zz_y"):
        return grid_bonds(dims[0], dims[1], 0 if family == "zz_x" else 1)
    raise ValueError(f"familia de chequeo desconocida para {code}: {family}")


@dataclass
class CheckLayer:
    t: int
    family: str
    measured: np.ndarray
    outcomes: np.ndarray

    def __post_init__(self):
        self.measured = np.asarray(self.measured, dtype=bool)
        self.outcomes = np.asarray(self.outcomes, dtype=np.int8)
        if self.measured.shape != self.outcomes.shape:
            raise ValueError("medidas y resultados con formas distintas")
        if np.any(np.abs(self.outcomes[self.measured]) != 1) or np.any(self.outcomes[~self.measured] != 0):
            raise ValueError(f"capa t={self.t}: resultados ±1 solo en chequeos medidos")

    @property
    def syndrome(self) -> np.ndarray:
        """1 donde el chequeo dio −1; los no medidos cuentan como +1."""
        return (self.outcomes == -1).astype(np.uint8)

    @classmethod
    def perfect(cls, t: int, family: str, outcomes) -> "CheckLayer":
        outcomes = np.asarray(outcomes, dtype=np.int8)
        return cls(t, family, np.ones(outcomes.shape, dtype=bool), outcomes)


@dataclass
class BackboneGraph:
    code: str
    dims: Tuple[int, ...]
    T: int
    layers: List[CheckLayer] = field(default_factory=list)
    directed: bool = True

    @property
    def n_sites(self) -> int:
        """Qubits de datos (sitios del anillo/red o aristas del toro)."""
        if self.code == "toric":
            return 2 * self.dims[0] ** 2
        return int(np.prod(self.dims))

    @property
    def n_checks(self) -> int:
        return self.dims[0] ** 2 if self.code == "toric" else int(np.prod(self.dims))

    @property
    def bulk_layers(self) -> List[CheckLayer]:
        return [c for c in self.layers if c.t <= self.T]

    @property
    def final_layers(self) -> List[CheckLayer]:
        return [c for c in self.layers if c.t > self.T]

    def supports(self, family: str) -> np.ndarray:
        return check_supports(self.code, self.dims, family)

    def with_final_layers(self, finales: Iterable[CheckLayer]) -> "BackboneGraph":
        return BackboneGraph(self.code, self.dims, self.T, self.bulk_layers + list(finales), self.directed)

    @classmethod
    def from_lattice(cls, lattice: BondLattice, final_layers: Sequence[CheckLayer] = ()) -> "BackboneGraph":
        """Backbone de una red de enlaces: cada capa espacial es una capa de chequeos ZZ."""
        capas = []
        for fila in np.flatnonzero(lattice.spatial_axis != NO_AXIS):
            eje = int(lattice.spatial_axis[fila])
            familia = "zz" if lattice.d == 1 else ("zz_x" if eje == 0 else "zz_y")
            medido = lattice.spatial[fila] == BondSpecies.CONNECTED
            capas.append(CheckLayer(int(fila) + 1, familia, medido, lattice.outcomes[fila]))
        return cls("repetition", lattice.dims, lattice.T, capas + list(final_layers))

    @classmethod
    def from_record(cls, record: MeasurementRecord, final_layers: Sequence[CheckLayer] = ()) -> "BackboneGraph":
        """Backbone de un registro de circuito (chequeos de tipo Z con sus lecturas)."""
        cfg = record.config
        capas = []
        for paso in record.steps:
            if paso.layer not in Z_FAMILIES:
                continue
            medido = paso.gates == GateCode.MEASURE
            capas.append(CheckLayer(paso.t, paso.layer, medido, np.where(medido, paso.outcomes, 0)))
        return cls(code_of(cfg.kind), cfg.dims, cfg.T, capas + list(final_layers))

    def measured_fraction(self) -> float:
        bulk = self.bulk_layers
        if not bulk:
            return 0.0
        return float(np.mean([c.measured.mean() for c in bulk]))


def perfect_layers_from_bits(code: str, dims: Tuple[int, ...], bits: np.ndarray, t0: int) -> List[CheckLayer]:
    """Capas finales perfectas calculadas desde los bits clásicos."""
    capas = []
    for k, familia in enumerate(final_families(code, dims)):
        soportes = check_supports(code, dims, familia)
        paridad = np.bitwise_xor.reduce(np.asarray(bits, dtype=np.uint8)[soportes], axis=1)
        capas.append(CheckLayer.perfect(t0 + k, familia, np.where(paridad, -1, 1)))
    return capas
