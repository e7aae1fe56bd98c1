#!/usr/bin/env python3
"""
circuit_models/record.py
Registro de un ensayo: capas del calendario, códigos de puerta y resultados
"""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, List, Optional, Tuple

import numpy as np

from stabilizer_core import StabilizerState

from .config import ModelConfig

LAYER_NAMES = ("zz", "zz_x", "zz_y", "plaquette", "star", "site", "bath_u", "bath_z")
CHECK_LAYERS = ("zz", "zz_x", "zz_y", "plaquette", "star")


class GateCode(IntEnum):
    NONE = 0
    MEASURE = 1
    DEPHASE = 2
    UNITARY = 3
    COUPLING = 4


@dataclass
class StepRecord:
    """Una capa del calendario: una ranura por enlace, plaqueta o sitio."""

    t: int
    layer: str
    gates: np.ndarray
    outcomes: np.ndarray
    readout_flips: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.layer not in LAYER_NAMES:
            raise ValueError(f"capa desconocida: {self.layer}")
        self.gates = np.asarray(self.gates, dtype=np.int8)
        self.outcomes = np.asarray(self.outcomes, dtype=np.int8)
        if self.gates.shape != self.outcomes.shape:
            raise ValueError("gates y outcomes deben tener la misma forma")

    @property
    def is_check(self) -> bool:
        return self.layer in CHECK_LAYERS

    @property
    def measured(self) -> np.ndarray:
        return self.gates == GateCode.MEASURE


@dataclass(frozen=True)
class TrialEvent:
    """Operación elemental aplicada durante el ensayo, para reproducirlo."""

    t: int
    kind: str          # "measure" | "dephase" | "clifford"
    operator: Any      # PauliOperator o CliffordGate
    sites: Tuple[int, ...] = ()
    outcome: int = 0   # resultado físico (sin error de lectura)


@dataclass
class MeasurementRecord:
    config: ModelConfig
    steps: List[StepRecord] = field(default_factory=list)
    events: Optional[List[TrialEvent]] = None

    @property
    def T(self) -> int:
        return self.config.T

    def layers(self, name: str) -> List[StepRecord]:
        return [s for s in self.steps if s.layer == name]

    def step(self, t: int, layer: Optional[str] = None) -> StepRecord:
        for s in self.steps:
            if s.t == t and (layer is None or s.layer == layer):
                return s
        raise KeyError(f"no hay capa {layer or ''} en t={t}")


@dataclass
class TrialOutput:
    final_state: StabilizerState
    record: MeasurementRecord
    error_locations: List[Tuple[int, int, str]]
    initial_state: StabilizerState
    config: ModelConfig
