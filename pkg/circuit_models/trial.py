#!/usr/bin/env python3
"""
circuit_models/trial.py
Ejecución de un ensayo: calendario de capas, sorteo de puertas y registro

Cada capa sortea un único vector uniforme por ranura (y, si hay lectura
defectuosa, un vector de errores de lectura); la elección de Cliffords y los
resultados de Born consumen después el mismo generador en orden de ranura.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from stabilizer_core import PauliOperator, StabilizerState, random_clifford

from .config import ModelConfig
from .geometry import grid_bonds, plaquettes, ring_bonds, stars
from .record import GateCode, MeasurementRecord, StepRecord, TrialEvent, TrialOutput

logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    """El estado inicial no tiene el número de qubits del modelo."""


def layer_schedule(config: ModelConfig, t: int) -> List[str]:
    """Capas que se ejecutan en el paso t (t = 1..T)."""
    kind = config.kind
    if kind == "Repetition2D":
        capas = {1: ["zz_x"], 2: ["site"], 3: ["zz_y"], 0: ["site"]}[t % 4]
    elif kind == "Toric2D":
        if config.p_star_m > 0:
            capas = {1: ["plaquette"], 2: ["site"], 3: ["star"], 0: ["site"]}[t % 4]
        else:
            capas = ["plaquette"] if t % 2 else ["site"]
    else:
        capas = ["zz"] if t % 2 else ["site"]
    if kind == "Ladder":
        capas = capas + ["bath_u", "bath_z"]
    return capas


class _TrialRunner:
    """Estado mutable de un ensayo en curso."""

    def __init__(self, config: ModelConfig, state: StabilizerState, rng: np.random.Generator,
                 record_events: bool):
        self.config = config
        self.state = state
        self.rng = rng
        self.n = state.n
        self.record = MeasurementRecord(config=config, events=[] if record_events else None)
        self.errors: List[tuple] = []

    # ------------------------------------------------------------------
    # Operaciones registradas
    # ------------------------------------------------------------------
    def _measure(self, t: int, p: PauliOperator, sites: Sequence[int]) -> int:
        resultado = self.state.measure(p, self.rng)
        if self.record.events is not None:
            self.record.events.append(TrialEvent(t, "measure", p, tuple(sites), resultado.outcome))
        return resultado.outcome

    def _dephase(self, t: int, p: PauliOperator, sites: Sequence[int]) -> None:
        self.state.dephase(p)
        if self.record.events is not None:
            self.record.events.append(TrialEvent(t, "dephase", p, tuple(sites)))

    def _clifford(self, t: int, gate, sites: Sequence[int]) -> None:
        self.state.apply_clifford(gate, sites)
        if self.record.events is not None:
            self.record.events.append(TrialEvent(t, "clifford", gate, tuple(int(s) for s in sites)))

    # ------------------------------------------------------------------
    # Capas
    # ------------------------------------------------------------------
    def _check_supports(self, layer: str) -> tuple:
        cfg = self.config
        if layer == "zz":
            return ring_bonds(cfg.L), "Z", cfg.p_zz_m, cfg.p_zz_e, cfg.p_u
        if layer in ("zz_x", "zz_y"):
            eje = 0 if layer == "zz_x" else 1
            return grid_bonds(cfg.L, cfg.Ly, eje), "Z", cfg.p_zz_m, cfg.p_zz_e, 0.0
        if layer == "plaquette":
            return plaquettes(cfg.L), "Z", cfg.p_plaq_m, 0.0, 0.0
        if layer == "star":
            return stars(cfg.L), "X", cfg.p_star_m, 0.0, 0.0
        raise ValueError(f"capa de chequeo desconocida: {layer}")

    def check_layer(self, t: int, layer: str) -> None:
        soportes, base, p_m, p_e, p_u = self._check_supports(layer)
        n_slots = len(soportes)
        u = self.rng.random(n_slots)
        error_lectura = self.config.readout_error
        flips = self.rng.random(n_slots) < error_lectura if error_lectura > 0 else np.zeros(n_slots, dtype=bool)
        gates = np.zeros(n_slots, dtype=np.int8)
        outcomes = np.zeros(n_slots, dtype=np.int8)
        for b, soporte in enumerate(soportes):
            sitios = [int(s) for s in soporte]
            if u[b] < p_u:
                self._clifford(t, random_clifford(2, self.rng, family="z2"), sitios)
                gates[b] = GateCode.UNITARY
            elif u[b] < p_u + p_m:
                p = (PauliOperator.from_sites(self.n, z_sites=sitios) if base == "Z"
                     else PauliOperator.from_sites(self.n, x_sites=sitios))
                outcome = self._measure(t, p, sitios)
                outcomes[b] = -outcome if flips[b] else outcome
                gates[b] = GateCode.MEASURE
            elif u[b] < p_u + p_m + p_e:
                self._dephase(t, PauliOperator.from_sites(self.n, z_sites=sitios), sitios)
                gates[b] = GateCode.DEPHASE
                self.errors.append((b, t, "zz_dephase"))
        flips &= gates == GateCode.MEASURE
        self.record.steps.append(StepRecord(t, layer, gates, outcomes, flips if error_lectura > 0 else None))

    def site_layer(self, t: int) -> None:
        cfg = self.config
        n_slots = cfg.n_system
        L = cfg.L
        u = self.rng.random(n_slots)
        gates = np.zeros(n_slots, dtype=np.int8)
        outcomes = np.zeros(n_slots, dtype=np.int8)
        c_u = cfg.p_u
        c_m = c_u + cfg.p_x_m
        c_e = c_m + cfg.p_x_e
        c_i = c_e + cfg.p_x_i
        for j in range(n_slots):
            if u[j] < c_u:
                self._clifford(t, random_clifford(1, self.rng, family="z2"), [j])
                gates[j] = GateCode.UNITARY
            elif u[j] < c_m:
                outcomes[j] = self._measure(t, PauliOperator.from_sites(self.n, x_sites=[j]), [j])
                gates[j] = GateCode.MEASURE
                self.errors.append((j, t, "x_measure"))
            elif u[j] < c_e:
                self._dephase(t, PauliOperator.from_sites(self.n, x_sites=[j]), [j])
                gates[j] = GateCode.DEPHASE
                self.errors.append((j, t, "x_dephase"))
            elif u[j] < c_i:
                self._clifford(t, random_clifford(2, self.rng, family="rung"), [j, L + j])
                gates[j] = GateCode.COUPLING
                self.errors.append((j, t, "coupling"))
        self.record.steps.append(StepRecord(t, "site", gates, outcomes))

    def bath_unitary_layer(self, t: int) -> None:
        L = self.config.L
        gates = np.zeros(L, dtype=np.int8)
        for j in range(t % 2, L, 2):
            self._clifford(t, random_clifford(2, self.rng), [L + j, L + (j + 1) % L])
            gates[j] = GateCode.UNITARY
        self.record.steps.append(StepRecord(t, "bath_u", gates, np.zeros(L, dtype=np.int8)))

    def bath_measure_layer(self, t: int) -> None:
        L = self.config.L
        u = self.rng.random(L)
        gates = np.zeros(L, dtype=np.int8)
        outcomes = np.zeros(L, dtype=np.int8)
        for j in np.flatnonzero(u < self.config.p_bath_m):
            j = int(j)
            outcomes[j] = self._measure(t, PauliOperator.from_sites(self.n, z_sites=[L + j]), [L + j])
            gates[j] = GateCode.MEASURE
        self.record.steps.append(StepRecord(t, "bath_z", gates, outcomes))

    def run(self) -> None:
        for t in range(1, self.config.T + 1):
            for capa in layer_schedule(self.config, t):
                if capa == "site":
                    self.site_layer(t)
                elif capa == "bath_u":
                    self.bath_unitary_layer(t)
                elif capa == "bath_z":
                    self.bath_measure_layer(t)
                else:
                    self.check_layer(t, capa)


def run_trial(config: ModelConfig, initial: StabilizerState, rng: np.random.Generator,
              record_events: bool = False) -> TrialOutput:
    """
    Ejecuta T pasos del calendario del modelo sobre una copia de `initial`.

    Returns:
        TrialOutput con el estado final (antes de cualquier lectura terminal),
        el registro completo y la lista de errores localizados (sitio, t, tipo).
    """
    if initial.n != config.n_qubits:
        raise DimensionMismatchError(
            f"el modelo {config.kind} necesita {config.n_qubits} qubits, el estado tiene {initial.n}"
        )
    runner = _TrialRunner(config, initial.copy(), rng, record_events)
    runner.run()
    logger.debug(f"✅ Ensayo {config.kind} L={config.L} T={config.T}: k={runner.state.k}, "
                 f"{len(runner.errors)} errores")
    return TrialOutput(final_state=runner.state, record=runner.record, error_locations=runner.errors,
                       initial_state=initial.copy(), config=config)


def replay_record(record: MeasurementRecord, initial: StabilizerState,
                  until: Optional[int] = None) -> StabilizerState:
    """
    Reproduce el historial de eventos forzando los resultados registrados.

    Con `until` se detiene tras el paso indicado.
    """
    if record.events is None:
        raise ValueError("el registro no conserva eventos; ejecute run_trial(record_events=True)")
    state = initial.copy()
    for ev in record.events:
        if until is not None and ev.t > until:
            break
        apply_event(state, ev)
    return state


def apply_event(state: StabilizerState, ev: TrialEvent):
    """Aplica un evento; devuelve la probabilidad de Born (1.0 si no es medida)."""
    if ev.kind == "measure":
        return state.measure(ev.operator, forced_outcome=ev.outcome).probability
    if ev.kind == "dephase":
        state.dephase(ev.operator)
    elif ev.kind == "clifford":
        state.apply_clifford(ev.operator, ev.sites)
    else:
        raise ValueError(f"evento desconocido: {ev.kind}")
    return 1.0
