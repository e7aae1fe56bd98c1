#!/usr/bin/env python3
"""
decoders/verification.py
Comprobación de las condiciones de recuperación sobre las cuatro ramas lógicas

Se sigue la misma trayectoria (mismos resultados) partiendo de ρ_𝟙, ρ_X, ρ_Y y
ρ_Z. Mientras la información sobreviva, cada rama es ρ_𝟙 más un generador
lógico, y toda medida tiene la misma probabilidad de Born en las cuatro. Al
final se mide la capa 𝓜, se aplica la corrección del camino y cada rama debe
volver a su estado inicial.

Con `oracle=True` las cuatro ramas se evolucionan además como matrices densidad
(n ≤ 10) a lo largo de los mismos eventos.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from circuit_models import ModelConfig, TrialEvent, TrialOutput, apply_event, encode_logical
from percolation_map import circuit_to_bonds
from stabilizer_core import PauliOperator, StabilizerState
from stabilizer_core.oracle import DenseOracle

from .backbone import CheckLayer, check_supports, code_of
from .located import located_sign
from .verdict import apply_x_correction, measure_final_layers, repetition_correction

logger = logging.getLogger(__name__)

LOGICAL_BRANCHES = ("X", "Y", "Z")
ORACLE_ATOL = 1e-9


class RecoveryConditionError(RuntimeError):
    """Alguna condición de recuperación falla en la trayectoria."""


@dataclass
class RecoveryReport:
    """
    Resultado de la verificación.

    `first_violation` es (t, condición, rama) de la primera condición violada,
    con t = T + 1 para la capa 𝓜 y la recuperación final. `oracle_violation`
    tiene el mismo formato para la ruta de matriz densidad.

    Sin camino que esquive errores, `information_lost` indica que la rama Z
    terminó con el mismo grupo que ρ_𝟙: ninguna recuperación puede distinguirlas.
    """

    first_violation: Optional[Tuple[int, str, str]] = None
    has_path: bool = False
    recovered: Dict[str, bool] = field(default_factory=dict)
    n_events: int = 0
    information_lost: bool = False
    oracle_checked: bool = False
    oracle_violation: Optional[Tuple[int, str, str]] = None

    @property
    def holds(self) -> bool:
        return (self.first_violation is None and self.oracle_violation is None
                and all(self.recovered.values()))

    @property
    def consistent(self) -> bool:
        """Con camino, todo se recupera; sin él, la información se pierde en ambas rutas."""
        if self.has_path:
            return self.holds
        return self.information_lost and self.oracle_violation is None


def _group_relation(identity: StabilizerState, branch: StabilizerState) -> Optional[str]:
    """Nombre de la condición de generadores que falla, o None."""
    if branch.k != identity.k + 1:
        return "rank"
    if any(branch.contains(g) != 1 for g in identity.generators()):
        return "generators"
    return None


def _final_checks(cfg: ModelConfig, code: str, finales: List[CheckLayer]):
    """Pares (operador, resultado) de la capa 𝓜."""
    for capa in finales:
        soportes = check_supports(code, cfg.dims, capa.family)
        for soporte, resultado in zip(soportes, capa.outcomes):
            yield PauliOperator.from_sites(cfg.n_system, z_sites=[int(s) for s in soporte]), int(resultado)


def _dense_route(cfg: ModelConfig, eventos: List[TrialEvent], finales: List[CheckLayer], code: str,
                 correccion: Optional[np.ndarray], informe: RecoveryReport) -> None:
    """Repite la trayectoria con matrices densidad y anota la primera discrepancia."""
    ramas = {g: DenseOracle.from_state(encode_logical(g, cfg)) for g in ("1",) + LOGICAL_BRANCHES}

    def violar(t: int, condicion: str, rama: str) -> None:
        if informe.oracle_violation is None:
            informe.oracle_violation = (t, condicion, rama)
            logger.debug(f"⚠️ Oráculo denso: '{condicion}' en t={t} (rama {rama})")

    def medir(t: int, p: PauliOperator, resultado: int) -> None:
        probabilidades = {g: rho.measure(p, resultado) for g, rho in ramas.items()}
        # sin camino las trazas pueden separarse: se exige solo la pérdida de ρ_Z
        if correccion is None:
            return
        for g in LOGICAL_BRANCHES:
            if abs(probabilidades[g] - probabilidades["1"]) > ORACLE_ATOL:
                violar(t, "born", g)

    for ev in eventos:
        if ev.kind == "measure":
            medir(ev.t, ev.operator, ev.outcome)
        elif ev.kind == "dephase":
            for rho in ramas.values():
                rho.dephase(ev.operator)
        elif ev.kind == "clifford":
            for rho in ramas.values():
                rho.apply_clifford(ev.operator, ev.sites)
        else:
            raise ValueError(f"evento desconocido: {ev.kind}")
    for p, resultado in _final_checks(cfg, code, finales):
        medir(cfg.T + 1, p, resultado)

    if correccion is None:
        # sin camino: ρ_Z no debe distinguirse de ρ_𝟙
        if ramas["Z"].trace_distance(ramas["1"]) > ORACLE_ATOL:
            violar(cfg.T + 1, "lost", "Z")
    else:
        sitios = np.flatnonzero(correccion)
        for g, rho in ramas.items():
            if sitios.size:
                rho.apply_pauli(PauliOperator.from_sites(cfg.n_system, x_sites=sitios))
            if rho.trace_distance(DenseOracle.from_state(encode_logical(g, cfg))) > ORACLE_ATOL:
                violar(cfg.T + 1, "recovery", g)
    informe.oracle_checked = True


def verify_recovery_conditions(trial: TrialOutput, strict: bool = False,
                               rng: Optional[np.random.Generator] = None,
                               oracle: bool = False) -> RecoveryReport:
    """
    Verifica las condiciones de recuperación de un ensayo del código de repetición.

    Args:
        trial: ensayo ejecutado desde ρ_𝟙 con `record_events=True`.
        strict: lanza RecoveryConditionError si alguna condición falla.
        rng: para los resultados de la capa 𝓜 sobre ρ_𝟙.
        oracle: repite la trayectoria sobre matrices densidad (n ≤ 10).
    """
    cfg = trial.config
    if cfg.kind not in ("Baseline1D", "Repetition2D"):
        raise ValueError("la verificación cubre solo el código de repetición")
    if trial.record.events is None:
        raise ValueError("el ensayo no conserva eventos; ejecute run_trial(record_events=True)")
    if not trial.initial_state.same_group_as(encode_logical("1", cfg)):
        raise ValueError("el ensayo debe partir de ρ_𝟙")
    if oracle and cfg.n_system > DenseOracle.MAX_QUBITS:
        raise ValueError(f"el oráculo denso admite como mucho {DenseOracle.MAX_QUBITS} qubits")
    rng = rng if rng is not None else np.random.default_rng()

    identidad = trial.initial_state.copy()
    ramas = {g: encode_logical(g, cfg) for g in LOGICAL_BRANCHES}
    informe = RecoveryReport()

    def violar(t: int, condicion: str, rama: str) -> None:
        if informe.first_violation is None:
            informe.first_violation = (t, condicion, rama)
            logger.debug(f"⚠️ Condición '{condicion}' violada en t={t} (rama {rama})")

    eventos = trial.record.events
    for i, ev in enumerate(eventos):
        p_identidad = apply_event(identidad, ev)
        for g, estado in ramas.items():
            if apply_event(estado, ev) != p_identidad:
                violar(ev.t, "born", g)
        informe.n_events += 1
        fin_de_paso = i + 1 == len(eventos) or eventos[i + 1].t != ev.t
        if fin_de_paso and informe.first_violation is None:
            for g, estado in ramas.items():
                condicion = _group_relation(identidad, estado)
                if condicion:
                    violar(ev.t, condicion, g)

    # capa 𝓜: resultados sorteados en ρ_𝟙 y forzados en las ramas
    code = code_of(cfg.kind)
    finales = measure_final_layers(identidad, code, cfg.dims, cfg.T, rng)
    for p, resultado in _final_checks(cfg, code, finales):
        for g, estado in ramas.items():
            if estado.measure(p, forced_outcome=resultado).probability == 0.0:
                violar(cfg.T + 1, "born", g)

    signo, _ = located_sign(circuit_to_bonds(trial.record), finales, site=0)
    informe.has_path = signo != 0
    todas = {"1": identidad, **ramas}
    correccion = None
    if not informe.has_path:
        informe.recovered = {g: False for g in todas}
        informe.information_lost = ramas["Z"].same_group_as(identidad)
    else:
        correccion = repetition_correction(code, cfg.dims, finales, 0, signo)
        for g, estado in todas.items():
            apply_x_correction(estado, correccion)
            informe.recovered[g] = estado.same_group_as(encode_logical(g, cfg))
            if not informe.recovered[g]:
                violar(cfg.T + 1, "recovery", g)

    if oracle:
        _dense_route(cfg, eventos, finales, code, correccion, informe)

    logger.debug(f"✅ Verificación: {informe.n_events} eventos, camino={informe.has_path}, "
                 f"recuperadas={sum(informe.recovered.values())}/4, perdida={informe.information_lost}")
    if strict and not informe.holds:
        raise RecoveryConditionError(f"condición violada: {informe.first_violation or informe.oracle_violation}, "
                                     f"camino={informe.has_path}")
    return informe
